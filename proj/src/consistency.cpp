#include "posesync/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace posesync {

namespace {

Pose pose_from_vec(const Vec3& v) { return Pose{v[0], v[1], wrap_angle(v[2])}; }

Vec3 vec_from_pose(const Pose& p) { return Vec3(p.x, p.y, p.theta); }

// Log-density of x under the node belief, with the heading component
// wrapped into the chart centered on the location.
double node_logpdf(const StudentTParams& params, const Vec3& x, NodeModel model) {
  Vec3 v = x;
  v[2] = params.location[2] - wrap_angle(params.location[2] - v[2]);
  return model == NodeModel::kGaussian
             ? mvn_logpdf(v, params.location, params.scale)
             : mvt_logpdf(v, params);
}

}  // namespace

std::vector<Observation> build_observations(
    const PoseGraph& graph, int node_i,
    const std::map<int, Pose>& current_poses,
    const std::map<EdgeKey, double>& weights) {
  std::vector<Observation> obs;
  for (int j : graph.neighbors(node_i)) {
    const Pose& pose_j = current_poses.at(j);
    if (const GraphEdge* fwd = graph.find_edge(j, node_i)) {
      // xi_j composed with the inverse prediction lands on node i's frame.
      const Pose est = compose(pose_j, inverse(fwd->predicted_relative));
      obs.push_back({vec_from_pose(est), weights.at({j, node_i})});
    }
    if (const GraphEdge* rev = graph.find_edge(node_i, j)) {
      const Pose est = compose(pose_j, rev->predicted_relative);
      obs.push_back({vec_from_pose(est), weights.at({node_i, j})});
    }
  }
  if (obs.empty()) {
    throw std::invalid_argument("node " + std::to_string(node_i) + " is isolated");
  }
  return obs;
}

double update_weight(const GraphEdge& edge, const StudentTParams& params_i,
                     const StudentTParams& params_j, const GammaPrior& prior,
                     NodeModel model, long* clamped) {
  const Pose pose_i = pose_from_vec(params_i.location);
  const Pose pose_j = pose_from_vec(params_j.location);
  // Estimate of xi_i implied by this edge, scored under node i's belief,
  // and the mirror estimate of xi_j scored under node j's.
  const Vec3 est_i = vec_from_pose(compose(pose_j, inverse(edge.predicted_relative)));
  const Vec3 est_j = vec_from_pose(compose(pose_i, edge.predicted_relative));

  double log_terms = 0.0;
  for (double lp : {node_logpdf(params_i, est_i, model),
                    node_logpdf(params_j, est_j, model)}) {
    if (lp > 0.0) {
      lp = 0.0;
      if (clamped) ++(*clamped);
    }
    log_terms += lp;
  }
  const double k = prior.shape;
  return prior.mean * k / (k - log_terms);
}

SynchronizationResult icm_synchronize(const PoseGraph& graph,
                                      const ConsistencyConfig& config) {
  graph.validate();
  if (config.icm_iters < 1 || config.reweight_iters < 1 || config.gamma_shape <= 0.0) {
    throw std::invalid_argument("invalid consistency config");
  }
  const auto components = graph.connected_components();
  if (components.size() > 1) {
    std::ostringstream msg;
    msg << "graph is disconnected; components:";
    for (const auto& comp : components) {
      msg << " {";
      for (size_t i = 0; i < comp.size(); ++i) msg << (i ? "," : "") << comp[i];
      msg << "}";
    }
    throw std::invalid_argument(msg.str());
  }

  EmConfig em = config.em;
  em.gaussian = config.node_model == NodeModel::kGaussian;
  const bool two_node = graph.nodes.size() == 2;

  SynchronizationResult result;
  std::map<int, Pose> poses;
  std::map<int, StudentTParams> params;
  std::map<EdgeKey, double> weights;
  for (const auto& n : graph.nodes) poses[n.id] = n.noisy_pose;
  for (const auto& e : graph.edges) weights[{e.from, e.to}] = 1.0;

  for (int iter = 0; iter < config.icm_iters; ++iter) {
    // Node updates read only the previous iterate (Jacobi sweep).
    std::map<int, Pose> next_poses;
    std::map<int, StudentTParams> next_params;
    for (const auto& n : graph.nodes) {
      const auto obs = build_observations(graph, n.id, poses, weights);
      StudentTParams p;
      p.dof = em.dof;
      if (two_node) {
        p.location = two_node_estimate(obs);
        p.scale = Mat3::Identity() * std::max(em.scale_floor, 1e-12);
      } else {
        p = weighted_t_mle(obs, em).params;
      }
      next_params[n.id] = p;
      next_poses[n.id] = pose_from_vec(p.location);
    }
    poses = std::move(next_poses);
    params = std::move(next_params);

    if (config.reweighting && iter < config.reweight_iters) {
      for (const auto& e : graph.edges) {
        double o = e.overlap;
        if (config.recompute_overlap) {
          o = overlap_fraction(poses.at(e.to), poses.at(e.from), config.footprint);
        }
        const GammaPrior prior{std::max(o, config.overlap_floor), config.gamma_shape};
        weights[{e.from, e.to}] =
            update_weight(e, params.at(e.to), params.at(e.from), prior,
                          config.node_model, &result.clamp_events);
      }
    }
  }

  result.poses = std::move(poses);
  result.final_weights = std::move(weights);
  return result;
}

std::map<EdgeKey, Pose> corrected_relatives(const PoseGraph& graph,
                                            const std::map<int, Pose>& poses) {
  std::map<EdgeKey, Pose> out;
  for (const auto& e : graph.edges) {
    out[{e.from, e.to}] = relative(poses.at(e.to), poses.at(e.from));
  }
  return out;
}

std::map<EdgeKey, Pose> baseline_pairwise(const PoseGraph& graph) {
  std::map<EdgeKey, Pose> out;
  for (const auto& e : graph.edges) {
    if (e.from > e.to) continue;  // handle each unordered pair once
    const GraphEdge* rev = graph.find_edge(e.to, e.from);
    if (!rev) throw std::invalid_argument("pairwise baseline needs both edge directions");
    const Pose a = e.predicted_relative;
    const Pose b = inverse(rev->predicted_relative);
    const Pose avg{0.5 * (a.x + b.x), 0.5 * (a.y + b.y),
                   circular_mean({a.theta, b.theta})};
    out[{e.from, e.to}] = avg;
    out[{e.to, e.from}] = inverse(avg);
  }
  return out;
}

}  // namespace posesync
