#include "posesync/noise_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace posesync {

std::vector<Pose> generate_scene(const SceneSpec& spec, Rng& rng) {
  if (spec.num_agents < 2 || spec.num_agents > spec.max_agents) {
    throw std::invalid_argument("num_agents out of range");
  }
  if (spec.min_spacing <= 0.0 || spec.extent <= 0.0) {
    throw std::invalid_argument("spacing and extent must be positive");
  }
  std::uniform_real_distribution<double> coord(-0.5 * spec.extent, 0.5 * spec.extent);
  std::uniform_real_distribution<double> heading(-kPi, kPi);

  constexpr int kMaxAttempts = 10000;
  std::vector<Pose> poses;
  int attempts = 0;
  while (static_cast<int>(poses.size()) < spec.num_agents) {
    if (++attempts > kMaxAttempts) {
      throw std::runtime_error("scene placement infeasible: spacing too large for extent");
    }
    Pose candidate{coord(rng), coord(rng), wrap_angle(heading(rng))};
    const bool ok = std::all_of(poses.begin(), poses.end(), [&](const Pose& p) {
      return std::hypot(p.x - candidate.x, p.y - candidate.y) >= spec.min_spacing;
    });
    if (ok) poses.push_back(candidate);
  }
  return poses;
}

std::vector<GraphNode> assign_and_apply_noise(const std::vector<Pose>& poses,
                                              double strong_fraction,
                                              const NoiseSpec& weak,
                                              const NoiseSpec& strong, Rng& rng) {
  if (strong_fraction < 0.0 || strong_fraction > 1.0) {
    throw std::invalid_argument("strong_fraction must lie in [0, 1]");
  }
  const int n = static_cast<int>(poses.size());
  const int num_strong = static_cast<int>(std::lround(strong_fraction * n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<GraphNode> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i].id = i;
    nodes[i].true_pose = poses[i];
    nodes[i].provenance = NoiseProvenance::kWeak;
  }
  for (int s = 0; s < num_strong; ++s) {
    nodes[order[s]].provenance = NoiseProvenance::kStrong;
  }
  for (auto& node : nodes) {
    const NoiseSpec& spec =
        node.provenance == NoiseProvenance::kStrong ? strong : weak;
    const auto noise = sample_pose_noise(spec, rng);
    node.noisy_pose = Pose{node.true_pose.x + noise[0], node.true_pose.y + noise[1],
                           wrap_angle(node.true_pose.theta + noise[2])};
  }
  return nodes;
}

Pose simulate_regression(const Pose& true_rel, const MeasurementModel& model, Rng& rng) {
  const NoiseSpec* spec = &model.inlier;
  if (model.outlier_rate > 0.0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (unif(rng) < model.outlier_rate) spec = &model.outlier;
  }
  if (spec->is_zero()) return true_rel;
  const auto n = sample_pose_noise(*spec, rng);
  return compose(Pose{n[0], n[1], wrap_angle(n[2])}, true_rel);
}

PoseGraph build_graph(const std::vector<GraphNode>& nodes,
                      const MeasurementModel& model, const MessageFootprint& fp,
                      double overlap_floor, Rng& rng) {
  PoseGraph graph;
  graph.nodes = nodes;
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      // Edge j -> i predicts relative(xi_i, xi_j); both directions are
      // sampled independently.
      GraphEdge e;
      e.from = nodes[j].id;
      e.to = nodes[i].id;
      const Pose true_rel = relative(nodes[i].true_pose, nodes[j].true_pose);
      e.overlap = std::max(
          overlap_fraction(nodes[i].noisy_pose, nodes[j].noisy_pose, fp),
          overlap_floor);
      MeasurementModel edge_model = model;
      if (model.overlap_sensitivity > 0.0) {
        const double scale = 1.0 + model.overlap_sensitivity * (1.0 - e.overlap);
        edge_model.inlier.position_sigma *= scale;
        edge_model.inlier.heading_sigma *= scale;
        edge_model.outlier.position_sigma *= scale;
        edge_model.outlier.heading_sigma *= scale;
      }
      e.predicted_relative = simulate_regression(true_rel, edge_model, rng);
      graph.edges.push_back(e);
    }
  }
  return graph;
}

}  // namespace posesync
