#ifndef POSESYNC_CONSISTENCY_HPP
#define POSESYNC_CONSISTENCY_HPP

#include <map>

#include "posesync/overlap.hpp"
#include "posesync/pose_graph.hpp"
#include "posesync/weighted_em.hpp"

namespace posesync {

enum class NodeModel { kStudentT, kGaussian };

struct ConsistencyConfig {
  int icm_iters = 15;
  int reweight_iters = 10;  // weight passes, consumed over the first ICM iterations
  EmConfig em;              // num_iters 15, dof 2 by default
  double gamma_shape = 120.0;
  NodeModel node_model = NodeModel::kStudentT;
  bool reweighting = true;
  double overlap_floor = 0.01;
  // Recompute overlap fractions from the current pose iterate each
  // iteration instead of using the stored edge overlaps.
  bool recompute_overlap = false;
  MessageFootprint footprint;
};

struct SynchronizationResult {
  std::map<int, Pose> poses;
  // Number of times a log-density term exceeded 0 and was clamped in the
  // weight update.
  long clamp_events = 0;
  std::map<EdgeKey, double> final_weights;
};

/// Absolute-pose estimates of node i implied by each neighbor through the
/// forward and reverse predicted relatives, with the current edge weights.
std::vector<Observation> build_observations(
    const PoseGraph& graph, int node_i,
    const std::map<int, Pose>& current_poses,
    const std::map<EdgeKey, double>& weights);

/// Closed-form Bayesian weight update for edge j -> i. Log-density terms
/// are clamped above at 0; *clamped is incremented when that triggers.
double update_weight(const GraphEdge& edge, const StudentTParams& params_i,
                     const StudentTParams& params_j, const GammaPrior& prior,
                     NodeModel model, long* clamped = nullptr);

/// Iterated-conditional-modes consensus over the pose graph. All node
/// updates within one iteration read the previous iterate.
SynchronizationResult icm_synchronize(const PoseGraph& graph,
                                      const ConsistencyConfig& config);

/// Relative poses recomputed from synchronized absolutes; exactly
/// inverse-consistent across reverse edges.
std::map<EdgeKey, Pose> corrected_relatives(const PoseGraph& graph,
                                            const std::map<int, Pose>& poses);

/// Table-style baseline: average each edge's prediction with the inverse
/// of its reverse edge's prediction.
std::map<EdgeKey, Pose> baseline_pairwise(const PoseGraph& graph);

}  // namespace posesync

#endif
