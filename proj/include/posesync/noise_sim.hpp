#ifndef POSESYNC_NOISE_SIM_HPP
#define POSESYNC_NOISE_SIM_HPP

#include <cstdint>

#include "posesync/distributions.hpp"
#include "posesync/overlap.hpp"
#include "posesync/pose_graph.hpp"

namespace posesync {

struct SceneSpec {
  int num_agents = 7;        // 2..max_agents
  double extent = 100.0;     // side of the square placement area, meters
  double min_spacing = 10.0; // meters
  int max_agents = 7;
};

/// Heavy-tailed stand-in for the pose-regression output: an
/// inlier/outlier mixture of residuals composed onto the true relative.
/// overlap_sensitivity > 0 degrades edges with little footprint overlap:
/// the residual sigmas scale by 1 + overlap_sensitivity * (1 - o), so the
/// overlap fraction is genuinely predictive of measurement quality.
struct MeasurementModel {
  NoiseSpec inlier;
  NoiseSpec outlier;
  double outlier_rate = 0.0;
  double overlap_sensitivity = 0.0;
};

/// Uniform placement with pairwise spacing; headings uniform in (-pi, pi].
/// Throws after a bounded number of rejection retries.
std::vector<Pose> generate_scene(const SceneSpec& spec, Rng& rng);

/// Tags round(p * n) agents strong, draws each agent's noise from its
/// distribution, and composes it onto the true pose (translation in the
/// world frame, heading added and wrapped).
std::vector<GraphNode> assign_and_apply_noise(const std::vector<Pose>& poses,
                                              double strong_fraction,
                                              const NoiseSpec& weak,
                                              const NoiseSpec& strong, Rng& rng);

/// One directed relative-pose prediction: residual o true_rel, with the
/// residual drawn from the inlier or outlier spec.
Pose simulate_regression(const Pose& true_rel, const MeasurementModel& model, Rng& rng);

/// Complete graph over the nodes: both directed edges per pair, each with
/// an independent prediction; overlap computed from the noisy poses and
/// floored at overlap_floor.
PoseGraph build_graph(const std::vector<GraphNode>& nodes,
                      const MeasurementModel& model, const MessageFootprint& fp,
                      double overlap_floor, Rng& rng);

}  // namespace posesync

#endif
