#ifndef POSESYNC_POSE_GRAPH_HPP
#define POSESYNC_POSE_GRAPH_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "posesync/pose.hpp"

namespace posesync {

enum class NoiseProvenance { kWeak, kStrong };

struct GraphNode {
  int id = 0;
  Pose true_pose;   // held out for evaluation only
  Pose noisy_pose;  // the agent's belief about its own absolute pose
  NoiseProvenance provenance = NoiseProvenance::kWeak;
};

/// Directed edge j -> i carrying an independent relative-pose prediction.
struct GraphEdge {
  int from = 0;  // j
  int to = 0;    // i
  Pose predicted_relative;  // prediction of relative(xi_i, xi_j)
  double overlap = 1.0;     // o in (0, 1], floored before use
  double weight = 1.0;
};

struct EdgeKey {
  int from = 0;
  int to = 0;
  bool operator<(const EdgeKey& o) const {
    return from != o.from ? from < o.from : to < o.to;
  }
  bool operator==(const EdgeKey& o) const { return from == o.from && to == o.to; }
};

/// Agents plus directed relative-pose predictions. Edges come in
/// forward/reverse pairs whose predictions are independent.
struct PoseGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  const GraphNode& node(int id) const;
  GraphNode& node(int id);
  const GraphEdge* find_edge(int from, int to) const;
  std::vector<int> neighbors(int id) const;

  /// Throws std::invalid_argument if the pair symmetry or node-count
  /// invariants are violated.
  void validate() const;

  /// Connected components over the undirected edge set.
  std::vector<std::vector<int>> connected_components() const;
};

}  // namespace posesync

#endif
