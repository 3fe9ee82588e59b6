#ifndef POSESYNC_ATTENTION_HPP
#define POSESYNC_ATTENTION_HPP

#include <map>
#include <vector>

#include "posesync/pose_graph.hpp"

namespace posesync {

/// Raw sigmoid scores for the edges incoming to one node, plus the
/// normalization offset that lets a node ignore all messages.
struct ScoreSet {
  std::map<EdgeKey, double> raw_scores;  // each s in (0, 1)
  double alpha = 0.5;                    // >= 0
};

struct LabelConfig {
  double gamma = 0.9;          // in (0.5, 1]
  double strong_fraction = 0.5;
};

/// Parameters of the stand-in scorer mapping edge residual error to a
/// score: s = sigmoid(sharpness * (tau - e)).
struct OracleScorerConfig {
  double sharpness = 6.0;
  double error_threshold = 0.5;       // meters of combined error
  double rotation_weight = 0.1;       // meters per degree
};

/// a_{j->i} = s_{j->i} / (alpha + sum_k s_{k->i}) over edges into node i.
std::map<EdgeKey, double> normalize_weights(const ScoreSet& scores, int node_i);

/// Elementwise weighted sum of same-length message vectors.
std::vector<double> aggregate(const std::map<EdgeKey, std::vector<double>>& messages,
                              const std::map<EdgeKey, double>& weights);

/// Smooth supervision label: gamma when both endpoints carry weak noise,
/// 1 - gamma otherwise.
double label(NoiseProvenance provenance_j, NoiseProvenance provenance_i,
             const LabelConfig& cfg);

/// Scores one edge by the error of its current relative-pose prediction
/// against ground truth; monotone decreasing in the error.
double oracle_scorer(const GraphEdge& edge, const PoseGraph& graph,
                     const OracleScorerConfig& cfg);

}  // namespace posesync

#endif
