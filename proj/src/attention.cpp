#include "posesync/attention.hpp"

#include <cmath>
#include <stdexcept>

namespace posesync {

std::map<EdgeKey, double> normalize_weights(const ScoreSet& scores, int node_i) {
  if (scores.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  double sum = 0.0;
  size_t incoming = 0;
  for (const auto& [key, s] : scores.raw_scores) {
    if (key.to != node_i) continue;
    ++incoming;
    sum += s;
  }
  if (incoming == 0) throw std::invalid_argument("no incoming edges for node");
  const double denom = scores.alpha + sum;
  if (denom <= 0.0) {
    throw std::invalid_argument("normalization undefined: alpha and all scores are zero");
  }
  std::map<EdgeKey, double> out;
  for (const auto& [key, s] : scores.raw_scores) {
    if (key.to == node_i) out[key] = s / denom;
  }
  return out;
}

std::vector<double> aggregate(const std::map<EdgeKey, std::vector<double>>& messages,
                              const std::map<EdgeKey, double>& weights) {
  std::vector<double> result;
  for (const auto& [key, msg] : messages) {
    const auto it = weights.find(key);
    if (it == weights.end()) throw std::invalid_argument("missing weight for message edge");
    if (result.empty()) {
      result.assign(msg.size(), 0.0);
    } else if (msg.size() != result.size()) {
      throw std::invalid_argument("message length mismatch");
    }
    for (size_t k = 0; k < msg.size(); ++k) result[k] += it->second * msg[k];
  }
  return result;
}

double label(NoiseProvenance provenance_j, NoiseProvenance provenance_i,
             const LabelConfig& cfg) {
  const bool both_weak = provenance_j == NoiseProvenance::kWeak &&
                         provenance_i == NoiseProvenance::kWeak;
  return both_weak ? cfg.gamma : 1.0 - cfg.gamma;
}

double oracle_scorer(const GraphEdge& edge, const PoseGraph& graph,
                     const OracleScorerConfig& cfg) {
  const Pose true_rel =
      relative(graph.node(edge.to).true_pose, graph.node(edge.from).true_pose);
  const PoseDelta d = pose_delta(edge.predicted_relative, true_rel);
  const double e = d.translation_error + cfg.rotation_weight * d.rotation_error;
  return 1.0 / (1.0 + std::exp(-cfg.sharpness * (cfg.error_threshold - e)));
}

}  // namespace posesync
