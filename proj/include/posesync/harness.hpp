#ifndef POSESYNC_HARNESS_HPP
#define POSESYNC_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "posesync/consistency.hpp"
#include "posesync/noise_sim.hpp"

namespace posesync {

enum class Method {
  kNoCorrection,
  kPairwise,
  kGaussianNoReweight,
  kGaussianReweight,
  kTNoReweight,
  kTReweight,
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct NoiseConfig {
  NoiseSpec weak{0.01, 0.1, {0, 0}, 0};
  NoiseSpec strong{0.4, 4.0, {0, 0}, 0};
  double strong_fraction = 0.5;
};

struct ExperimentConfig {
  std::string experiment_id = "experiment";
  SceneSpec scene;
  NoiseConfig noise;
  MeasurementModel measurement;
  ConsistencyConfig consistency;
  std::vector<Method> methods{Method::kNoCorrection, Method::kPairwise,
                              Method::kTReweight};
  int trials = 1;
  std::uint64_t seed = 0;
};

struct MethodAggregates {
  double pos_rmse = 0.0;
  double pos_mae = 0.0;
  double rot_rmse = 0.0;
  double rot_mae = 0.0;
};

struct PerEdgeError {
  EdgeKey edge;
  Method method = Method::kNoCorrection;
  PoseDelta delta;
};

struct TrialReport {
  std::string experiment_id;
  int trial = 0;
  std::vector<PerEdgeError> per_edge;
  std::map<Method, MethodAggregates> aggregates;
  std::map<Method, long> clamp_events;
  // Config echo carried into the emitted rows.
  double noise_pos_sigma_m = 0.0;
  double noise_rot_sigma_deg = 0.0;
  double bias_pos_m = 0.0;
  double bias_rot_deg = 0.0;
  int num_agents = 0;
  double outlier_rate = 0.0;
};

/// Deterministic per-trial seed derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial);

/// Generates one scene, applies noise and the measurement model, runs every
/// requested method, and reports per-edge errors against the true relatives.
TrialReport run_trial(const ExperimentConfig& cfg, int trial_index,
                      std::uint64_t cell_index = 0);

/// The graph a trial would operate on (used by gen-scene and the C API).
PoseGraph build_trial_graph(const ExperimentConfig& cfg, int trial_index,
                            std::uint64_t cell_index = 0);

/// Relative-pose estimates of one method on an existing graph.
std::map<EdgeKey, Pose> run_method(const PoseGraph& graph, Method method,
                                   const ConsistencyConfig& consistency,
                                   long* clamp_events = nullptr);

struct SweepCellResult {
  ExperimentConfig config;
  std::vector<TrialReport> reports;
  std::optional<std::string> error;
};

/// Runs every cell of the grid; a failing cell is recorded and the rest
/// continue. Cell seeds derive from the master seed by cell index.
std::vector<SweepCellResult> sweep(const ExperimentConfig& base,
                                   const std::vector<nlohmann::json>& cell_patches);

std::string reports_to_csv(const std::vector<TrialReport>& reports);
nlohmann::json reports_to_json(const std::vector<TrialReport>& reports);

enum class EmitFormat { kCsv, kJson };

/// Writes the report set to `path` in the requested format.
void emit(const std::vector<TrialReport>& reports, EmitFormat format,
          const std::string& path);

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);

}  // namespace posesync

#endif
