#include "posesync/posesync_c.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "posesync/graph_io.hpp"
#include "posesync/harness.hpp"

using nlohmann::json;

struct ps_graph {
  posesync::PoseGraph graph;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ps_status fail(ps_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
ps_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    return fail(PS_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(PS_ERR_INTERNAL, e.what());
  }
}

posesync::EmitFormat parse_format(const char* format) {
  const std::string f = format ? format : "csv";
  if (f == "csv") return posesync::EmitFormat::kCsv;
  if (f == "json") return posesync::EmitFormat::kJson;
  throw std::invalid_argument("format must be 'csv' or 'json'");
}

std::string output_path(const char* out_dir, const std::string& stem,
                        posesync::EmitFormat format) {
  namespace fs = std::filesystem;
  if (!out_dir || !*out_dir) throw std::invalid_argument("out_dir is required");
  fs::create_directories(out_dir);
  const char* ext = format == posesync::EmitFormat::kCsv ? ".csv" : ".json";
  return (fs::path(out_dir) / (stem + ext)).string();
}

}  // namespace

extern "C" {

const char* ps_version(void) { return "1.0.0"; }

const char* ps_last_error(void) { return g_last_error.c_str(); }

void ps_string_free(char* str) { std::free(str); }

void ps_graph_free(ps_graph* graph) { delete graph; }

ps_status ps_graph_parse(const char* graph_json, ps_graph** out_graph) {
  if (!graph_json || !out_graph) return fail(PS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<ps_graph>();
    handle->graph = posesync::graph_from_json(json::parse(graph_json));
    *out_graph = handle.release();
    return PS_OK;
  });
}

ps_status ps_graph_generate(const char* config_json, uint64_t seed,
                            int trial_index, ps_graph** out_graph) {
  if (!config_json || !out_graph) return fail(PS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto cfg = posesync::parse_experiment_config(json::parse(config_json));
    cfg.seed = seed;
    auto handle = std::make_unique<ps_graph>();
    handle->graph = posesync::build_trial_graph(cfg, trial_index);
    *out_graph = handle.release();
    return PS_OK;
  });
}

ps_status ps_graph_to_json(const ps_graph* graph, char** out_json) {
  if (!graph || !out_json) return fail(PS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(posesync::graph_to_json(graph->graph).dump(2));
    return *out_json ? PS_OK : fail(PS_ERR_INTERNAL, "allocation failed");
  });
}

ps_status ps_graph_synchronize(const ps_graph* graph, const char* method,
                               const char* consistency_json, char** out_json) {
  if (!graph || !method || !out_json) {
    return fail(PS_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const posesync::Method m = posesync::method_from_name(method);
    posesync::ConsistencyConfig cc;
    if (consistency_json && *consistency_json) {
      json wrapper;
      wrapper["consistency"] = json::parse(consistency_json);
      cc = posesync::parse_experiment_config(wrapper).consistency;
    }

    json result;
    result["method"] = method;
    long clamp_events = 0;

    if (m != posesync::Method::kNoCorrection && m != posesync::Method::kPairwise) {
      cc.node_model = (m == posesync::Method::kGaussianNoReweight ||
                       m == posesync::Method::kGaussianReweight)
                          ? posesync::NodeModel::kGaussian
                          : posesync::NodeModel::kStudentT;
      cc.reweighting = m == posesync::Method::kGaussianReweight ||
                       m == posesync::Method::kTReweight;
      const auto sync = posesync::icm_synchronize(graph->graph, cc);
      clamp_events = sync.clamp_events;
      json poses = json::object();
      for (const auto& [id, pose] : sync.poses) {
        poses[std::to_string(id)] = posesync::pose_to_json(pose);
      }
      result["poses"] = poses;
    }

    const auto rel = posesync::run_method(graph->graph, m, cc, nullptr);
    json edges = json::array();
    for (const auto& [key, pose] : rel) {
      edges.push_back({{"from", key.from},
                       {"to", key.to},
                       {"relative", posesync::pose_to_json(pose)}});
    }
    result["corrected_relatives"] = edges;
    result["clamp_events"] = clamp_events;

    *out_json = dup_string(result.dump(2));
    return *out_json ? PS_OK : fail(PS_ERR_INTERNAL, "allocation failed");
  });
}

ps_status ps_run_experiment(const char* config_json, const char* out_dir,
                            const char* format, char** out_summary) {
  if (!config_json) return fail(PS_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] {
    const auto cfg = posesync::parse_experiment_config(json::parse(config_json));
    std::vector<posesync::TrialReport> reports;
    reports.reserve(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
      reports.push_back(posesync::run_trial(cfg, t));
    }
    const auto fmt = parse_format(format);
    try {
      posesync::emit(reports, fmt, output_path(out_dir, "results", fmt));
    } catch (const std::runtime_error& e) {
      return fail(PS_ERR_IO, e.what());
    }
    if (out_summary) {
      *out_summary = dup_string(posesync::reports_to_json(reports).dump(2));
      if (!*out_summary) return fail(PS_ERR_INTERNAL, "allocation failed");
    }
    return PS_OK;
  });
}

ps_status ps_run_sweep(const char* grid_json, const char* out_dir,
                       const char* format, char** out_summary) {
  if (!grid_json) return fail(PS_ERR_INVALID_ARGUMENT, "null grid");
  return guarded([&] {
    const json grid = json::parse(grid_json);
    const auto base = posesync::parse_experiment_config(grid.value("base", json::object()));
    std::vector<json> patches;
    for (const auto& cell : grid.value("cells", json::array())) {
      patches.push_back(cell);
    }
    const auto cells = posesync::sweep(base, patches);

    std::vector<posesync::TrialReport> all_reports;
    json errors = json::array();
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].error) {
        errors.push_back({{"cell", i}, {"error", *cells[i].error}});
      }
      for (const auto& r : cells[i].reports) all_reports.push_back(r);
    }
    const auto fmt = parse_format(format);
    try {
      posesync::emit(all_reports, fmt, output_path(out_dir, "sweep", fmt));
    } catch (const std::runtime_error& e) {
      return fail(PS_ERR_IO, e.what());
    }
    if (out_summary) {
      json summary = posesync::reports_to_json(all_reports);
      summary["cell_errors"] = errors;
      *out_summary = dup_string(summary.dump(2));
      if (!*out_summary) return fail(PS_ERR_INTERNAL, "allocation failed");
    }
    return PS_OK;
  });
}

}  // extern "C"
