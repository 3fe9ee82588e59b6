// Command-line driver for the pose-synchronization library. Talks to the
// shared library exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "posesync/posesync_c.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to the path when one is given, otherwise prints to stdout.
void write_or_print(const std::string& path, const char* content) {
  if (path.empty()) {
    std::cout << content << std::endl;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content << "\n";
}

// Machine-readable error line on stderr, nonzero exit.
int report_error(const std::string& op, ps_status status) {
  std::cerr << "{\"error\":{\"op\":\"" << op << "\",\"code\":" << status
            << ",\"message\":\"" << ps_last_error() << "\"}}" << std::endl;
  return 1;
}

struct StringGuard {
  char* str = nullptr;
  ~StringGuard() { ps_string_free(str); }
};

struct GraphGuard {
  ps_graph* graph = nullptr;
  ~GraphGuard() { ps_graph_free(graph); }
};

// Applies --seed / --trials / --method overrides to the config document.
// For sweep grid files ({"base":..., "cells":[...]}) the overrides land
// on the base config.
std::string apply_overrides(const std::string& config, bool is_grid,
                            bool have_seed, uint64_t seed, int trials,
                            const std::vector<std::string>& methods) {
  nlohmann::json doc = nlohmann::json::parse(config);
  nlohmann::json& target = is_grid ? doc["base"] : doc;
  if (have_seed) target["seed"] = seed;
  if (trials > 0) target["trials"] = trials;
  if (!methods.empty()) target["methods"] = methods;
  return doc.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SE(2) multi-agent pose synchronization harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::string method = "t_reweight";
  std::vector<std::string> methods;
  uint64_t seed = 0;
  bool have_seed = false;
  int trials = 0;
  int trial_index = 0;
  std::string graph_path;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", config_path, "experiment config JSON file");
    if (needs_config) opt->required();
    cmd->add_option("--seed", seed, "master seed override")
        ->each([&](const std::string&) { have_seed = true; });
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--trials", trials, "number of trials override");
    cmd->add_option("--method", methods, "methods to run")->delimiter(',');
  };

  auto* run = app.add_subcommand("run", "run one experiment configuration");
  add_common(run, true);

  auto* swp = app.add_subcommand("sweep", "run a sweep grid file");
  add_common(swp, true);

  std::string out_file;
  auto* gen = app.add_subcommand("gen-scene", "emit a simulated pose-graph JSON");
  gen->add_option("--config", config_path, "experiment config JSON file")->required();
  gen->add_option("--seed", seed, "master seed override")
      ->each([&](const std::string&) { have_seed = true; });
  gen->add_option("--trial", trial_index, "trial index used for seed derivation");
  gen->add_option("--out", out_file, "output file (default: stdout)");

  auto* sync = app.add_subcommand("sync", "synchronize a pose-graph JSON file");
  sync->add_option("--graph", graph_path, "pose graph JSON file")->required();
  sync->add_option("--method", method, "method to run");
  sync->add_option("--config", config_path, "experiment config JSON (consistency section used)");
  sync->add_option("--out", out_file, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed() || swp->parsed()) {
      const std::string config =
          apply_overrides(read_file(config_path), swp->parsed(), have_seed,
                          seed, trials, methods);
      StringGuard summary;
      const char* op = run->parsed() ? "run" : "sweep";
      const ps_status status =
          run->parsed()
              ? ps_run_experiment(config.c_str(), out_dir.c_str(),
                                  format.c_str(), &summary.str)
              : ps_run_sweep(config.c_str(), out_dir.c_str(), format.c_str(),
                             &summary.str);
      if (status != PS_OK) return report_error(op, status);
      std::cout << summary.str << std::endl;
      return 0;
    }

    if (gen->parsed()) {
      const std::string config = apply_overrides(
          read_file(config_path), false, have_seed, seed, trials, methods);
      const uint64_t effective_seed =
          nlohmann::json::parse(config).value("seed", uint64_t{0});
      GraphGuard graph;
      ps_status status =
          ps_graph_generate(config.c_str(), effective_seed, trial_index, &graph.graph);
      if (status != PS_OK) return report_error("gen-scene", status);
      StringGuard doc;
      status = ps_graph_to_json(graph.graph, &doc.str);
      if (status != PS_OK) return report_error("gen-scene", status);
      write_or_print(out_file, doc.str);
      return 0;
    }

    // sync
    const std::string graph_json = read_file(graph_path);
    GraphGuard graph;
    ps_status status = ps_graph_parse(graph_json.c_str(), &graph.graph);
    if (status != PS_OK) return report_error("sync", status);
    std::string consistency;
    if (!config_path.empty()) {
      const auto doc = nlohmann::json::parse(read_file(config_path));
      if (doc.contains("consistency")) consistency = doc.at("consistency").dump();
    }
    StringGuard result;
    status = ps_graph_synchronize(graph.graph, method.c_str(),
                                  consistency.empty() ? nullptr : consistency.c_str(),
                                  &result.str);
    if (status != PS_OK) return report_error("sync", status);
    write_or_print(out_file, result.str);
    return 0;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":{\"message\":\"" << e.what() << "\"}}" << std::endl;
    return 1;
  }
}
