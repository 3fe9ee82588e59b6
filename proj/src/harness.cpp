#include "posesync/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace posesync {

using nlohmann::json;

std::string method_name(Method m) {
  switch (m) {
    case Method::kNoCorrection: return "no_correction";
    case Method::kPairwise: return "pairwise";
    case Method::kGaussianNoReweight: return "gaussian_noreweight";
    case Method::kGaussianReweight: return "gaussian_reweight";
    case Method::kTNoReweight: return "t_noreweight";
    case Method::kTReweight: return "t_reweight";
  }
  throw std::logic_error("unreachable");
}

Method method_from_name(const std::string& name) {
  for (Method m : {Method::kNoCorrection, Method::kPairwise,
                   Method::kGaussianNoReweight, Method::kGaussianReweight,
                   Method::kTNoReweight, Method::kTReweight}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + name);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
  // splitmix64 finalizer over the mixed inputs
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (cell + 1) +
                    0xbf58476d1ce4e5b9ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PoseGraph build_trial_graph(const ExperimentConfig& cfg, int trial_index,
                            std::uint64_t cell_index) {
  Rng rng(derive_seed(cfg.seed, cell_index, static_cast<std::uint64_t>(trial_index)));
  const auto poses = generate_scene(cfg.scene, rng);
  const auto nodes = assign_and_apply_noise(poses, cfg.noise.strong_fraction,
                                            cfg.noise.weak, cfg.noise.strong, rng);
  return build_graph(nodes, cfg.measurement, cfg.consistency.footprint,
                     cfg.consistency.overlap_floor, rng);
}

std::map<EdgeKey, Pose> run_method(const PoseGraph& graph, Method method,
                                   const ConsistencyConfig& consistency,
                                   long* clamp_events) {
  switch (method) {
    case Method::kNoCorrection: {
      std::map<int, Pose> noisy;
      for (const auto& n : graph.nodes) noisy[n.id] = n.noisy_pose;
      return corrected_relatives(graph, noisy);
    }
    case Method::kPairwise:
      return baseline_pairwise(graph);
    default: {
      ConsistencyConfig cc = consistency;
      cc.node_model = (method == Method::kGaussianNoReweight ||
                       method == Method::kGaussianReweight)
                          ? NodeModel::kGaussian
                          : NodeModel::kStudentT;
      cc.reweighting = method == Method::kGaussianReweight ||
                       method == Method::kTReweight;
      const auto result = icm_synchronize(graph, cc);
      if (clamp_events) *clamp_events += result.clamp_events;
      return corrected_relatives(graph, result.poses);
    }
  }
}

TrialReport run_trial(const ExperimentConfig& cfg, int trial_index,
                      std::uint64_t cell_index) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.methods.empty()) throw std::invalid_argument("method set is empty");

  const PoseGraph graph = build_trial_graph(cfg, trial_index, cell_index);

  TrialReport report;
  report.experiment_id = cfg.experiment_id;
  report.trial = trial_index;
  report.noise_pos_sigma_m = cfg.noise.strong.position_sigma;
  report.noise_rot_sigma_deg = cfg.noise.strong.heading_sigma;
  report.bias_pos_m = std::hypot(cfg.noise.strong.position_bias[0],
                                 cfg.noise.strong.position_bias[1]);
  report.bias_rot_deg = cfg.noise.strong.heading_bias;
  report.num_agents = cfg.scene.num_agents;
  report.outlier_rate = cfg.measurement.outlier_rate;

  std::map<int, Pose> true_poses;
  for (const auto& n : graph.nodes) true_poses[n.id] = n.true_pose;
  const auto true_rel = corrected_relatives(graph, true_poses);

  for (Method method : cfg.methods) {
    long clamps = 0;
    const auto rel = run_method(graph, method, cfg.consistency, &clamps);
    report.clamp_events[method] = clamps;

    double sq_pos = 0.0, abs_pos = 0.0, sq_rot = 0.0, abs_rot = 0.0;
    size_t count = 0;
    for (const auto& [key, pose] : rel) {
      const PoseDelta d = pose_delta(pose, true_rel.at(key));
      report.per_edge.push_back({key, method, d});
      sq_pos += d.translation_error * d.translation_error;
      abs_pos += d.translation_error;
      sq_rot += d.rotation_error * d.rotation_error;
      abs_rot += d.rotation_error;
      ++count;
    }
    MethodAggregates agg;
    if (count > 0) {
      agg.pos_rmse = std::sqrt(sq_pos / count);
      agg.pos_mae = abs_pos / count;
      agg.rot_rmse = std::sqrt(sq_rot / count);
      agg.rot_mae = abs_rot / count;
    }
    report.aggregates[method] = agg;
  }
  return report;
}

std::vector<SweepCellResult> sweep(const ExperimentConfig& base,
                                   const std::vector<nlohmann::json>& cell_patches) {
  if (cell_patches.empty()) throw std::invalid_argument("sweep grid is empty");
  std::vector<SweepCellResult> results;
  const json base_doc = experiment_config_to_json(base);
  for (size_t cell = 0; cell < cell_patches.size(); ++cell) {
    SweepCellResult out;
    try {
      json doc = base_doc;
      doc.merge_patch(cell_patches[cell]);
      out.config = parse_experiment_config(doc);
      if (out.config.experiment_id == base.experiment_id &&
          !cell_patches[cell].contains("experiment_id")) {
        out.config.experiment_id = base.experiment_id + "/cell" + std::to_string(cell);
      }
      for (int t = 0; t < out.config.trials; ++t) {
        out.reports.push_back(run_trial(out.config, t, cell));
      }
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    results.push_back(std::move(out));
  }
  return results;
}

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string reports_to_csv(const std::vector<TrialReport>& reports) {
  std::ostringstream out;
  out << "experiment_id,trial,method,noise_pos_sigma_m,noise_rot_sigma_deg,"
         "bias_pos_m,bias_rot_deg,num_agents,outlier_rate,pos_rmse_m,"
         "pos_mae_m,rot_rmse_deg,rot_mae_deg,clamp_events\n";
  for (const auto& r : reports) {
    for (const auto& [method, agg] : r.aggregates) {
      out << r.experiment_id << ',' << r.trial << ',' << method_name(method)
          << ',' << fmt_num(r.noise_pos_sigma_m) << ','
          << fmt_num(r.noise_rot_sigma_deg) << ',' << fmt_num(r.bias_pos_m)
          << ',' << fmt_num(r.bias_rot_deg) << ',' << r.num_agents << ','
          << fmt_num(r.outlier_rate) << ',' << fmt_num(agg.pos_rmse) << ','
          << fmt_num(agg.pos_mae) << ',' << fmt_num(agg.rot_rmse) << ','
          << fmt_num(agg.rot_mae) << ',' << r.clamp_events.at(method) << '\n';
    }
  }
  return out.str();
}

json reports_to_json(const std::vector<TrialReport>& reports) {
  json rows = json::array();
  for (const auto& r : reports) {
    for (const auto& [method, agg] : r.aggregates) {
      rows.push_back({{"experiment_id", r.experiment_id},
                      {"trial", r.trial},
                      {"method", method_name(method)},
                      {"noise_pos_sigma_m", r.noise_pos_sigma_m},
                      {"noise_rot_sigma_deg", r.noise_rot_sigma_deg},
                      {"bias_pos_m", r.bias_pos_m},
                      {"bias_rot_deg", r.bias_rot_deg},
                      {"num_agents", r.num_agents},
                      {"outlier_rate", r.outlier_rate},
                      {"pos_rmse_m", agg.pos_rmse},
                      {"pos_mae_m", agg.pos_mae},
                      {"rot_rmse_deg", agg.rot_rmse},
                      {"rot_mae_deg", agg.rot_mae},
                      {"clamp_events", r.clamp_events.at(method)}});
    }
  }
  return json{{"rows", rows}};
}

void emit(const std::vector<TrialReport>& reports, EmitFormat format,
          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  if (format == EmitFormat::kCsv) {
    out << reports_to_csv(reports);
  } else {
    out << reports_to_json(reports).dump(2) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

NoiseSpec noise_spec_from_json(const json& doc) {
  NoiseSpec spec;
  spec.position_sigma = doc.value("position_sigma_m", 0.0);
  spec.heading_sigma = doc.value("heading_sigma_deg", 0.0);
  if (doc.contains("position_bias_m")) {
    const auto& b = doc.at("position_bias_m");
    spec.position_bias = {b.at(0).get<double>(), b.at(1).get<double>()};
  }
  spec.heading_bias = doc.value("heading_bias_deg", 0.0);
  if (spec.position_sigma < 0.0 || spec.heading_sigma < 0.0) {
    throw std::invalid_argument("noise sigmas must be >= 0");
  }
  return spec;
}

json noise_spec_to_json(const NoiseSpec& spec) {
  return {{"position_sigma_m", spec.position_sigma},
          {"heading_sigma_deg", spec.heading_sigma},
          {"position_bias_m", {spec.position_bias[0], spec.position_bias[1]}},
          {"heading_bias_deg", spec.heading_bias}};
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
  ExperimentConfig cfg;
  cfg.experiment_id = doc.value("experiment_id", cfg.experiment_id);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.trials = doc.value("trials", cfg.trials);

  if (doc.contains("methods")) {
    cfg.methods.clear();
    for (const auto& name : doc.at("methods")) {
      cfg.methods.push_back(method_from_name(name.get<std::string>()));
    }
  }

  if (doc.contains("scene")) {
    const auto& s = doc.at("scene");
    cfg.scene.num_agents = s.value("num_agents", cfg.scene.num_agents);
    cfg.scene.extent = s.value("extent_m", cfg.scene.extent);
    cfg.scene.min_spacing = s.value("min_spacing_m", cfg.scene.min_spacing);
    cfg.scene.max_agents = s.value("max_agents", cfg.scene.max_agents);
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    if (n.contains("weak")) cfg.noise.weak = noise_spec_from_json(n.at("weak"));
    if (n.contains("strong")) cfg.noise.strong = noise_spec_from_json(n.at("strong"));
    cfg.noise.strong_fraction = n.value("strong_fraction", cfg.noise.strong_fraction);
  }
  if (doc.contains("measurement")) {
    const auto& m = doc.at("measurement");
    if (m.contains("inlier")) cfg.measurement.inlier = noise_spec_from_json(m.at("inlier"));
    if (m.contains("outlier")) cfg.measurement.outlier = noise_spec_from_json(m.at("outlier"));
    cfg.measurement.outlier_rate = m.value("outlier_rate", cfg.measurement.outlier_rate);
    cfg.measurement.overlap_sensitivity =
        m.value("overlap_sensitivity", cfg.measurement.overlap_sensitivity);
    if (cfg.measurement.overlap_sensitivity < 0.0) {
      throw std::invalid_argument("overlap_sensitivity must be >= 0");
    }
    if (cfg.measurement.outlier_rate < 0.0 || cfg.measurement.outlier_rate > 1.0) {
      throw std::invalid_argument("outlier_rate must lie in [0, 1]");
    }
  }
  if (doc.contains("consistency")) {
    const auto& c = doc.at("consistency");
    auto& cc = cfg.consistency;
    cc.icm_iters = c.value("icm_iters", cc.icm_iters);
    cc.reweight_iters = c.value("reweight_iters", cc.reweight_iters);
    cc.em.num_iters = c.value("em_iters", cc.em.num_iters);
    cc.em.dof = c.value("dof", cc.em.dof);
    cc.em.scale_floor = c.value("scale_floor", cc.em.scale_floor);
    cc.gamma_shape = c.value("gamma_shape", cc.gamma_shape);
    cc.overlap_floor = c.value("overlap_floor", cc.overlap_floor);
    cc.recompute_overlap = c.value("recompute_overlap", cc.recompute_overlap);
    if (c.contains("footprint")) {
      cc.footprint.length = c.at("footprint").value("length_m", cc.footprint.length);
      cc.footprint.width = c.at("footprint").value("width_m", cc.footprint.width);
    }
  }
  return cfg;
}

json experiment_config_to_json(const ExperimentConfig& cfg) {
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(method_name(m));
  return {
      {"experiment_id", cfg.experiment_id},
      {"seed", cfg.seed},
      {"trials", cfg.trials},
      {"methods", methods},
      {"scene",
       {{"num_agents", cfg.scene.num_agents},
        {"extent_m", cfg.scene.extent},
        {"min_spacing_m", cfg.scene.min_spacing},
        {"max_agents", cfg.scene.max_agents}}},
      {"noise",
       {{"weak", noise_spec_to_json(cfg.noise.weak)},
        {"strong", noise_spec_to_json(cfg.noise.strong)},
        {"strong_fraction", cfg.noise.strong_fraction}}},
      {"measurement",
       {{"inlier", noise_spec_to_json(cfg.measurement.inlier)},
        {"outlier", noise_spec_to_json(cfg.measurement.outlier)},
        {"outlier_rate", cfg.measurement.outlier_rate},
        {"overlap_sensitivity", cfg.measurement.overlap_sensitivity}}},
      {"consistency",
       {{"icm_iters", cfg.consistency.icm_iters},
        {"reweight_iters", cfg.consistency.reweight_iters},
        {"em_iters", cfg.consistency.em.num_iters},
        {"dof", cfg.consistency.em.dof},
        {"scale_floor", cfg.consistency.em.scale_floor},
        {"gamma_shape", cfg.consistency.gamma_shape},
        {"overlap_floor", cfg.consistency.overlap_floor},
        {"recompute_overlap", cfg.consistency.recompute_overlap},
        {"footprint",
         {{"length_m", cfg.consistency.footprint.length},
          {"width_m", cfg.consistency.footprint.width}}}}},
  };
}

}  // namespace posesync
