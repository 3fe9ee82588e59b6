#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "posesync/graph_io.hpp"
#include "posesync/noise_sim.hpp"

using namespace posesync;

TEST_CASE("generate_scene respects spacing and is deterministic") {
  SceneSpec spec;
  spec.num_agents = 2;
  spec.extent = 1000.0;
  spec.min_spacing = 5.0;
  Rng rng(1);
  const auto poses = generate_scene(spec, rng);
  REQUIRE(poses.size() == 2);
  CHECK(std::hypot(poses[0].x - poses[1].x, poses[0].y - poses[1].y) >= spec.min_spacing);

  Rng a(42), b(42);
  const auto pa = generate_scene(spec, a);
  const auto pb = generate_scene(spec, b);
  for (size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].x == pb[i].x);
    CHECK(pa[i].y == pb[i].y);
    CHECK(pa[i].theta == pb[i].theta);
  }
}

TEST_CASE("generate_scene spacing holds over many scenes") {
  SceneSpec spec;
  spec.num_agents = 7;
  spec.extent = 120.0;
  spec.min_spacing = 10.0;
  for (int s = 0; s < 2000; ++s) {
    Rng rng(s);
    const auto poses = generate_scene(spec, rng);
    for (size_t i = 0; i < poses.size(); ++i) {
      for (size_t j = i + 1; j < poses.size(); ++j) {
        CHECK(std::hypot(poses[i].x - poses[j].x, poses[i].y - poses[j].y) >=
              spec.min_spacing);
      }
      CHECK(poses[i].theta > -kPi);
      CHECK(poses[i].theta <= kPi);
    }
  }
}

TEST_CASE("generate_scene rejects infeasible specs") {
  SceneSpec spec;
  spec.num_agents = 7;
  spec.extent = 1.0;
  spec.min_spacing = 100.0;
  Rng rng(3);
  CHECK_THROWS(generate_scene(spec, rng));
}

TEST_CASE("strong-fraction rounding and provenance tagging") {
  Rng rng(5);
  const std::vector<Pose> poses(4, Pose{0, 0, 0});
  const NoiseSpec zero{};
  const auto all_weak = assign_and_apply_noise(poses, 0.0, zero, zero, rng);
  for (const auto& n : all_weak) CHECK(n.provenance == NoiseProvenance::kWeak);

  const auto half = assign_and_apply_noise(poses, 0.5, zero, zero, rng);
  int strong = 0;
  for (const auto& n : half) {
    if (n.provenance == NoiseProvenance::kStrong) ++strong;
  }
  CHECK(strong == 2);
}

TEST_CASE("zero noise keeps the true pose") {
  Rng rng(7);
  const std::vector<Pose> poses{{1, 2, 0.3}, {4, 5, -0.6}};
  const NoiseSpec zero{};
  const auto nodes = assign_and_apply_noise(poses, 0.5, zero, zero, rng);
  for (size_t i = 0; i < nodes.size(); ++i) {
    CHECK(oracles::pose_close(nodes[i].noisy_pose, nodes[i].true_pose, 1e-15));
  }
}

TEST_CASE("simulate_regression zero-noise model returns the true relative") {
  Rng rng(9);
  const Pose true_rel{1.5, -0.5, 0.4};
  MeasurementModel model;  // all-zero specs
  CHECK(oracles::pose_close(simulate_regression(true_rel, model, rng), true_rel, 1e-15));
}

TEST_CASE("outlier_rate 1 reproduces the outlier statistics") {
  Rng rng(11);
  MeasurementModel model;
  model.outlier = NoiseSpec{2.0, 20.0, {0, 0}, 0};
  model.outlier_rate = 1.0;
  const Pose true_rel{0, 0, 0};
  const int n = 100000;
  double sum_x = 0.0, sum_x2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Pose p = simulate_regression(true_rel, model, rng);
    sum_x += p.x;
    sum_x2 += p.x * p.x;
  }
  const double mean = sum_x / n;
  const double stddev = std::sqrt(sum_x2 / n - mean * mean);
  CHECK(std::abs(mean) < 0.05);
  CHECK(stddev == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("reverse-edge residuals are uncorrelated") {
  Rng rng(13);
  MeasurementModel model;
  model.inlier = NoiseSpec{0.5, 5.0, {0, 0}, 0};
  const Pose true_rel{3, 1, 0.2};
  const Pose true_rev = inverse(true_rel);
  const int n = 10000;
  double sx = 0, sy = 0, sxy = 0, sx2 = 0, sy2 = 0;
  for (int i = 0; i < n; ++i) {
    const double a = simulate_regression(true_rel, model, rng).x - true_rel.x;
    const double b = simulate_regression(true_rev, model, rng).x - true_rev.x;
    sx += a; sy += b; sxy += a * b; sx2 += a * a; sy2 += b * b;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double corr = cov / std::sqrt((sx2 / n - (sx / n) * (sx / n)) *
                                      (sy2 / n - (sy / n) * (sy / n)));
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("exact correction inverts applied noise") {
  Rng rng(17);
  SceneSpec spec;
  spec.num_agents = 4;
  spec.extent = 80.0;
  spec.min_spacing = 8.0;
  const auto poses = generate_scene(spec, rng);
  const NoiseSpec strong{0.4, 4.0, {0, 0}, 0};
  const auto nodes = assign_and_apply_noise(poses, 1.0, strong, strong, rng);
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      const Pose true_rel = relative(nodes[i].true_pose, nodes[j].true_pose);
      const Pose noisy_rel = relative(nodes[i].noisy_pose, nodes[j].noisy_pose);
      const Pose c = compose(true_rel, inverse(noisy_rel));
      CHECK(oracles::pose_close(apply_correction(c, noisy_rel), true_rel, 1e-9));
    }
  }
}

TEST_CASE("build_graph yields a complete symmetric graph with floored overlaps") {
  Rng rng(19);
  SceneSpec spec;
  spec.num_agents = 5;
  spec.extent = 60.0;
  spec.min_spacing = 6.0;
  const auto poses = generate_scene(spec, rng);
  const NoiseSpec weak{0.01, 0.1, {0, 0}, 0};
  const auto nodes = assign_and_apply_noise(poses, 0.0, weak, weak, rng);
  MeasurementModel model;
  model.inlier = NoiseSpec{0.1, 1.0, {0, 0}, 0};
  const auto graph = build_graph(nodes, model, MessageFootprint{}, 0.01, rng);
  graph.validate();
  CHECK(graph.edges.size() == 20);
  for (const auto& e : graph.edges) {
    CHECK(e.overlap >= 0.01);
    CHECK(e.overlap <= 1.0);
    CHECK(graph.find_edge(e.to, e.from) != nullptr);
  }
}

TEST_CASE("graph JSON round trip preserves the graph") {
  Rng rng(23);
  SceneSpec spec;
  spec.num_agents = 3;
  spec.extent = 50.0;
  spec.min_spacing = 5.0;
  const auto poses = generate_scene(spec, rng);
  const NoiseSpec weak{0.01, 0.1, {0, 0}, 0};
  const NoiseSpec strong{0.4, 4.0, {0, 0}, 0};
  const auto nodes = assign_and_apply_noise(poses, 0.5, weak, strong, rng);
  MeasurementModel model;
  model.inlier = NoiseSpec{0.1, 1.0, {0, 0}, 0};
  const auto graph = build_graph(nodes, model, MessageFootprint{}, 0.01, rng);

  const auto doc = graph_to_json(graph);
  const auto back = graph_from_json(doc);
  REQUIRE(back.nodes.size() == graph.nodes.size());
  REQUIRE(back.edges.size() == graph.edges.size());
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    CHECK(oracles::pose_close(back.nodes[i].true_pose, graph.nodes[i].true_pose, 1e-9));
    CHECK(oracles::pose_close(back.nodes[i].noisy_pose, graph.nodes[i].noisy_pose, 1e-9));
    CHECK(back.nodes[i].provenance == graph.nodes[i].provenance);
  }
  for (size_t i = 0; i < graph.edges.size(); ++i) {
    CHECK(oracles::pose_close(back.edges[i].predicted_relative,
                              graph.edges[i].predicted_relative, 1e-9));
    CHECK(back.edges[i].overlap == doctest::Approx(graph.edges[i].overlap));
  }
}
