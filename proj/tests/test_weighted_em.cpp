#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "posesync/weighted_em.hpp"

using namespace posesync;

namespace {

std::vector<Observation> random_observations(std::mt19937_64& rng, int n,
                                             double spread = 0.5) {
  std::normal_distribution<double> g(0.0, spread);
  std::uniform_real_distribution<double> w(0.2, 2.0);
  std::vector<Observation> obs;
  const Vec3 center(2.0, -1.0, 0.4);
  for (int i = 0; i < n; ++i) {
    obs.push_back({center + Vec3(g(rng), g(rng), 0.2 * g(rng)), w(rng)});
    obs.back().value[2] = wrap_angle(obs.back().value[2]);
  }
  return obs;
}

}  // namespace

TEST_CASE("coordinatewise median basics") {
  CHECK_THROWS_AS(coordinatewise_median({}), std::invalid_argument);

  const Observation single{Vec3(1, 2, 0.3), 1.0};
  const Vec3 m1 = coordinatewise_median({single});
  CHECK(m1.isApprox(single.value, 1e-12));

  std::vector<Observation> odd{{Vec3(0, 0, 0), 1}, {Vec3(1, 1, 0), 1}, {Vec3(2, 2, 0), 1}};
  const Vec3 m = coordinatewise_median(odd);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(1.0));
  CHECK(m[2] == doctest::Approx(0.0));
}

TEST_CASE("circular heading median across the wrap point") {
  std::vector<Observation> obs{{Vec3(0, 0, deg_to_rad(179)), 1},
                               {Vec3(0, 0, deg_to_rad(-179)), 1},
                               {Vec3(0, 0, deg_to_rad(178)), 1}};
  const Vec3 m = coordinatewise_median(obs);
  // Brute-force circular median: the candidate minimizing summed circular
  // distance to all observations.
  double best = 0.0, best_cost = 1e300;
  for (const auto& cand : obs) {
    double cost = 0.0;
    for (const auto& o : obs) {
      cost += std::abs(wrap_angle(cand.value[2] - o.value[2]));
    }
    if (cost < best_cost) { best_cost = cost; best = cand.value[2]; }
  }
  CHECK(rad_to_deg(best) == doctest::Approx(179.0));
  CHECK(rad_to_deg(m[2]) == doctest::Approx(179.0).epsilon(1e-9));
}

TEST_CASE("em_expectation closed form") {
  const double nu = 2.0;
  CHECK(em_expectation(Vec3::Zero(), Mat3::Identity(), nu) == doctest::Approx(2.5));
  CHECK(em_expectation(Vec3(1, 1, 1), Mat3::Identity(), nu) == doctest::Approx(1.0));
  CHECK(em_expectation(Vec3(100, 100, 100), Mat3::Identity(), nu) < 1e-3);
  CHECK_THROWS_AS(em_expectation(Vec3::Zero(), Mat3::Zero(), nu), std::invalid_argument);
}

TEST_CASE("weighted_t_mle input validation") {
  EmConfig cfg;
  CHECK_THROWS_WITH_AS(weighted_t_mle({{Vec3::Zero(), 1.0}}, cfg),
                       doctest::Contains("two_node_estimate"), std::invalid_argument);
  std::vector<Observation> zero_w{{Vec3::Zero(), 0.0}, {Vec3::Ones(), 0.0}};
  CHECK_THROWS_AS(weighted_t_mle(zero_w, cfg), std::invalid_argument);
}

TEST_CASE("degenerate cluster collapses to the shared value") {
  EmConfig cfg;
  const Vec3 v(3.0, -2.0, 0.7);
  std::vector<Observation> obs(5, Observation{v, 1.0});
  const auto result = weighted_t_mle(obs, cfg);
  CHECK(result.params.location.isApprox(v, 1e-9));
  CHECK(result.params.scale.isApprox(Mat3::Identity() * cfg.scale_floor, 1e-9));
}

TEST_CASE("symmetric observations average to the origin") {
  EmConfig cfg;
  std::vector<Observation> obs{{Vec3(1, 0, 0), 1}, {Vec3(-1, 0, 0), 1},
                               {Vec3(0, 1, 0), 1}, {Vec3(0, -1, 0), 1}};
  const auto result = weighted_t_mle(obs, cfg);
  CHECK(result.params.location.norm() < 1e-9);
}

TEST_CASE("uniformly scaling all weights leaves the estimate unchanged") {
  EmConfig cfg;
  std::mt19937_64 rng(23);
  const auto obs = random_observations(rng, 6);
  auto scaled = obs;
  for (auto& o : scaled) o.weight *= 7.3;
  const auto a = weighted_t_mle(obs, cfg);
  const auto b = weighted_t_mle(scaled, cfg);
  CHECK((a.params.location - b.params.location).norm() < 1e-9);
  CHECK((a.params.scale - b.params.scale).norm() < 1e-9);
}

TEST_CASE("heavy-tailed estimate shrugs off a far outlier") {
  EmConfig cfg;
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g(0.0, 0.05);
  std::vector<Observation> obs;
  for (int i = 0; i < 10; ++i) {
    obs.push_back({Vec3(g(rng), g(rng), 0.1 * g(rng)), 1.0});
  }
  const Vec3 clean = weighted_t_mle(obs, cfg).params.location;
  obs.push_back({Vec3(100.0, 0.0, 0.0), 1.0});
  const Vec3 robust = weighted_t_mle(obs, cfg).params.location;

  Vec3 mean = Vec3::Zero();
  for (const auto& o : obs) mean += o.value;
  mean /= static_cast<double>(obs.size());
  const double mean_shift = (mean - clean).norm();
  const double robust_shift = (robust - clean).norm();
  CHECK(robust_shift < 0.1 * mean_shift);
}

TEST_CASE("location-step log-likelihood never decreases") {
  EmConfig cfg;
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const auto obs = random_observations(rng, 5 + rep % 10);
    const auto result = weighted_t_mle(obs, cfg);
    REQUIRE(result.iterations.size() == 15);
    for (const auto& it : result.iterations) {
      CHECK(it.loglik_after >= it.loglik_before - 1e-9);
    }
  }
}

TEST_CASE("scale output is symmetric PSD with floored eigenvalues") {
  EmConfig cfg;
  std::mt19937_64 rng(37);
  const auto obs = random_observations(rng, 8);
  const auto result = weighted_t_mle(obs, cfg);
  const Mat3& s = result.params.scale;
  CHECK((s - s.transpose()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat3> es(s);
  CHECK(es.eigenvalues().minCoeff() >= cfg.scale_floor * (1 - 1e-9));
}

TEST_CASE("EM location matches the grid-search oracle") {
  EmConfig cfg;
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 3; ++rep) {
    const auto obs = random_observations(rng, 10);
    const auto result = weighted_t_mle(obs, cfg);
    const Vec3 grid = oracles::grid_search_location(obs, result.params);
    CHECK(std::abs(grid[0] - result.params.location[0]) <= 0.01);
    CHECK(std::abs(grid[1] - result.params.location[1]) <= 0.01);
    CHECK(std::abs(rad_to_deg(wrap_angle(grid[2] - result.params.location[2]))) <= 0.1);
  }
}

TEST_CASE("two_node_estimate") {
  const Vec3 v(1.0, 2.0, 0.5);
  CHECK(two_node_estimate({{v, 1}, {v, 1}}).isApprox(v, 1e-12));

  const Vec3 mid = two_node_estimate({{Vec3(0, 0, deg_to_rad(10)), 1},
                                      {Vec3(2, 0, deg_to_rad(-10)), 1}});
  CHECK(mid[0] == doctest::Approx(1.0));
  CHECK(mid[1] == doctest::Approx(0.0));
  CHECK(mid[2] == doctest::Approx(0.0));

  // Circular mean across the wrap point: unit-vector averaging oracle.
  const Vec3 wrap = two_node_estimate({{Vec3(0, 0, deg_to_rad(170)), 1},
                                       {Vec3(0, 0, deg_to_rad(-170)), 1}});
  const double sx = std::sin(deg_to_rad(170)) + std::sin(deg_to_rad(-170));
  const double cx = std::cos(deg_to_rad(170)) + std::cos(deg_to_rad(-170));
  CHECK(wrap[2] == doctest::Approx(std::atan2(sx, cx)));
  CHECK(rad_to_deg(std::abs(wrap[2])) == doctest::Approx(180.0));
}
