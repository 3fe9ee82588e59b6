#ifndef POSESYNC_WEIGHTED_EM_HPP
#define POSESYNC_WEIGHTED_EM_HPP

#include <vector>

#include "posesync/distributions.hpp"

namespace posesync {

/// One absolute-pose estimate of a node, as a Euclidean 3-vector
/// (x, y, theta) with theta wrapped, plus its edge weight.
struct Observation {
  Vec3 value = Vec3::Zero();
  double weight = 1.0;
};

struct EmConfig {
  int num_iters = 15;
  double dof = 2.0;
  double scale_floor = 1e-6;
  // Gaussian node model: eta is pinned to 1, turning the update into a
  // weighted normal MLE.
  bool gaussian = false;
};

/// Per-iteration weighted log-likelihood around the location update,
/// both evaluated with the iteration's incoming scale.
struct EmIterationDiagnostics {
  double loglik_before = 0.0;
  double loglik_after = 0.0;
};

struct EmResult {
  StudentTParams params;
  std::vector<EmIterationDiagnostics> iterations;
};

/// Per-coordinate median of the observation values; the heading median is
/// taken on residuals about the circular mean and re-wrapped.
Vec3 coordinatewise_median(const std::vector<Observation>& obs);

/// eta = (nu + 3) / (nu + delta' Sigma^-1 delta).
double em_expectation(const Vec3& delta, const Mat3& scale, double nu);

/// Weighted MLE of location and scale under the multivariate t model.
/// Requires >= 2 observations with positive total weight; callers with a
/// two-node graph should use two_node_estimate instead.
EmResult weighted_t_mle(const std::vector<Observation>& obs, const EmConfig& config);

/// Unweighted average of the observation values (circular for heading).
Vec3 two_node_estimate(const std::vector<Observation>& obs);

/// Circular mean of a set of angles (radians), optionally weighted.
double circular_mean(const std::vector<double>& angles,
                     const std::vector<double>& weights = {});

/// Weighted log-likelihood sum w * log p(v | params) used by the EM
/// diagnostics and by the grid-search test oracle.
double weighted_loglik(const std::vector<Observation>& obs,
                       const StudentTParams& params, bool gaussian = false);

}  // namespace posesync

#endif
