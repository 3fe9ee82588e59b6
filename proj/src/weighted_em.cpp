#include "posesync/weighted_em.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace posesync {

namespace {

double median_of(std::vector<double> v) {
  const size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  double hi = v[n / 2];
  if (n % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
  return 0.5 * (v[n / 2 - 1] + hi);
}

// Residual of an observation value against the current location estimate,
// with the heading component wrapped.
Vec3 residual(const Vec3& location, const Vec3& value) {
  Vec3 d = location - value;
  d[2] = wrap_angle(d[2]);
  return d;
}

}  // namespace

double circular_mean(const std::vector<double>& angles,
                     const std::vector<double>& weights) {
  double s = 0.0, c = 0.0;
  for (size_t i = 0; i < angles.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    s += w * std::sin(angles[i]);
    c += w * std::cos(angles[i]);
  }
  return wrap_angle(std::atan2(s, c));
}

Vec3 coordinatewise_median(const std::vector<Observation>& obs) {
  if (obs.empty()) throw std::invalid_argument("coordinatewise_median: empty observation list");
  std::vector<double> xs, ys, residuals, thetas;
  xs.reserve(obs.size());
  ys.reserve(obs.size());
  thetas.reserve(obs.size());
  for (const auto& o : obs) {
    xs.push_back(o.value[0]);
    ys.push_back(o.value[1]);
    thetas.push_back(o.value[2]);
  }
  const double ref = circular_mean(thetas);
  residuals.reserve(obs.size());
  for (double t : thetas) residuals.push_back(wrap_angle(t - ref));
  return Vec3(median_of(xs), median_of(ys), wrap_angle(ref + median_of(residuals)));
}

double em_expectation(const Vec3& delta, const Mat3& scale, double nu) {
  Eigen::LLT<Mat3> llt(scale);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("em_expectation: singular scale matrix");
  }
  const double m2 = delta.dot(llt.solve(delta));
  return (nu + 3.0) / (nu + m2);
}

double weighted_loglik(const std::vector<Observation>& obs,
                       const StudentTParams& params, bool gaussian) {
  double ll = 0.0;
  for (const auto& o : obs) {
    Vec3 v = o.value;
    // Wrap the heading into the chart centered on the location so the
    // Euclidean density sees the short-way residual.
    v[2] = params.location[2] - wrap_angle(params.location[2] - v[2]);
    ll += o.weight * (gaussian ? mvn_logpdf(v, params.location, params.scale)
                               : mvt_logpdf(v, params));
  }
  return ll;
}

EmResult weighted_t_mle(const std::vector<Observation>& obs, const EmConfig& config) {
  if (obs.size() < 2) {
    throw std::invalid_argument(
        "weighted_t_mle: need >= 2 observations (use two_node_estimate for "
        "two-agent graphs)");
  }
  double total_weight = 0.0;
  for (const auto& o : obs) {
    if (o.weight < 0.0) throw std::invalid_argument("weighted_t_mle: negative weight");
    total_weight += o.weight;
  }
  if (total_weight <= 0.0) throw std::invalid_argument("weighted_t_mle: all weights are zero");
  if (config.num_iters < 1) throw std::invalid_argument("weighted_t_mle: num_iters must be >= 1");

  const double nu = config.dof;
  const size_t n = obs.size();

  StudentTParams params;
  params.location = coordinatewise_median(obs);
  params.scale = Mat3::Identity();
  params.dof = nu;

  EmResult result;
  result.iterations.reserve(config.num_iters);
  std::vector<double> eta(n, 1.0);

  for (int iter = 0; iter < config.num_iters; ++iter) {
    // E-step
    if (!config.gaussian) {
      for (size_t i = 0; i < n; ++i) {
        eta[i] = em_expectation(residual(params.location, obs[i].value),
                                params.scale, nu);
      }
    }

    EmIterationDiagnostics diag;
    diag.loglik_before = weighted_loglik(obs, params, config.gaussian);

    // M-step: location (residual form keeps the heading update circular).
    Vec3 num = Vec3::Zero();
    double den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double ew = eta[i] * obs[i].weight;
      num += ew * residual(params.location, obs[i].value);
      den += ew;
    }
    params.location -= num / den;
    params.location[2] = wrap_angle(params.location[2]);

    diag.loglik_after = weighted_loglik(obs, params, config.gaussian);
    result.iterations.push_back(diag);

    // M-step: scale, unweighted across edges per the small-graph rule.
    Mat3 sigma = Mat3::Zero();
    for (size_t i = 0; i < n; ++i) {
      const Vec3 d = residual(params.location, obs[i].value);
      sigma += eta[i] * d * d.transpose();
    }
    sigma /= static_cast<double>(n);
    params.scale = floor_scale(sigma, config.scale_floor);
  }

  result.params = params;
  return result;
}

Vec3 two_node_estimate(const std::vector<Observation>& obs) {
  if (obs.empty()) throw std::invalid_argument("two_node_estimate: empty observation list");
  Vec3 mean = Vec3::Zero();
  std::vector<double> thetas;
  thetas.reserve(obs.size());
  for (const auto& o : obs) {
    mean[0] += o.value[0];
    mean[1] += o.value[1];
    thetas.push_back(o.value[2]);
  }
  mean[0] /= static_cast<double>(obs.size());
  mean[1] /= static_cast<double>(obs.size());
  mean[2] = circular_mean(thetas);
  return mean;
}

}  // namespace posesync
