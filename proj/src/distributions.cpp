#include "posesync/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace posesync {

namespace {

// Cholesky of a 3x3 SPD scale; throws if not positive definite.
Eigen::LLT<Mat3> checked_llt(const Mat3& scale) {
  Eigen::LLT<Mat3> llt(scale);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("scale matrix is not positive definite");
  }
  return llt;
}

double log_det_from_llt(const Eigen::LLT<Mat3>& llt) {
  const Mat3 L = llt.matrixL();
  return 2.0 * (std::log(L(0, 0)) + std::log(L(1, 1)) + std::log(L(2, 2)));
}

double mahalanobis_sq(const Eigen::LLT<Mat3>& llt, const Vec3& delta) {
  return delta.dot(llt.solve(delta));
}

}  // namespace

double mvt_logpdf(const Vec3& x, const StudentTParams& params) {
  if (params.dof <= 0.0) throw std::invalid_argument("dof must be positive");
  const auto llt = checked_llt(params.scale);
  const double nu = params.dof;
  const double d = 3.0;
  const double m2 = mahalanobis_sq(llt, x - params.location);
  return std::lgamma((nu + d) / 2.0) - std::lgamma(nu / 2.0) -
         0.5 * d * std::log(nu * kPi) - 0.5 * log_det_from_llt(llt) -
         0.5 * (nu + d) * std::log1p(m2 / nu);
}

double mvn_logpdf(const Vec3& x, const Vec3& location, const Mat3& scale) {
  const auto llt = checked_llt(scale);
  const double m2 = mahalanobis_sq(llt, x - location);
  return -0.5 * (3.0 * std::log(2.0 * kPi) + log_det_from_llt(llt) + m2);
}

double gamma_logpdf(double w, const GammaPrior& prior) {
  if (w <= 0.0) throw std::invalid_argument("gamma_logpdf requires w > 0");
  if (prior.mean <= 0.0 || prior.shape <= 0.0) {
    throw std::invalid_argument("gamma prior requires positive mean and shape");
  }
  const double k = prior.shape;
  const double mu = prior.mean;
  return -std::lgamma(k) - k * std::log(mu / k) + (k - 1.0) * std::log(w) -
         k * w / mu;
}

Mat3 floor_scale(const Mat3& scale, double floor) {
  Mat3 sym = 0.5 * (scale + scale.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym);
  Vec3 ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double von_mises_sample(double mu, double sigma_deg, Rng& rng) {
  if (sigma_deg <= 0.0) throw std::invalid_argument("sigma must be positive");
  const double sigma = deg_to_rad(sigma_deg);
  const double kappa = 1.0 / (sigma * sigma);

  // Best & Fisher (1979) rejection sampler.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);

  while (true) {
    const double u1 = unif(rng);
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = unif(rng);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double u3 = unif(rng);
      const double sign = (u3 > 0.5) ? 1.0 : -1.0;
      return wrap_angle(sign * std::acos(f) + mu);
    }
  }
}

std::array<double, 3> sample_pose_noise(const NoiseSpec& spec, Rng& rng) {
  std::array<double, 3> n{spec.position_bias[0], spec.position_bias[1],
                          deg_to_rad(spec.heading_bias)};
  if (spec.position_sigma > 0.0) {
    std::normal_distribution<double> gauss(0.0, spec.position_sigma);
    n[0] += gauss(rng);
    n[1] += gauss(rng);
  }
  if (spec.heading_sigma > 0.0) {
    n[2] = von_mises_sample(deg_to_rad(spec.heading_bias), spec.heading_sigma, rng);
  }
  n[2] = wrap_angle(n[2]);
  return n;
}

}  // namespace posesync
