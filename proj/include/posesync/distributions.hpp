#ifndef POSESYNC_DISTRIBUTIONS_HPP
#define POSESYNC_DISTRIBUTIONS_HPP

#include <array>
#include <random>

#include <Eigen/Dense>

#include "posesync/pose.hpp"

namespace posesync {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Location/scale/dof of one node's multivariate t belief over (x, y, theta).
struct StudentTParams {
  Vec3 location = Vec3::Zero();
  Mat3 scale = Mat3::Identity();
  double dof = 2.0;
};

/// Gamma prior parametrized by mean and shape.
struct GammaPrior {
  double mean = 1.0;   // o in (0, 1]
  double shape = 1.0;  // k > 0
};

/// Per-axis Gaussian position noise plus von Mises heading noise.
struct NoiseSpec {
  double position_sigma = 0.0;               // meters
  double heading_sigma = 0.0;                // degrees
  std::array<double, 2> position_bias{0, 0}; // meters
  double heading_bias = 0.0;                 // degrees

  bool is_zero() const {
    return position_sigma == 0.0 && heading_sigma == 0.0 &&
           position_bias[0] == 0.0 && position_bias[1] == 0.0 &&
           heading_bias == 0.0;
  }
};

using Rng = std::mt19937_64;

/// Log-density of the 3-dimensional multivariate t distribution.
/// Throws std::invalid_argument if the scale is not positive definite.
double mvt_logpdf(const Vec3& x, const StudentTParams& params);

/// Log-density of the 3-dimensional Gaussian with the same location/scale
/// (the nu -> infinity limit of the t). Used by the Gaussian node model.
double mvn_logpdf(const Vec3& x, const Vec3& location, const Mat3& scale);

/// Log-density of Gamma(w | mean, shape). Throws for w <= 0.
double gamma_logpdf(double w, const GammaPrior& prior);

/// Symmetrizes and floors the eigenvalues of a scale matrix at `floor`.
Mat3 floor_scale(const Mat3& scale, double floor);

/// Von Mises sample with mean mu (radians) and concentration derived from
/// sigma (degrees) via kappa = 1/sigma_rad^2. Result in (-pi, pi].
double von_mises_sample(double mu, double sigma_deg, Rng& rng);

/// Draws a pose-noise 3-vector (dx, dy, dtheta_rad) from the spec.
std::array<double, 3> sample_pose_noise(const NoiseSpec& spec, Rng& rng);

}  // namespace posesync

#endif
