#ifndef POSESYNC_POSE_HPP
#define POSESYNC_POSE_HPP

#include <array>
#include <cmath>

namespace posesync {

constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle to (-pi, pi].
double wrap_angle(double theta);

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Rigid 2-D transform (x, y, heading). Heading is kept in (-pi, pi]
/// by every operation that produces a Pose.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // radians, (-pi, pi]

  static Pose identity() { return Pose{}; }

  std::array<double, 3> as_vector() const { return {x, y, theta}; }
  static Pose from_vector(const std::array<double, 3>& v) {
    return Pose{v[0], v[1], wrap_angle(v[2])};
  }
};

/// Translation/rotation distance between two poses, in the units the
/// evaluation reports (meters, degrees).
struct PoseDelta {
  double translation_error = 0.0;  // meters, >= 0
  double rotation_error = 0.0;     // degrees, [0, 180]
};

/// a then b, i.e. the pose of the product of the homogeneous matrices.
Pose compose(const Pose& a, const Pose& b);

Pose inverse(const Pose& a);

/// Transform mapping frame j into frame i: inverse(xi_i) o xi_j.
Pose relative(const Pose& xi_i, const Pose& xi_j);

/// Applies a correction on the left: c o noisy_rel.
Pose apply_correction(const Pose& c, const Pose& noisy_rel);

PoseDelta pose_delta(const Pose& a, const Pose& b);

/// R(theta) * pt + (x, y).
std::array<double, 2> transform_point(const Pose& p, const std::array<double, 2>& pt);

}  // namespace posesync

#endif
