#include "posesync/pose.hpp"

namespace posesync {

double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;  // remainder gives [-pi, pi]; move -pi to +pi
  return t;
}

Pose compose(const Pose& a, const Pose& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return Pose{a.x + c * b.x - s * b.y,
              a.y + s * b.x + c * b.y,
              wrap_angle(a.theta + b.theta)};
}

Pose inverse(const Pose& a) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return Pose{-(c * a.x + s * a.y),
              -(-s * a.x + c * a.y),
              wrap_angle(-a.theta)};
}

Pose relative(const Pose& xi_i, const Pose& xi_j) {
  return compose(inverse(xi_i), xi_j);
}

Pose apply_correction(const Pose& c, const Pose& noisy_rel) {
  return compose(c, noisy_rel);
}

PoseDelta pose_delta(const Pose& a, const Pose& b) {
  PoseDelta d;
  d.translation_error = std::hypot(a.x - b.x, a.y - b.y);
  d.rotation_error = std::abs(rad_to_deg(wrap_angle(a.theta - b.theta)));
  return d;
}

std::array<double, 2> transform_point(const Pose& p, const std::array<double, 2>& pt) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return {p.x + c * pt[0] - s * pt[1], p.y + s * pt[0] + c * pt[1]};
}

}  // namespace posesync
