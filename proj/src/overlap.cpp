#include "posesync/overlap.hpp"

#include <algorithm>
#include <cmath>

namespace posesync {

Polygon footprint_polygon(const Pose& pose, const MessageFootprint& fp) {
  const double hl = 0.5 * fp.length;
  const double hw = 0.5 * fp.width;
  return {transform_point(pose, {hl, hw}), transform_point(pose, {-hl, hw}),
          transform_point(pose, {-hl, -hw}), transform_point(pose, {hl, -hw})};
}

double polygon_area(const Polygon& poly) {
  double area = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    area += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * area;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  Polygon output = subject;
  const size_t m = clip.size();
  for (size_t i = 0; i < m && !output.empty(); ++i) {
    const auto& a = clip[i];
    const auto& b = clip[(i + 1) % m];
    // Inside = left of edge a->b for a CCW clip polygon.
    auto side = [&](const Point2& p) {
      return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    };
    Polygon input;
    input.swap(output);
    const size_t n = input.size();
    for (size_t j = 0; j < n; ++j) {
      const Point2& cur = input[j];
      const Point2& nxt = input[(j + 1) % n];
      const double sc = side(cur);
      const double sn = side(nxt);
      if (sc >= 0.0) output.push_back(cur);
      if ((sc >= 0.0) != (sn >= 0.0)) {
        const double t = sc / (sc - sn);
        output.push_back({cur[0] + t * (nxt[0] - cur[0]),
                          cur[1] + t * (nxt[1] - cur[1])});
      }
    }
  }
  return output;
}

double overlap_fraction(const Pose& pose_i, const Pose& pose_j,
                        const MessageFootprint& fp) {
  const Polygon pi = footprint_polygon(pose_i, fp);
  const Polygon pj = footprint_polygon(pose_j, fp);
  const Polygon inter = clip_convex(pi, pj);
  if (inter.size() < 3) return 0.0;
  const double frac = std::abs(polygon_area(inter)) / (fp.length * fp.width);
  return std::clamp(frac, 0.0, 1.0);
}

}  // namespace posesync
