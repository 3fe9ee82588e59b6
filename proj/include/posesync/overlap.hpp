#ifndef POSESYNC_OVERLAP_HPP
#define POSESYNC_OVERLAP_HPP

#include <array>
#include <vector>

#include "posesync/pose.hpp"

namespace posesync {

/// Spatial extent of one agent's message, an oriented rectangle centered
/// on the agent and aligned to its heading.
struct MessageFootprint {
  double length = 200.0;  // meters, along the heading axis
  double width = 80.0;    // meters
};

using Point2 = std::array<double, 2>;
using Polygon = std::vector<Point2>;

/// Corners of the footprint rectangle in world coordinates (CCW).
Polygon footprint_polygon(const Pose& pose, const MessageFootprint& fp);

/// Signed shoelace area; positive for CCW polygons.
double polygon_area(const Polygon& poly);

/// Sutherland-Hodgman clip of a convex subject polygon against a convex
/// CCW clip polygon.
Polygon clip_convex(const Polygon& subject, const Polygon& clip);

/// Intersection area of the two agents' footprints divided by one
/// footprint's area. Returns the raw fraction in [0, 1] (no floor).
double overlap_fraction(const Pose& pose_i, const Pose& pose_j,
                        const MessageFootprint& fp);

}  // namespace posesync

#endif
