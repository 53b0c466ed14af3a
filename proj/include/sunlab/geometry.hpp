#pragma once

// Visual-angle geometry of the pointing screen: degree/pixel projection, the
// radial ray field drawn around the cursor, and its clipping against the
// moving area and the optional vision-loss aperture.
//
// All positions are in degrees of visual angle, origin at the screen center,
// x to the right and y upward. The target is always at the origin.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sunlab {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using PointDeg = Point2<double>;
using PointPx = Point2<double>;

template <typename Scalar>
struct Segment2 {
  Point2<Scalar> a;
  Point2<Scalar> b;

  Scalar length() const { return (b - a).norm(); }
};

using Segment = Segment2<double>;

struct ScreenGeometry {
  int width_px = 1680;
  int height_px = 1050;
  double width_cm = 52.0;
  double height_cm = 32.0;
  double viewing_distance_cm = 59.7;
  double half_height_deg = 15.0;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;

  /// Pixels per degree along either axis in linear projection.
  double px_per_deg() const { return (height_px / 2.0) / half_height_deg; }
  double px_to_deg_length(double px) const { return px / px_per_deg(); }

  friend bool operator==(const ScreenGeometry&, const ScreenGeometry&) = default;
};

enum class Projection { linear, tangent };

/// Pixel position (origin top-left, y down) of a point given in degrees.
PointPx deg_to_px(const PointDeg& p, const ScreenGeometry& g, Projection mode = Projection::linear);

/// Inverse of deg_to_px.
PointDeg px_to_deg(const PointPx& px, const ScreenGeometry& g, Projection mode = Projection::linear);

struct MouseGain {
  double px_per_cm;
  double deg_per_cm;
  double counts_per_deg;  // at 1 count = 1 pixel, no acceleration
  double equivalent_dpi;
};

/// Device gain such that travel_cm of mouse displacement crosses the full
/// screen height.
MouseGain mouse_gain(const ScreenGeometry& g, double travel_cm = 3.5);

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::uint8_t a = 255;

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

struct RayConfig {
  int num_rays = 128;
  double start_offset_deg = 2.0;
  Rgba outer_color{0, 0, 0, 255};
  Rgba inner_color{255, 255, 255, 255};
  double outer_width_px = 2.0;
  double inner_width_px = 1.0;
  double opacity = 1.0;
  std::optional<double> max_length_deg;  // empty: run to the moving-area edge

  void validate() const;

  friend bool operator==(const RayConfig&, const RayConfig&) = default;
};

struct Aperture {
  PointDeg center = PointDeg::Zero();
  double radius_deg = 1.5;

  friend bool operator==(const Aperture&, const Aperture&) = default;
};

struct ClipRegion {
  double moving_area_radius_deg = 15.0;
  std::optional<Aperture> aperture;

  void validate() const;

  friend bool operator==(const ClipRegion&, const ClipRegion&) = default;
};

/// Parameter interval [t0, t1] where origin + t*dir lies in the closed disk.
/// dir must be a unit vector.
template <typename Scalar>
std::optional<std::pair<Scalar, Scalar>> ray_disk_interval(const Point2<Scalar>& origin,
                                                           const Point2<Scalar>& dir,
                                                           const Point2<Scalar>& center,
                                                           Scalar radius) {
  const Point2<Scalar> m = origin - center;
  const Scalar b = m.dot(dir);
  const Scalar c = m.squaredNorm() - radius * radius;
  const Scalar disc = b * b - c;
  if (disc < Scalar(0)) return std::nullopt;
  const Scalar root = std::sqrt(disc);
  return std::make_pair(-b - root, -b + root);
}

/// Visible ray segments around the cursor, ordered by ray index k. Ray k
/// points at angle 2*pi*k/num_rays.
std::vector<Segment> generate_rays(const PointDeg& cursor, const RayConfig& cfg, const ClipRegion& clip);

/// Same as generate_rays but keeps the ray index of each visible segment.
std::vector<std::pair<int, Segment>> generate_indexed_rays(const PointDeg& cursor, const RayConfig& cfg,
                                                           const ClipRegion& clip);

/// Radial projection onto the moving-area boundary when outside it.
template <typename Scalar>
Point2<Scalar> clamp_to_disk(const Point2<Scalar>& p, Scalar radius) {
  const Scalar n = p.norm();
  if (n <= radius) return p;
  return p * (radius / n);
}

inline PointDeg clamp_to_area(const PointDeg& cursor, const ClipRegion& clip) {
  return clamp_to_disk(cursor, clip.moving_area_radius_deg);
}

}  // namespace sunlab
