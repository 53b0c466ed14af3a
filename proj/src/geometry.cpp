#include "sunlab/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sunlab {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kMaxTangentDeg = 89.0;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void ScreenGeometry::validate() const {
  require(width_px > 0 && height_px > 0, "screen geometry: pixel dimensions must be positive");
  require(width_cm > 0 && height_cm > 0, "screen geometry: physical dimensions must be positive");
  require(viewing_distance_cm > 0, "screen geometry: viewing distance must be positive");
  require(half_height_deg > 0 && half_height_deg < 90, "screen geometry: half_height_deg must be in (0, 90)");
  const double px_aspect = static_cast<double>(width_px) / height_px;
  const double cm_aspect = width_cm / height_cm;
  require(std::abs(px_aspect / cm_aspect - 1.0) <= 0.05,
          "screen geometry: pixel aspect differs from physical aspect by more than 5%");
  const double placement = (height_cm / 2.0) / viewing_distance_cm;
  require(std::abs(placement / std::tan(half_height_deg * kDegToRad) - 1.0) <= 0.02,
          "screen geometry: viewing distance inconsistent with half_height_deg (more than 2%)");
}

PointPx deg_to_px(const PointDeg& p, const ScreenGeometry& g, Projection mode) {
  const double half_px = g.height_px / 2.0;
  PointDeg offset;
  if (mode == Projection::linear) {
    offset = p * (half_px / g.half_height_deg);
  } else {
    if (std::abs(p.x()) > kMaxTangentDeg || std::abs(p.y()) > kMaxTangentDeg)
      throw std::domain_error("deg_to_px: tangent projection undefined beyond 89 degrees");
    const double scale = half_px / std::tan(g.half_height_deg * kDegToRad);
    offset = PointDeg(std::tan(p.x() * kDegToRad), std::tan(p.y() * kDegToRad)) * scale;
  }
  return {g.width_px / 2.0 + offset.x(), g.height_px / 2.0 - offset.y()};
}

PointDeg px_to_deg(const PointPx& px, const ScreenGeometry& g, Projection mode) {
  const double half_px = g.height_px / 2.0;
  const PointDeg offset(px.x() - g.width_px / 2.0, g.height_px / 2.0 - px.y());
  if (mode == Projection::linear) return offset * (g.half_height_deg / half_px);
  const double scale = std::tan(g.half_height_deg * kDegToRad) / half_px;
  return PointDeg(std::atan(offset.x() * scale), std::atan(offset.y() * scale)) / kDegToRad;
}

MouseGain mouse_gain(const ScreenGeometry& g, double travel_cm) {
  if (!(travel_cm > 0)) throw std::invalid_argument("mouse_gain: travel_cm must be positive");
  MouseGain gain{};
  gain.px_per_cm = g.height_px / travel_cm;
  gain.deg_per_cm = 2.0 * g.half_height_deg / travel_cm;
  gain.counts_per_deg = g.px_per_deg();
  gain.equivalent_dpi = gain.px_per_cm * 2.54;
  return gain;
}

void RayConfig::validate() const {
  require(num_rays >= 3, "ray config: num_rays must be at least 3");
  require(start_offset_deg >= 0, "ray config: start_offset_deg must be non-negative");
  require(outer_width_px > 0 && inner_width_px > 0, "ray config: line widths must be positive");
  require(inner_width_px <= outer_width_px, "ray config: inner width exceeds outer width");
  require(opacity >= 0 && opacity <= 1, "ray config: opacity must be in [0, 1]");
  require(!max_length_deg || *max_length_deg > 0, "ray config: max_length_deg must be positive");
}

void ClipRegion::validate() const {
  require(moving_area_radius_deg > 0, "clip region: moving-area radius must be positive");
  if (aperture) {
    require(aperture->radius_deg > 0, "clip region: aperture radius must be positive");
    require(aperture->radius_deg < moving_area_radius_deg, "clip region: aperture not smaller than moving area");
  }
}

std::vector<std::pair<int, Segment>> generate_indexed_rays(const PointDeg& cursor, const RayConfig& cfg,
                                                           const ClipRegion& clip) {
  std::vector<std::pair<int, Segment>> out;
  out.reserve(static_cast<std::size_t>(cfg.num_rays));
  const double step = 2.0 * std::numbers::pi / cfg.num_rays;
  const PointDeg area_center = PointDeg::Zero();

  for (int k = 0; k < cfg.num_rays; ++k) {
    const PointDeg dir(std::cos(step * k), std::sin(step * k));
    double lo = cfg.start_offset_deg;
    double hi = cfg.max_length_deg ? cfg.start_offset_deg + *cfg.max_length_deg
                                   : std::numeric_limits<double>::infinity();

    const auto area = ray_disk_interval(cursor, dir, area_center, clip.moving_area_radius_deg);
    if (!area) continue;
    lo = std::max(lo, area->first);
    hi = std::min(hi, area->second);

    if (clip.aperture) {
      const auto hole = ray_disk_interval(cursor, dir, clip.aperture->center, clip.aperture->radius_deg);
      if (!hole) continue;
      lo = std::max(lo, hole->first);
      hi = std::min(hi, hole->second);
    }
    if (!(hi > lo)) continue;
    out.emplace_back(k, Segment{cursor + lo * dir, cursor + hi * dir});
  }
  return out;
}

std::vector<Segment> generate_rays(const PointDeg& cursor, const RayConfig& cfg, const ClipRegion& clip) {
  std::vector<Segment> out;
  for (auto& [k, seg] : generate_indexed_rays(cursor, cfg, clip)) out.push_back(seg);
  return out;
}

}  // namespace sunlab
