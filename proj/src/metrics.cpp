#include "sunlab/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace sunlab {

void MetricsConfig::validate() const {
  if (!(first_move_threshold_px > 0) || !(target_radius_deg > 0) || !(gaze_radius_deg > 0) || gaze_bins <= 0)
    throw std::invalid_argument("metrics config: all parameters must be positive");
}

namespace {

// Samples at or before the final click.
std::size_t samples_until(const TrialRecord& trial, std::int64_t t_ms) {
  const auto& s = trial.pointer_samples;
  return static_cast<std::size_t>(
      std::upper_bound(s.begin(), s.end(), t_ms, [](std::int64_t t, const PointerSample& p) { return t < p.t_ms; }) -
      s.begin());
}

double polyline_length(const std::vector<PointerSample>& s, std::size_t from, std::size_t to) {
  double sum = 0.0;
  for (std::size_t i = from + 1; i <= to && i < s.size(); ++i) sum += (s[i].pos - s[i - 1].pos).norm();
  return sum;
}

}  // namespace

TimeDecomposition decompose_times(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg) {
  if (trial.outcome != Outcome::completed) throw MetricsError("decompose_times: trial is not completed");
  if (trial.pointer_samples.size() < 2) throw MetricsError("decompose_times: fewer than 2 pointer samples");
  if (trial.click_events.empty()) throw MetricsError("decompose_times: trial has no click");

  TimeDecomposition d;
  d.tct_ms = trial.click_events.back().t_ms;
  const auto& s = trial.pointer_samples;
  const std::size_t n = samples_until(trial, d.tct_ms);
  if (n == 0) throw MetricsError("decompose_times: no pointer sample before the click");

  const double threshold_deg = g.px_to_deg_length(cfg.first_move_threshold_px);
  const PointDeg origin = s.front().pos;
  std::size_t first_move = n;
  for (std::size_t i = 0; i < n; ++i) {
    if ((s[i].pos - origin).norm() > threshold_deg) {
      first_move = i;
      break;
    }
  }
  if (first_move == n) throw MetricsError("decompose_times: no move beyond the first-move threshold before the click");

  const auto inside = [&](std::size_t i) { return s[i].pos.norm() <= cfg.target_radius_deg; };
  std::size_t last_inside = n;
  for (std::size_t i = n; i-- > 0;) {
    if (inside(i)) {
      last_inside = i;
      break;
    }
  }
  if (last_inside == n) throw MetricsError("decompose_times: cursor never inside the target before the click");
  std::size_t run_start = last_inside;
  while (run_start > 0 && inside(run_start - 1)) --run_start;

  d.first_move_index = first_move;
  d.last_reach_index = run_start;
  d.at_ms = s[first_move].t_ms;
  d.mt_ms = std::max(s[run_start].t_ms, d.at_ms) - d.at_ms;
  d.kt_ms = d.tct_ms - d.at_ms - d.mt_ms;
  return d;
}

double path_length(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg) {
  const auto d = decompose_times(trial, g, cfg);
  return polyline_length(trial.pointer_samples, 0, d.last_reach_index);
}

double movement_path_length(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg) {
  const auto d = decompose_times(trial, g, cfg);
  if (d.last_reach_index <= d.first_move_index) return 0.0;
  return polyline_length(trial.pointer_samples, d.first_move_index, d.last_reach_index);
}

double overshoot_length(std::span<const PointDeg> path, const PointDeg& start, const PointDeg& target) {
  const PointDeg axis = start - target;
  const double axis_norm = axis.norm();
  if (path.size() < 2 || axis_norm == 0.0) return 0.0;
  const PointDeg u = axis / axis_norm;
  // Points landing on the target line up to rounding do not count as beyond it.
  constexpr double eps = 1e-9;
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i)
    if ((path[i] - target).dot(u) < -eps) sum += (path[i] - path[i - 1]).norm();
  return sum;
}

double overshoot_path(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg) {
  const auto d = decompose_times(trial, g, cfg);
  std::vector<PointDeg> path;
  path.reserve(d.last_reach_index + 1);
  for (std::size_t i = 0; i <= d.last_reach_index; ++i) path.push_back(trial.pointer_samples[i].pos);
  return overshoot_length(path, trial.pointer_samples.front().pos, PointDeg::Zero());
}

double mean_velocity(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg) {
  const auto d = decompose_times(trial, g, cfg);
  if (d.mt_ms <= 0) throw MetricsError("mean_velocity: movement time is zero");
  return movement_path_length(trial, g, cfg) / (static_cast<double>(d.mt_ms) / 1000.0);
}

TrialMetrics compute_trial_metrics(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg) {
  const auto d = decompose_times(trial, g, cfg);
  const auto& s = trial.pointer_samples;
  TrialMetrics m;
  m.tct_ms = d.tct_ms;
  m.at_ms = d.at_ms;
  m.mt_ms = d.mt_ms;
  m.kt_ms = d.kt_ms;
  m.initial_distance_deg = s.front().pos.norm();
  m.path_length_deg = polyline_length(s, 0, d.last_reach_index);
  m.trajectory_excess_deg = m.path_length_deg - m.initial_distance_deg;

  std::vector<PointDeg> path;
  path.reserve(d.last_reach_index + 1);
  for (std::size_t i = 0; i <= d.last_reach_index; ++i) path.push_back(s[i].pos);
  m.overshoot_path_deg = overshoot_length(path, s.front().pos, PointDeg::Zero());

  if (d.mt_ms > 0) {
    const double moved =
        d.last_reach_index > d.first_move_index ? polyline_length(s, d.first_move_index, d.last_reach_index) : 0.0;
    m.mean_velocity_deg_per_s = moved / (static_cast<double>(d.mt_ms) / 1000.0);
  }
  return m;
}

const char* to_string(GazeCategory c) {
  switch (c) {
    case GazeCategory::on_target:
      return "on_target";
    case GazeCategory::on_cursor:
      return "on_cursor";
    case GazeCategory::elsewhere:
      return "elsewhere";
  }
  return "elsewhere";
}

GazeCategory classify_gaze(const PointDeg& gaze, const PointDeg& cursor, const MetricsConfig& cfg,
                           const PointDeg& target) {
  if ((gaze - target).norm() < cfg.gaze_radius_deg) return GazeCategory::on_target;
  if ((gaze - cursor).norm() < cfg.gaze_radius_deg) return GazeCategory::on_cursor;
  return GazeCategory::elsewhere;
}

GazeProfile gaze_profile(std::span<const TrialRecord> trials, const ScreenGeometry& g, const MetricsConfig& cfg) {
  const auto bins = static_cast<std::size_t>(cfg.gaze_bins);
  std::vector<std::array<double, 3>> sums(bins, {0.0, 0.0, 0.0});
  std::vector<std::size_t> contributors(bins, 0);
  double first_move_sum = 0.0;
  std::size_t used = 0;

  for (const auto& trial : trials) {
    if (!trial.gaze_samples || trial.gaze_samples->empty() || trial.outcome != Outcome::completed) continue;
    const auto d = decompose_times(trial, g, cfg);
    if (d.tct_ms <= 0) continue;
    const double tct = static_cast<double>(d.tct_ms);

    std::vector<std::array<std::size_t, 3>> counts(bins, {0, 0, 0});
    std::size_t cursor_idx = 0;
    const auto& ptr = trial.pointer_samples;
    for (const auto& gs : *trial.gaze_samples) {
      if (!gs.valid || gs.t_ms < 0 || gs.t_ms > d.tct_ms) continue;
      while (cursor_idx + 1 < ptr.size() && ptr[cursor_idx + 1].t_ms <= gs.t_ms) ++cursor_idx;
      const auto bin = std::min(bins - 1, static_cast<std::size_t>(static_cast<double>(gs.t_ms) / tct * bins));
      ++counts[bin][static_cast<std::size_t>(classify_gaze(gs.pos, ptr[cursor_idx].pos, cfg))];
    }

    for (std::size_t b = 0; b < bins; ++b) {
      const std::size_t total = counts[b][0] + counts[b][1] + counts[b][2];
      if (total == 0) continue;
      for (std::size_t c = 0; c < 3; ++c) sums[b][c] += static_cast<double>(counts[b][c]) / total;
      ++contributors[b];
    }
    first_move_sum += static_cast<double>(d.at_ms) / tct;
    ++used;
  }
  if (used == 0) throw MetricsError("gaze_profile: no trial carries gaze data");

  GazeProfile profile;
  profile.trials = used;
  profile.mean_first_move = first_move_sum / static_cast<double>(used);
  profile.bins.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    if (contributors[b] == 0) continue;
    profile.bins[b].defined = true;
    for (std::size_t c = 0; c < 3; ++c) profile.bins[b].proportion[c] = sums[b][c] / contributors[b];
  }
  return profile;
}

DelayDecomposition delay_decomposition(double mean_length_sim, double mean_velocity_sim, double mean_length_base,
                                       double mean_velocity_base) {
  if (!(mean_velocity_sim > 0) || !(mean_velocity_base > 0))
    throw std::invalid_argument("delay_decomposition: velocities must be positive");
  DelayDecomposition d;
  d.delta_mt_ms = 1000.0 * (mean_length_sim / mean_velocity_sim - mean_length_base / mean_velocity_base);
  d.delay_length_ms = 1000.0 * (mean_length_sim - mean_length_base) / mean_velocity_base;
  d.delay_velocity_ms = d.delta_mt_ms - d.delay_length_ms;
  if (d.delta_mt_ms > 0) {
    d.length_fraction = d.delay_length_ms / d.delta_mt_ms;
    d.velocity_fraction = d.delay_velocity_ms / d.delta_mt_ms;
  }
  return d;
}

double vf_idt_ratio(const ParticipantProfile& profile, const TrialSpec& spec) {
  if (!profile.vf_radius_deg) throw std::invalid_argument("vf_idt_ratio: participant has no visual-field radius");
  if (!(spec.distance_deg > 0)) throw std::invalid_argument("vf_idt_ratio: distance must be positive");
  return *profile.vf_radius_deg / spec.distance_deg;
}

}  // namespace sunlab
