#include "sunlab/simulator.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sunlab {

namespace {

constexpr std::string_view kSyntheticTimestamp = "1970-01-01T00:00:00Z";

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("agent model: " + what);
}

PointDeg unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Offset from the cursor to where the agent believes the target is.
PointDeg perceive_offset(const AgentModel& agent, const PointDeg& cursor, RandomStream& rng) {
  const PointDeg to_target = -cursor;
  const double distance = to_target.norm();
  if (agent.source == PerceptionSource::exact) return to_target;
  if (agent.visible_radius_deg && distance <= *agent.visible_radius_deg) return to_target;

  const PerceptionModel& p = agent.perception;
  const double angle = std::atan2(to_target.y(), to_target.x()) + rng.normal(0.0, p.direction_noise_sd(distance));
  const double estimate = p.mean_estimate(distance) + rng.normal(0.0, p.distance_noise_sd(distance));
  return std::max(estimate, agent.movement.min_planned_move_deg) * unit(angle);
}

double draw_acquisition(const AgentModel& agent, double distance_deg, RandomStream& rng) {
  const LatencyModel& lat = agent.latency;
  if (lat.search) {
    const SearchModel& s = *lat.search;
    const double vf = agent.visible_radius_deg.value_or(1.0);
    const double mean = s.base_ms + s.per_ratio_ms * distance_deg / vf;
    // Lognormal with the requested mean.
    return mean * std::exp(s.log_sd * rng.normal() - 0.5 * s.log_sd * s.log_sd);
  }
  return rng.positive_normal(lat.acquisition.mean_ms, lat.acquisition.sd_ms);
}

PointDeg cursor_at(const TrialRecord& trial, std::int64_t t_ms, std::size_t& idx) {
  const auto& s = trial.pointer_samples;
  while (idx + 1 < s.size() && s[idx + 1].t_ms <= t_ms) ++idx;
  return s[idx].pos;
}

std::int64_t trial_end_ms(const TrialRecord& trial) {
  if (!trial.click_events.empty()) return trial.click_events.back().t_ms;
  return trial.pointer_samples.empty() ? 0 : trial.pointer_samples.back().t_ms;
}

}  // namespace

double PerceptionModel::mean_estimate(double distance_deg) const {
  return reading == BiasReading::bias ? distance_deg + bias(distance_deg) : bias(distance_deg);
}

double PerceptionModel::distance_noise_sd(double distance_deg) const {
  const auto& k = distance_noise_knots;
  if (distance_deg <= k.front().first) return k.front().second;
  if (distance_deg >= k.back().first) return k.back().second;
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (distance_deg <= k[i].first) {
      const double w = (distance_deg - k[i - 1].first) / (k[i].first - k[i - 1].first);
      return k[i - 1].second + w * (k[i].second - k[i - 1].second);
    }
  }
  return k.back().second;
}

double PerceptionModel::direction_noise_sd(double distance_deg) const {
  return distance_deg < far_distance_deg ? direction_noise_near_rad : direction_noise_far_rad;
}

void AgentModel::validate() const {
  require(sample_rate_hz > 0, "sample rate must be positive");
  require(moving_area_radius_deg > 0, "moving-area radius must be positive");
  require(abort_after_ms > 0, "abort guard must be positive");
  for (double d : kDistancesDeg) require(movement.velocity.at(d) > 0, "velocity must be positive at every distance");
  require(movement.velocity_jitter_sd >= 0, "velocity jitter must be non-negative");
  require(movement.heading_gain > 0 && movement.heading_gain <= 1, "heading gain must be in (0, 1]");
  require(movement.heading_noise_sd_rad >= 0, "heading noise must be non-negative");
  require(movement.min_planned_move_deg > 0, "minimum planned move must be positive");
  require(perception.reperception_interval_ms > 0, "reperception interval must be positive");
  require(perception.direction_noise_near_rad >= 0 && perception.direction_noise_far_rad >= 0,
          "direction noise must be non-negative");
  require(!perception.distance_noise_knots.empty(), "distance-noise knots required");
  for (std::size_t i = 0; i < perception.distance_noise_knots.size(); ++i) {
    require(perception.distance_noise_knots[i].second >= 0, "distance noise must be non-negative");
    if (i > 0)
      require(perception.distance_noise_knots[i].first > perception.distance_noise_knots[i - 1].first,
              "distance-noise knots must be increasing");
  }
  require(latency.acquisition.mean_ms > 0 && latency.acquisition.sd_ms >= 0, "acquisition latency must be positive");
  require(latency.keystroke.mean_ms > 0 && latency.keystroke.sd_ms >= 0, "keystroke latency must be positive");
  if (visible_radius_deg) require(*visible_radius_deg > 0, "visible radius must be positive");

  switch (condition) {
    case Condition::cp_fvf:
      require(source == PerceptionSource::exact, "cp-fvf agents see the cursor directly");
      break;
    case Condition::sp_simpvl:
    case Condition::sp_pvl:
      require(source == PerceptionSource::rays, "sunny-pointer agents perceive through the ray field");
      require(visible_radius_deg.has_value(), "sunny-pointer agents need a visible radius");
      break;
    case Condition::cp_pvl:
      require(latency.search.has_value(), "cp-pvl agents need a search model");
      require(visible_radius_deg.has_value(), "cp-pvl agents need a visual-field radius");
      break;
    case Condition::estimation:
      require(source == PerceptionSource::rays, "estimation agents perceive through the ray field");
      break;
  }
}

AgentModel agent_preset(std::string_view name, std::uint64_t seed) {
  AgentModel a;
  a.seed = seed;
  if (name == "cp-fvf") {
    a.condition = Condition::cp_fvf;
    a.source = PerceptionSource::exact;
    a.movement.velocity = {VelocityLaw::Kind::affine, 0.71, 13.0, 12.0};
    a.latency.acquisition = {320.0, 60.0};
    a.latency.keystroke = {410.0, 80.0};
    a.gaze_script = GazeScript::none;
  } else if (name == "sp-simpvl") {
    a.condition = Condition::sp_simpvl;
    a.source = PerceptionSource::rays;
    a.visible_radius_deg = 1.5;
    a.movement.velocity = {VelocityLaw::Kind::constant, 0.71, 13.0, 12.0};
    // Steering from the ray field; sets the extra path over cp-fvf to about 0.7 deg.
    a.movement.heading_noise_sd_rad = 0.29;
    a.latency.acquisition = {390.0, 60.0};
    a.latency.keystroke = {500.0, 80.0};
    a.gaze_script = GazeScript::target_locked;
  } else if (name == "sp-pvl") {
    a.condition = Condition::sp_pvl;
    a.source = PerceptionSource::rays;
    a.visible_radius_deg = 3.5;
    a.movement.velocity = {VelocityLaw::Kind::affine, 0.6, 4.0, 12.0};
    a.movement.heading_noise_sd_rad = 0.29;
    a.latency.acquisition = {500.0, 100.0};
    a.latency.keystroke = {500.0, 100.0};
    a.gaze_script = GazeScript::target_locked;
  } else if (name == "cp-pvl") {
    a.condition = Condition::cp_pvl;
    a.source = PerceptionSource::exact;
    a.visible_radius_deg = 3.5;
    a.movement.velocity = {VelocityLaw::Kind::constant, 0.71, 13.0, 10.0};
    a.latency.search = SearchModel{};
    a.latency.acquisition = {1500.0, 500.0};
    a.latency.keystroke = {500.0, 100.0};
    a.gaze_script = GazeScript::four_phase_search;
  } else {
    std::string valid;
    for (auto p : kAgentPresets) valid += (valid.empty() ? "" : ", ") + std::string(p);
    throw std::invalid_argument("unknown agent preset \"" + std::string(name) + "\" (expected one of: " + valid + ")");
  }
  return a;
}

ClipRegion session_clip(const AgentModel& agent) {
  ClipRegion clip;
  clip.moving_area_radius_deg = agent.moving_area_radius_deg;
  if (agent.condition == Condition::sp_simpvl && agent.visible_radius_deg)
    clip.aperture = Aperture{PointDeg::Zero(), *agent.visible_radius_deg};
  return clip;
}

TrialRecord simulate_trial(const AgentModel& agent, const TrialSpec& spec) {
  agent.validate();
  RandomStream rng(agent.seed, "trial", static_cast<std::uint64_t>(spec.trial_id));
  const int rate = agent.sample_rate_hz;
  const double period_ms = 1000.0 / rate;
  const PointDeg start = initial_cursor_position(spec);

  const double acquisition_ms = draw_acquisition(agent, spec.distance_deg, rng);
  const double keystroke_ms = rng.positive_normal(agent.latency.keystroke.mean_ms, agent.latency.keystroke.sd_ms);
  const double speed =
      agent.movement.velocity.at(spec.distance_deg) * std::max(0.5, 1.0 + agent.movement.velocity_jitter_sd * rng.normal());
  const double step = speed * period_ms / 1000.0;

  // The first moving sample lands on the tick closest to the drawn acquisition time.
  const std::int64_t onset_tick = std::max<std::int64_t>(0, std::llround(acquisition_ms / period_ms) - 1);

  TrialRecord rec;
  rec.spec = spec;
  const auto emit = [&](std::int64_t k, const PointDeg& p) {
    rec.pointer_samples.push_back({grid_time_ms(k, rate), p});
  };
  for (std::int64_t k = 0; k <= onset_tick; ++k) emit(k, start);

  PointDeg pos = start;
  PointDeg heading = PointDeg::Zero();
  double planned = 0.0;
  double next_perception_ms = static_cast<double>(onset_tick) * period_ms;
  const double tol = 1e-9;

  for (std::int64_t k = onset_tick + 1;; ++k) {
    if (static_cast<double>(grid_time_ms(k, rate)) > agent.abort_after_ms) {
      rec.outcome = Outcome::aborted;
      return rec;
    }
    const double t_prev = static_cast<double>(k - 1) * period_ms;
    if (t_prev + tol >= next_perception_ms) {
      const PointDeg offset = perceive_offset(agent, pos, rng);
      const double len = offset.norm();
      if (len > 0.0) {
        PointDeg desired = offset / len;
        if (agent.movement.heading_noise_sd_rad > 0.0) {
          const double turn = rng.normal(0.0, agent.movement.heading_noise_sd_rad);
          desired = Eigen::Rotation2D<double>(turn) * desired;
        }
        const double g = agent.movement.heading_gain;
        if (heading.isZero() || g >= 1.0) {
          heading = desired;
        } else {
          const PointDeg blended = (1.0 - g) * heading + g * desired;
          heading = blended.norm() > 0.0 ? PointDeg(blended.normalized()) : desired;
        }
      }
      planned = len;
      next_perception_ms = t_prev + agent.perception.reperception_interval_ms;
    }

    double move = step;
    if (planned <= step) {
      move = planned;
      next_perception_ms = t_prev + period_ms;
    }
    pos = clamp_to_disk<double>(pos + move * heading, agent.moving_area_radius_deg);
    planned -= move;
    emit(k, pos);

    if (pos.norm() <= kTargetRadiusDeg) {
      const std::int64_t entry_ms = grid_time_ms(k, rate);
      const std::int64_t click_ms = entry_ms + std::max<std::int64_t>(1, std::llround(keystroke_ms));
      for (std::int64_t j = k + 1; grid_time_ms(j, rate) <= click_ms; ++j) emit(j, pos);
      rec.click_events.push_back({click_ms, pos, MouseButton::left});
      rec.outcome = Outcome::completed;
      return rec;
    }
  }
}

GazePhasePlan plan_search_phases(const AgentModel& agent, const TrialRecord& trial) {
  const SearchModel search = agent.latency.search.value_or(SearchModel{});
  const auto& s = trial.pointer_samples;
  std::int64_t onset = s.empty() ? 0 : s.back().t_ms;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].pos != s.front().pos) {
      onset = s[i - 1].t_ms;
      break;
    }
  }
  GazePhasePlan plan;
  const auto localize = std::min<std::int64_t>(std::llround(search.localization_ms), onset);
  const auto proximity = std::min<std::int64_t>(std::llround(search.proximity_ms), onset - localize);
  plan.proximity_end_ms = proximity;
  plan.scan_end_ms = onset - localize;
  plan.localize_end_ms = onset;
  plan.click_ms = trial_end_ms(trial);
  return plan;
}

std::optional<std::vector<GazeSample>> emit_gaze(const AgentModel& agent, const TrialRecord& trial) {
  if (agent.gaze_script == GazeScript::none || trial.pointer_samples.empty()) return std::nullopt;
  RandomStream rng(agent.seed, "gaze", static_cast<std::uint64_t>(trial.spec.trial_id));
  const std::int64_t end = trial_end_ms(trial);
  const int rate = agent.sample_rate_hz;
  std::vector<GazeSample> out;

  if (agent.gaze_script == GazeScript::target_locked) {
    for (std::int64_t k = 0; grid_time_ms(k, rate) <= end; ++k) {
      PointDeg jitter(rng.normal(0.0, 0.15), rng.normal(0.0, 0.15));
      if (jitter.norm() > 1.0) jitter.normalize();
      out.push_back({grid_time_ms(k, rate), jitter, true});
    }
    return out;
  }

  // Four-phase search: spiral near the target, raster over the moving area,
  // dwell on the found cursor, then follow it to the target.
  const GazePhasePlan plan = plan_search_phases(agent, trial);
  constexpr std::array<double, 7> kRows = {12.0, 8.0, 4.0, 0.0, -4.0, -8.0, -12.0};
  constexpr double kRowSpan = 24.0;
  constexpr double kScanSpeed = 40.0;  // deg/s
  const double spiral_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double scan_start = rng.uniform(0.0, kRowSpan * kRows.size());
  std::size_t idx = 0;

  for (std::int64_t k = 0; grid_time_ms(k, rate) <= end; ++k) {
    const std::int64_t t = grid_time_ms(k, rate);
    const PointDeg cursor = cursor_at(trial, t, idx);
    PointDeg gaze;
    if (t < plan.proximity_end_ms) {
      const double tau = static_cast<double>(t) / static_cast<double>(std::max<std::int64_t>(1, plan.proximity_end_ms));
      gaze = (0.5 + 2.0 * tau) * unit(spiral_phase + 6.0 * std::numbers::pi * tau);
    } else if (t < plan.scan_end_ms) {
      const double s = scan_start + kScanSpeed * static_cast<double>(t - plan.proximity_end_ms) / 1000.0;
      const auto row = static_cast<std::size_t>(std::floor(s / kRowSpan)) % kRows.size();
      const double u = std::fmod(s, kRowSpan);
      gaze = PointDeg(row % 2 == 0 ? -12.0 + u : 12.0 - u, kRows[row]);
    } else if (t < plan.localize_end_ms) {
      gaze = cursor + PointDeg(rng.normal(0.0, 0.3), rng.normal(0.0, 0.3));
    } else {
      gaze = cursor + PointDeg(rng.normal(0.0, 0.2), rng.normal(0.0, 0.2));
    }
    out.push_back({t, gaze, true});
  }
  return out;
}

SessionLog simulate_session(const AgentModel& agent, const TrialSchedule& schedule, const ParticipantProfile& profile) {
  if (schedule.condition != agent.condition)
    throw std::invalid_argument("simulate_session: schedule condition " + std::string(to_string(schedule.condition)) +
                                " does not match agent condition " + std::string(to_string(agent.condition)));
  SessionLog log;
  log.profile = profile;
  log.clip = session_clip(agent);
  log.schedule_seed = schedule.seed;
  log.created_at = std::string(kSyntheticTimestamp);
  log.trials.reserve(schedule.trials.size());
  for (const auto& spec : schedule.trials) {
    TrialRecord rec = simulate_trial(agent, spec);
    rec.gaze_samples = emit_gaze(agent, rec);
    log.trials.push_back(std::move(rec));
  }
  return log;
}

EstimationDraw draw_estimation(const PerceptionModel& perception, const PointDeg& true_pos, RandomStream& rng) {
  const double distance = true_pos.norm();
  const double direction = std::atan2(true_pos.y(), true_pos.x());
  const double estimate = perception.mean_estimate(distance) + rng.normal(0.0, perception.distance_noise_sd(distance));
  const double angle = direction + rng.normal(0.0, perception.direction_noise_sd(distance));
  return {true_pos, estimate * unit(angle)};
}

EstimationDraw simulate_estimation_trial(const AgentModel& agent, const TrialSpec& spec) {
  if (agent.source != PerceptionSource::rays)
    throw std::invalid_argument("simulate_estimation_trial: agent must perceive through the ray field");
  RandomStream rng(agent.seed, "estimation", static_cast<std::uint64_t>(spec.trial_id));
  return draw_estimation(agent.perception, initial_cursor_position(spec), rng);
}

}  // namespace sunlab
