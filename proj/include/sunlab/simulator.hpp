#pragma once

// Synthetic participants. An agent holds still for an acquisition delay, then
// moves at a condition-specific speed toward where it currently perceives the
// target, re-perceiving at a fixed interval, and clicks after a keystroke
// delay once the cursor is inside the target disk. Output is sampled on the
// 33 Hz grid and is a valid session log.

#include "sunlab/random.hpp"
#include "sunlab/session.hpp"

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sunlab {

struct VelocityLaw {
  enum class Kind { affine, constant };
  Kind kind = Kind::affine;
  double slope = 0.71;      // deg/s per deg of initial distance
  double intercept = 13.0;  // deg/s
  double constant = 12.0;   // deg/s

  double at(double distance_deg) const { return kind == Kind::affine ? slope * distance_deg + intercept : constant; }
};

/// How the fitted -0.47 D + 2.95 relation is read.
///  bias:         estimated distance = D + (slope * D + intercept)
///  raw_estimate: estimated distance = slope * D + intercept
enum class BiasReading { bias, raw_estimate };

struct PerceptionModel {
  double bias_slope = -0.47;
  double bias_intercept_deg = 2.95;
  BiasReading reading = BiasReading::bias;
  // Piecewise-linear SD of the perceived distance over D, clamped outside the knots.
  std::vector<std::pair<double, double>> distance_noise_knots = {{3.5, 2.0}, {7.0, 2.4}, {10.5, 2.6}, {14.0, 3.1}};
  double direction_noise_near_rad = std::numbers::pi / 32.0;
  double direction_noise_far_rad = std::numbers::pi / 16.0;
  double far_distance_deg = 12.0;
  double reperception_interval_ms = 150.0;

  double bias(double distance_deg) const { return bias_slope * distance_deg + bias_intercept_deg; }
  double mean_estimate(double distance_deg) const;
  double distance_noise_sd(double distance_deg) const;
  double direction_noise_sd(double distance_deg) const;
};

struct MovementModel {
  VelocityLaw velocity;
  double velocity_jitter_sd = 0.05;  // fraction of the law's speed, drawn once per trial
  double heading_gain = 1.0;         // 1 = turn fully toward each new percept
  double heading_noise_sd_rad = 0.0;  // motor error added to each new heading
  double min_planned_move_deg = 0.25;
};

struct Latency {
  double mean_ms = 0.0;
  double sd_ms = 0.0;
};

/// Cursor search without the ray cue: lognormal delay whose mean grows with
/// the ratio of initial distance to visual-field radius.
struct SearchModel {
  double base_ms = 500.0;
  double per_ratio_ms = 1000.0;
  double log_sd = 0.5;
  double proximity_ms = 600.0;    // spiral around the target
  double localization_ms = 250.0;  // dwell on the found cursor
};

struct LatencyModel {
  Latency acquisition{320.0, 60.0};
  Latency keystroke{410.0, 80.0};
  std::optional<SearchModel> search;
};

enum class GazeScript { none, target_locked, four_phase_search };

/// exact: the agent sees the cursor. rays: it infers the cursor from the
/// ray field, exactly only inside the visible radius around the target.
enum class PerceptionSource { exact, rays };

struct AgentModel {
  Condition condition = Condition::cp_fvf;
  PerceptionSource source = PerceptionSource::exact;
  std::optional<double> visible_radius_deg;  // aperture or residual visual field around the target
  PerceptionModel perception;
  MovementModel movement;
  LatencyModel latency;
  GazeScript gaze_script = GazeScript::none;
  int sample_rate_hz = 33;
  double moving_area_radius_deg = 15.0;
  double abort_after_ms = 60000.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an inconsistent model.
  void validate() const;
};

/// Names accepted by agent_preset.
inline constexpr std::array<std::string_view, 4> kAgentPresets = {"cp-fvf", "sp-simpvl", "sp-pvl", "cp-pvl"};

/// Throws std::invalid_argument for an unknown preset name.
AgentModel agent_preset(std::string_view name, std::uint64_t seed = 0);

Json to_json(const AgentModel& agent);
/// Missing fields keep the values of the preset named by "preset" (or of
/// the condition's preset).
AgentModel agent_from_json(const Json& doc);

/// Clip region a session recorded with this agent displays.
ClipRegion session_clip(const AgentModel& agent);

/// Deterministic in (agent.seed, spec.trial_id).
TrialRecord simulate_trial(const AgentModel& agent, const TrialSpec& spec);

struct GazePhasePlan {
  std::int64_t proximity_end_ms = 0;  // A: spiral around the target
  std::int64_t scan_end_ms = 0;       // B: wide scan of the moving area
  std::int64_t localize_end_ms = 0;   // C: dwell on the cursor; D (tracking) follows until the click
  std::int64_t click_ms = 0;
};

/// Phase boundaries of the four-phase search script for a simulated trial.
GazePhasePlan plan_search_phases(const AgentModel& agent, const TrialRecord& trial);

/// Gaze samples for the agent's script, or empty for GazeScript::none.
std::optional<std::vector<GazeSample>> emit_gaze(const AgentModel& agent, const TrialRecord& trial);

SessionLog simulate_session(const AgentModel& agent, const TrialSchedule& schedule, const ParticipantProfile& profile);

struct EstimationDraw {
  PointDeg true_pos;
  PointDeg estimated_pos;
};

/// One convergence-point estimate for the ray field centered on the trial's
/// initial cursor position, as seen through the aperture at the target.
EstimationDraw simulate_estimation_trial(const AgentModel& agent, const TrialSpec& spec);

/// Draw-level variant used for Monte Carlo checks: caller supplies the stream.
EstimationDraw draw_estimation(const PerceptionModel& perception, const PointDeg& true_pos, RandomStream& rng);

}  // namespace sunlab
