#pragma once

// Per-trial derived quantities: acquisition / movement / keystroke time
// decomposition, trajectory length and overshoot, mean velocity, gaze
// categories and normalized-time gaze profiles, and the split of a
// movement-time difference into length and velocity delays.

#include "sunlab/session.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sunlab {

struct MetricsConfig {
  double first_move_threshold_px = 10.0;
  double target_radius_deg = kTargetRadiusDeg;
  double gaze_radius_deg = 2.0;
  int gaze_bins = 100;

  void validate() const;
};

/// Raised when a log is internally inconsistent for analysis purposes
/// (e.g. the cursor never enters the target before the final click).
class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeDecomposition {
  std::int64_t at_ms = 0;
  std::int64_t mt_ms = 0;
  std::int64_t kt_ms = 0;
  std::int64_t tct_ms = 0;
  std::size_t first_move_index = 0;  // first sample beyond the threshold
  std::size_t last_reach_index = 0;  // first sample of the final run inside the target
};

TimeDecomposition decompose_times(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg = {});

/// Total trajectory length from the initial position to the last target reach.
double path_length(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg = {});

/// Trajectory length covered during the movement time (first detected move to
/// last target reach).
double movement_path_length(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg = {});

/// Length of the trajectory segments ending in the half-plane beyond the
/// target, on the far side from the initial cursor position.
double overshoot_path(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg = {});

/// Overshoot over a raw polyline, for a given approach start.
double overshoot_length(std::span<const PointDeg> path, const PointDeg& start, const PointDeg& target);

/// movement_path_length / movement time, in deg/s. Throws MetricsError when mt is 0.
double mean_velocity(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg = {});

struct TrialMetrics {
  std::int64_t tct_ms = 0;
  std::int64_t at_ms = 0;
  std::int64_t mt_ms = 0;
  std::int64_t kt_ms = 0;
  double path_length_deg = 0.0;
  double trajectory_excess_deg = 0.0;
  double overshoot_path_deg = 0.0;
  std::optional<double> mean_velocity_deg_per_s;  // empty when mt = 0
  double initial_distance_deg = 0.0;
};

TrialMetrics compute_trial_metrics(const TrialRecord& trial, const ScreenGeometry& g, const MetricsConfig& cfg = {});

enum class GazeCategory { on_target, on_cursor, elsewhere };

inline constexpr std::array<GazeCategory, 3> kGazeCategories = {GazeCategory::on_target, GazeCategory::on_cursor,
                                                                GazeCategory::elsewhere};

const char* to_string(GazeCategory c);

/// Target first, then cursor, each with a strict < radius test.
GazeCategory classify_gaze(const PointDeg& gaze, const PointDeg& cursor, const MetricsConfig& cfg = {},
                           const PointDeg& target = PointDeg::Zero());

struct GazeProfile {
  struct Bin {
    bool defined = false;
    std::array<double, 3> proportion{};  // indexed by GazeCategory
  };
  std::vector<Bin> bins;
  double mean_first_move = 0.0;  // normalized time of the first detected move
  std::size_t trials = 0;
};

/// Averages per-trial binned category proportions over normalized time
/// [0, 1] (0 = display, 1 = final click). Trials without gaze samples are
/// skipped; throws MetricsError when none carry gaze.
GazeProfile gaze_profile(std::span<const TrialRecord> trials, const ScreenGeometry& g, const MetricsConfig& cfg = {});

struct DelayDecomposition {
  double delta_mt_ms = 0.0;
  double delay_length_ms = 0.0;
  double delay_velocity_ms = 0.0;
  std::optional<double> length_fraction;  // empty when delta_mt <= 0
  std::optional<double> velocity_fraction;
};

/// Lengths in degrees, velocities in deg/s.
DelayDecomposition delay_decomposition(double mean_length_sim, double mean_velocity_sim, double mean_length_base,
                                       double mean_velocity_base);

/// Visual-field radius over initial distance. Throws std::invalid_argument
/// when the profile carries no visual-field radius.
double vf_idt_ratio(const ParticipantProfile& profile, const TrialSpec& spec);

}  // namespace sunlab
