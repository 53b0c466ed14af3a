#pragma once

// Trial protocol: conditions, planned trials, and the seeded 24-trial
// exercise schedule (4 distances x 6 roll angles spaced by pi/3).

#include "sunlab/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sunlab {

enum class Condition { cp_pvl, sp_pvl, cp_fvf, sp_simpvl, estimation };

inline constexpr std::array<Condition, 5> kAllConditions = {Condition::cp_pvl, Condition::sp_pvl, Condition::cp_fvf,
                                                            Condition::sp_simpvl, Condition::estimation};

/// Kebab-case wire name, e.g. "sp-simpvl".
std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view name);
/// Comma-separated list of valid wire names, for usage messages.
std::string condition_names();

inline constexpr std::array<double, 4> kDistancesDeg = {3.5, 7.0, 10.5, 14.0};
inline constexpr int kAnglesPerDistance = 6;
inline constexpr int kTrialsPerExercise = static_cast<int>(kDistancesDeg.size()) * kAnglesPerDistance;

struct TrialSpec {
  int trial_id = 0;
  Condition condition = Condition::cp_fvf;
  double distance_deg = 3.5;
  double angle_rad = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const TrialSpec&, const TrialSpec&) = default;
};

struct TrialSchedule {
  std::string exercise_id;
  Condition condition = Condition::cp_fvf;
  std::uint64_t seed = 0;
  std::vector<TrialSpec> trials;

  friend bool operator==(const TrialSchedule&, const TrialSchedule&) = default;
};

/// Deterministic in (condition, seed). Trial ids are the positions 0..23 in
/// presentation order.
TrialSchedule generate_schedule(Condition condition, std::uint64_t seed);

/// Start position of the cursor; the target sits at the origin.
inline PointDeg initial_cursor_position(const TrialSpec& t) {
  return {t.distance_deg * std::cos(t.angle_rad), t.distance_deg * std::sin(t.angle_rad)};
}

bool is_protocol_distance(double distance_deg);

}  // namespace sunlab
