#include "sunlab/protocol.hpp"

#include "sunlab/random.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace sunlab {

namespace {

constexpr std::array<std::string_view, 5> kConditionNames = {"cp-pvl", "sp-pvl", "cp-fvf", "sp-simpvl",
                                                             "estimation"};

}  // namespace

std::string_view to_string(Condition c) { return kConditionNames[static_cast<std::size_t>(c)]; }

std::optional<Condition> parse_condition(std::string_view name) {
  for (std::size_t i = 0; i < kConditionNames.size(); ++i)
    if (kConditionNames[i] == name) return static_cast<Condition>(i);
  return std::nullopt;
}

std::string condition_names() {
  std::string out;
  for (auto name : kConditionNames) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

bool is_protocol_distance(double distance_deg) {
  for (double d : kDistancesDeg)
    if (d == distance_deg) return true;
  return false;
}

TrialSchedule generate_schedule(Condition condition, std::uint64_t seed) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const std::string purpose = "schedule/" + std::string(to_string(condition));
  RandomStream stream(seed, purpose);

  TrialSchedule schedule;
  schedule.condition = condition;
  schedule.seed = seed;
  schedule.exercise_id = std::string(to_string(condition)) + "-" + std::to_string(seed);
  schedule.trials.reserve(kTrialsPerExercise);

  for (double distance : kDistancesDeg) {
    const double base = stream.uniform(0.0, kTwoPi);
    for (int k = 0; k < kAnglesPerDistance; ++k) {
      double angle = std::fmod(base + k * std::numbers::pi / 3.0, kTwoPi);
      if (angle >= kTwoPi) angle -= kTwoPi;
      TrialSpec spec;
      spec.condition = condition;
      spec.distance_deg = distance;
      spec.angle_rad = angle;
      schedule.trials.push_back(spec);
    }
  }

  // Fisher-Yates, same stream.
  for (std::size_t i = schedule.trials.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(stream.below(i + 1));
    std::swap(schedule.trials[i], schedule.trials[j]);
  }

  for (std::size_t i = 0; i < schedule.trials.size(); ++i) {
    schedule.trials[i].trial_id = static_cast<int>(i);
    schedule.trials[i].seed = derive_seed(seed, purpose + "/trial", i);
  }
  return schedule;
}

}  // namespace sunlab
