#pragma once

#include "sunlab/protocol.hpp"
#include "sunlab/session.hpp"
#include "sunlab/simulator.hpp"

#include <string>
#include <vector>

namespace sunlab::testing {

inline SessionLog simulated_log(std::string_view preset, std::uint64_t seed, std::string participant = "p001") {
  AgentModel agent = agent_preset(preset, seed);
  ParticipantProfile profile;
  profile.participant_id = std::move(participant);
  profile.kind = ParticipantKind::synthetic;
  if (agent.condition == Condition::sp_pvl || agent.condition == Condition::cp_pvl)
    profile.vf_radius_deg = agent.visible_radius_deg;
  return simulate_session(agent, generate_schedule(agent.condition, seed + 1000), profile);
}

// Trial from a list of positions sampled every period_ms starting at t=0,
// with a left click at click_ms at the last position.
inline TrialRecord trial_from_path(const std::vector<PointDeg>& path, double period_ms, std::int64_t click_ms) {
  TrialRecord t;
  t.spec.distance_deg = path.front().norm();
  for (std::size_t i = 0; i < path.size(); ++i)
    t.pointer_samples.push_back({static_cast<std::int64_t>(std::llround(i * period_ms)), path[i]});
  t.click_events.push_back({click_ms, path.back(), MouseButton::left});
  return t;
}

}  // namespace sunlab::testing
