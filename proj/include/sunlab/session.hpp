#pragma once

// Session data model shared by the simulator, the analysis pipeline and the
// browser experiment: one JSON document per session (".session.json"),
// newline-delimited documents for corpora (".sessions.jsonl").

#include "sunlab/geometry.hpp"
#include "sunlab/protocol.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sunlab {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr double kTargetRadiusDeg = 0.5;

enum class Laterality { right, left, ambidextrous, unknown };
enum class VisionDisorder { rp, gl, none, other };
enum class ParticipantKind { human, synthetic };
enum class MouseButton { left, middle, right };
enum class Outcome { completed, aborted };

struct ParticipantProfile {
  std::string participant_id;
  std::optional<double> vf_radius_deg;
  std::optional<double> acuity;
  Laterality laterality = Laterality::unknown;
  VisionDisorder vision_disorder = VisionDisorder::none;
  std::optional<double> self_rated_mouse_skill;
  ParticipantKind kind = ParticipantKind::human;

  friend bool operator==(const ParticipantProfile&, const ParticipantProfile&) = default;
};

struct PointerSample {
  std::int64_t t_ms = 0;
  PointDeg pos = PointDeg::Zero();

  friend bool operator==(const PointerSample&, const PointerSample&) = default;
};

struct GazeSample {
  std::int64_t t_ms = 0;
  PointDeg pos = PointDeg::Zero();
  bool valid = true;

  friend bool operator==(const GazeSample&, const GazeSample&) = default;
};

struct ClickEvent {
  std::int64_t t_ms = 0;
  PointDeg pos = PointDeg::Zero();
  MouseButton button = MouseButton::left;

  friend bool operator==(const ClickEvent&, const ClickEvent&) = default;
};

struct TrialRecord {
  TrialSpec spec;
  std::vector<PointerSample> pointer_samples;
  std::optional<std::vector<GazeSample>> gaze_samples;
  std::vector<ClickEvent> click_events;
  Outcome outcome = Outcome::completed;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct SessionLog {
  std::string schema_version{kSchemaVersion};
  ParticipantProfile profile;
  ScreenGeometry geometry;
  RayConfig ray_config;
  ClipRegion clip;
  std::uint64_t schedule_seed = 0;
  std::vector<TrialRecord> trials;
  std::string created_at;

  friend bool operator==(const SessionLog&, const SessionLog&) = default;
};

enum class SessionErrorKind { malformed_json, schema, unknown_version, invariant };

const char* to_string(SessionErrorKind k);

/// Validation failure. path() is a JSON pointer to the offending value.
class SessionError : public std::runtime_error {
 public:
  SessionError(SessionErrorKind kind, std::string path, const std::string& message);

  SessionErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  SessionErrorKind kind_;
  std::string path_;
  std::string detail_;
};

/// Throws SessionError for the first violated invariant.
void validate(const SessionLog& log);

Json to_json(const SessionLog& log);
SessionLog session_from_json(const Json& doc);

/// Validates, then writes canonical UTF-8 JSON (no trailing newline).
std::string serialize(const SessionLog& log);
/// Parses and fully validates.
SessionLog parse(std::string_view text);

std::string serialize_corpus(std::span<const SessionLog> logs);
/// One document per non-blank line. Errors carry a "/<line index>" prefix.
std::vector<SessionLog> parse_corpus(std::string_view text);

// Building blocks reused by the service and the report writer.
Json to_json(const ScreenGeometry& g);
Json to_json(const RayConfig& cfg);
Json to_json(const ClipRegion& clip);
Json to_json(const TrialSpec& spec);
Json to_json(const TrialSchedule& schedule);
Json point_json(const PointDeg& p);
TrialSchedule schedule_from_json(const Json& doc);

std::string seed_to_string(std::uint64_t seed);
std::optional<std::uint64_t> parse_seed(std::string_view text);

/// Timestamped position with fractional milliseconds, as captured at display
/// refresh rate.
struct TimedPoint {
  double t_ms = 0.0;
  PointDeg pos = PointDeg::Zero();
};

/// Linear interpolation onto the grid t_k = k * 1000 / rate_hz ms. The first
/// and last input samples are kept as-is; grid points strictly between them
/// are interpolated. Throws std::invalid_argument with fewer than 2 samples.
std::vector<TimedPoint> resample_uniform(std::span<const TimedPoint> samples, double rate_hz = 33.0);

/// Millisecond timestamp of grid sample k at rate_hz, rounded half up in
/// integer arithmetic so that long runs do not drift.
std::int64_t grid_time_ms(std::int64_t k, int rate_hz = 33);

/// Rounds timestamps to integer milliseconds. Samples whose rounded time
/// collides with the previous one are dropped.
std::vector<PointerSample> to_pointer_samples(std::span<const TimedPoint> samples);

}  // namespace sunlab
