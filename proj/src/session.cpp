#include "sunlab/session.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace sunlab {

SessionError::SessionError(SessionErrorKind kind, std::string path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      kind_(kind),
      path_(std::move(path)),
      detail_(message) {}

const char* to_string(SessionErrorKind k) {
  switch (k) {
    case SessionErrorKind::malformed_json: return "malformed_json";
    case SessionErrorKind::schema: return "schema";
    case SessionErrorKind::unknown_version: return "unknown_version";
    case SessionErrorKind::invariant: return "invariant";
  }
  return "unknown";
}

namespace {

constexpr std::array<std::string_view, 4> kLaterality = {"right", "left", "ambidextrous", "unknown"};
constexpr std::array<std::string_view, 4> kDisorder = {"RP", "GL", "none", "other"};
constexpr std::array<std::string_view, 2> kKind = {"human", "synthetic"};
constexpr std::array<std::string_view, 3> kButton = {"left", "middle", "right"};
constexpr std::array<std::string_view, 2> kOutcome = {"completed", "aborted"};

template <typename E, std::size_t N>
std::string_view enum_name(E value, const std::array<std::string_view, N>& names) {
  return names[static_cast<std::size_t>(value)];
}

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw SessionError(SessionErrorKind::schema, path, msg);
}

[[noreturn]] void invariant_error(const std::string& path, const std::string& msg) {
  throw SessionError(SessionErrorKind::invariant, path, msg);
}

std::string join(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string join(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

// Typed access to a JSON object with the path kept for error messages.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) schema_error(path_, "expected an object");
  }

  const std::string& path() const { return path_; }

  bool has(std::string_view key) const { return node_.contains(key); }

  const Json& at(std::string_view key) const {
    auto it = node_.find(key);
    if (it == node_.end()) schema_error(join(path_, key), "required field missing");
    return *it;
  }

  Reader object(std::string_view key) const { return Reader(at(key), join(path_, key)); }

  double number(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number()) schema_error(join(path_, key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) schema_error(join(path_, key), "expected a finite number");
    return d;
  }

  std::optional<double> optional_number(std::string_view key) const {
    if (!has(key) || at(key).is_null()) return std::nullopt;
    return number(key);
  }

  std::int64_t integer(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number_integer()) schema_error(join(path_, key), "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      schema_error(join(path_, key), "integer out of range");
    return v.get<std::int64_t>();
  }

  std::string string(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_string()) schema_error(join(path_, key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_boolean()) schema_error(join(path_, key), "expected a boolean");
    return v.get<bool>();
  }

  std::uint64_t seed(std::string_view key) const {
    const Json& v = at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    if (v.is_string()) {
      if (auto s = parse_seed(v.get<std::string>())) return *s;
    }
    schema_error(join(path_, key), "expected a 64-bit unsigned seed (decimal string or integer)");
  }

  template <typename E, std::size_t N>
  E choice(std::string_view key, const std::array<std::string_view, N>& names) const {
    const std::string s = string(key);
    for (std::size_t i = 0; i < N; ++i)
      if (names[i] == s) return static_cast<E>(i);
    std::string valid;
    for (auto n : names) valid += (valid.empty() ? "" : ", ") + std::string(n);
    schema_error(join(path_, key), "unknown value \"" + s + "\" (expected one of: " + valid + ")");
  }

  const Json& array(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_array()) schema_error(join(path_, key), "expected an array");
    return v;
  }

 private:
  const Json& node_;
  std::string path_;
};

PointDeg read_point(const Json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
    schema_error(path, "expected a point [x_deg, y_deg]");
  const PointDeg p(node[0].get<double>(), node[1].get<double>());
  if (!p.allFinite()) schema_error(path, "point coordinates must be finite");
  return p;
}

Rgba read_color(const Json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 4) schema_error(path, "expected a color [r, g, b, a]");
  std::array<std::uint8_t, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!node[i].is_number_integer() || node[i].get<std::int64_t>() < 0 || node[i].get<std::int64_t>() > 255)
      schema_error(join(path, i), "color channel must be an integer in [0, 255]");
    c[i] = static_cast<std::uint8_t>(node[i].get<std::int64_t>());
  }
  return {c[0], c[1], c[2], c[3]};
}

Json color_json(const Rgba& c) { return Json::array({c.r, c.g, c.b, c.a}); }

ParticipantProfile read_profile(const Reader& r) {
  ParticipantProfile p;
  p.participant_id = r.string("participant_id");
  p.vf_radius_deg = r.optional_number("vf_radius_deg");
  p.acuity = r.optional_number("acuity");
  p.laterality = r.choice<Laterality>("laterality", kLaterality);
  p.vision_disorder = r.choice<VisionDisorder>("vision_disorder", kDisorder);
  p.self_rated_mouse_skill = r.optional_number("self_rated_mouse_skill");
  p.kind = r.choice<ParticipantKind>("kind", kKind);
  return p;
}

ScreenGeometry read_geometry(const Reader& r) {
  ScreenGeometry g;
  const auto px = [&](std::string_view key) {
    const std::int64_t v = r.integer(key);
    if (v <= 0 || v > 1'000'000) invariant_error(join(r.path(), key), "pixel dimension must be positive");
    return static_cast<int>(v);
  };
  g.width_px = px("width_px");
  g.height_px = px("height_px");
  g.width_cm = r.number("width_cm");
  g.height_cm = r.number("height_cm");
  g.viewing_distance_cm = r.number("viewing_distance_cm");
  g.half_height_deg = r.number("half_height_deg");
  return g;
}

RayConfig read_ray_config(const Reader& r) {
  RayConfig c;
  const std::int64_t n = r.integer("num_rays");
  if (n < 0 || n > 100000) invariant_error(join(r.path(), "num_rays"), "num_rays out of range");
  c.num_rays = static_cast<int>(n);
  c.start_offset_deg = r.number("start_offset_deg");
  c.outer_color = read_color(r.at("outer_color"), join(r.path(), "outer_color"));
  c.inner_color = read_color(r.at("inner_color"), join(r.path(), "inner_color"));
  c.outer_width_px = r.number("outer_width_px");
  c.inner_width_px = r.number("inner_width_px");
  c.opacity = r.number("opacity");
  const Json& len = r.at("max_length_deg");
  if (len.is_string() && len.get<std::string>() == "to-edge") {
    c.max_length_deg.reset();
  } else {
    c.max_length_deg = r.number("max_length_deg");
  }
  return c;
}

ClipRegion read_clip(const Reader& r) {
  ClipRegion c;
  c.moving_area_radius_deg = r.number("moving_area_radius_deg");
  if (r.has("aperture") && !r.at("aperture").is_null()) {
    Reader a = r.object("aperture");
    Aperture ap;
    ap.center = read_point(a.at("center"), join(a.path(), "center"));
    ap.radius_deg = a.number("radius_deg");
    c.aperture = ap;
  }
  return c;
}

TrialSpec read_spec(const Reader& r) {
  TrialSpec s;
  const std::int64_t id = r.integer("trial_id");
  if (id < 0 || id > 1'000'000) invariant_error(join(r.path(), "trial_id"), "trial_id out of range");
  s.trial_id = static_cast<int>(id);
  const std::string cond = r.string("condition");
  auto c = parse_condition(cond);
  if (!c) schema_error(join(r.path(), "condition"), "unknown condition \"" + cond + "\" (expected one of: " +
                                                        condition_names() + ")");
  s.condition = *c;
  s.distance_deg = r.number("distance_deg");
  s.angle_rad = r.number("angle_rad");
  s.seed = r.seed("seed");
  return s;
}

TrialRecord read_trial(const Reader& r) {
  TrialRecord t;
  t.spec = read_spec(r.object("spec"));
  const Json& samples = r.array("pointer_samples");
  const std::string sp = join(r.path(), "pointer_samples");
  t.pointer_samples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Reader s(samples[i], join(sp, i));
    t.pointer_samples.push_back({s.integer("t_ms"), read_point(s.at("pos"), join(s.path(), "pos"))});
  }
  if (r.has("gaze_samples") && !r.at("gaze_samples").is_null()) {
    const Json& gaze = r.array("gaze_samples");
    const std::string gp = join(r.path(), "gaze_samples");
    std::vector<GazeSample> out;
    out.reserve(gaze.size());
    for (std::size_t i = 0; i < gaze.size(); ++i) {
      Reader s(gaze[i], join(gp, i));
      out.push_back({s.integer("t_ms"), read_point(s.at("pos"), join(s.path(), "pos")), s.boolean("valid")});
    }
    t.gaze_samples = std::move(out);
  }
  const Json& clicks = r.array("click_events");
  const std::string cp = join(r.path(), "click_events");
  for (std::size_t i = 0; i < clicks.size(); ++i) {
    Reader s(clicks[i], join(cp, i));
    t.click_events.push_back({s.integer("t_ms"), read_point(s.at("pos"), join(s.path(), "pos")),
                              s.choice<MouseButton>("button", kButton)});
  }
  t.outcome = r.choice<Outcome>("outcome", kOutcome);
  return t;
}

void check_point_range(const PointDeg& p, const std::string& path) {
  if (!p.allFinite() || std::abs(p.x()) > 90.0 || std::abs(p.y()) > 90.0)
    invariant_error(path, "position must be finite with |x|, |y| <= 90 degrees");
}

void check_trial(const TrialRecord& t, const std::string& path, const TrialSchedule& schedule) {
  const std::string spec_path = join(path, "spec");
  const TrialSpec& s = t.spec;
  if (!is_protocol_distance(s.distance_deg))
    invariant_error(join(spec_path, "distance_deg"), "distance must be one of 3.5, 7, 10.5, 14");
  if (!(s.angle_rad >= 0.0 && s.angle_rad < 2.0 * std::numbers::pi))
    invariant_error(join(spec_path, "angle_rad"), "angle must be in [0, 2*pi)");
  if (s.condition != schedule.condition)
    invariant_error(join(spec_path, "condition"), "condition differs from the session's other trials");
  if (s.trial_id >= static_cast<int>(schedule.trials.size()))
    invariant_error(join(spec_path, "trial_id"), "trial_id outside the 24-trial schedule");
  const TrialSpec& planned = schedule.trials[static_cast<std::size_t>(s.trial_id)];
  if (planned.distance_deg != s.distance_deg || std::abs(planned.angle_rad - s.angle_rad) > 1e-9 ||
      planned.seed != s.seed)
    invariant_error(spec_path, "trial spec does not match the schedule regenerated from schedule_seed");

  const std::string sp = join(path, "pointer_samples");
  for (std::size_t i = 0; i < t.pointer_samples.size(); ++i) {
    const auto& smp = t.pointer_samples[i];
    if (smp.t_ms < 0) invariant_error(join(join(sp, i), "t_ms"), "timestamp must be non-negative");
    if (i > 0 && smp.t_ms <= t.pointer_samples[i - 1].t_ms)
      invariant_error(join(join(sp, i), "t_ms"), "pointer timestamps not strictly increasing (trial " +
                                                     std::to_string(s.trial_id) + ", sample " + std::to_string(i) +
                                                     ")");
    check_point_range(smp.pos, join(join(sp, i), "pos"));
  }
  if (t.outcome == Outcome::completed && t.pointer_samples.empty())
    invariant_error(sp, "completed trial has no pointer samples");
  if (!t.pointer_samples.empty()) {
    const auto& first = t.pointer_samples.front();
    if (first.t_ms != 0) invariant_error(join(join(sp, 0), "t_ms"), "first pointer sample must be at t=0");
    if ((first.pos - initial_cursor_position(s)).norm() > 1e-6)
      invariant_error(join(join(sp, 0), "pos"), "first pointer sample differs from the initial cursor position");
  }

  if (t.gaze_samples) {
    const std::string gp = join(path, "gaze_samples");
    const auto& gaze = *t.gaze_samples;
    for (std::size_t i = 0; i < gaze.size(); ++i) {
      if (gaze[i].t_ms < 0) invariant_error(join(join(gp, i), "t_ms"), "timestamp must be non-negative");
      if (i > 0 && gaze[i].t_ms <= gaze[i - 1].t_ms)
        invariant_error(join(join(gp, i), "t_ms"), "gaze timestamps not strictly increasing");
      check_point_range(gaze[i].pos, join(join(gp, i), "pos"));
    }
  }

  const std::string cp = join(path, "click_events");
  for (std::size_t i = 0; i < t.click_events.size(); ++i) {
    const auto& c = t.click_events[i];
    if (c.t_ms < 0) invariant_error(join(join(cp, i), "t_ms"), "timestamp must be non-negative");
    if (i > 0 && c.t_ms < t.click_events[i - 1].t_ms)
      invariant_error(join(join(cp, i), "t_ms"), "click timestamps decrease");
    check_point_range(c.pos, join(join(cp, i), "pos"));
  }
  if (t.outcome == Outcome::completed) {
    if (t.click_events.empty()) invariant_error(cp, "completed trial has no click");
    const auto& last = t.click_events.back();
    if (last.button != MouseButton::left)
      invariant_error(join(join(cp, t.click_events.size() - 1), "button"), "final click must use the left button");
    if (last.pos.norm() > kTargetRadiusDeg)
      invariant_error(join(join(cp, t.click_events.size() - 1), "pos"), "click off target");
  }
}

}  // namespace

std::string seed_to_string(std::uint64_t seed) { return std::to_string(seed); }

std::optional<std::uint64_t> parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

Json point_json(const PointDeg& p) { return Json::array({p.x(), p.y()}); }

Json to_json(const ScreenGeometry& g) {
  Json j;
  j["width_px"] = g.width_px;
  j["height_px"] = g.height_px;
  j["width_cm"] = g.width_cm;
  j["height_cm"] = g.height_cm;
  j["viewing_distance_cm"] = g.viewing_distance_cm;
  j["half_height_deg"] = g.half_height_deg;
  return j;
}

Json to_json(const RayConfig& c) {
  Json j;
  j["num_rays"] = c.num_rays;
  j["start_offset_deg"] = c.start_offset_deg;
  j["outer_color"] = color_json(c.outer_color);
  j["inner_color"] = color_json(c.inner_color);
  j["outer_width_px"] = c.outer_width_px;
  j["inner_width_px"] = c.inner_width_px;
  j["opacity"] = c.opacity;
  if (c.max_length_deg)
    j["max_length_deg"] = *c.max_length_deg;
  else
    j["max_length_deg"] = "to-edge";
  return j;
}

Json to_json(const ClipRegion& c) {
  Json j;
  j["moving_area_radius_deg"] = c.moving_area_radius_deg;
  if (c.aperture) {
    Json a;
    a["center"] = point_json(c.aperture->center);
    a["radius_deg"] = c.aperture->radius_deg;
    j["aperture"] = a;
  } else {
    j["aperture"] = nullptr;
  }
  return j;
}

Json to_json(const TrialSpec& s) {
  Json j;
  j["trial_id"] = s.trial_id;
  j["condition"] = std::string(to_string(s.condition));
  j["distance_deg"] = s.distance_deg;
  j["angle_rad"] = s.angle_rad;
  j["seed"] = seed_to_string(s.seed);
  return j;
}

Json to_json(const TrialSchedule& schedule) {
  Json j;
  j["exercise_id"] = schedule.exercise_id;
  j["condition"] = std::string(to_string(schedule.condition));
  j["seed"] = seed_to_string(schedule.seed);
  Json trials = Json::array();
  for (const auto& t : schedule.trials) trials.push_back(to_json(t));
  j["trials"] = std::move(trials);
  return j;
}

TrialSchedule schedule_from_json(const Json& doc) {
  Reader r(doc, "");
  TrialSchedule s;
  s.exercise_id = r.string("exercise_id");
  const std::string cond = r.string("condition");
  auto c = parse_condition(cond);
  if (!c) schema_error("/condition", "unknown condition \"" + cond + "\"");
  s.condition = *c;
  s.seed = r.seed("seed");
  const Json& trials = r.array("trials");
  for (std::size_t i = 0; i < trials.size(); ++i) s.trials.push_back(read_spec(Reader(trials[i], join("/trials", i))));
  return s;
}

Json to_json(const SessionLog& log) {
  Json j;
  j["schema_version"] = log.schema_version;

  Json p;
  p["participant_id"] = log.profile.participant_id;
  p["vf_radius_deg"] = log.profile.vf_radius_deg ? Json(*log.profile.vf_radius_deg) : Json(nullptr);
  p["acuity"] = log.profile.acuity ? Json(*log.profile.acuity) : Json(nullptr);
  p["laterality"] = std::string(enum_name(log.profile.laterality, kLaterality));
  p["vision_disorder"] = std::string(enum_name(log.profile.vision_disorder, kDisorder));
  p["self_rated_mouse_skill"] =
      log.profile.self_rated_mouse_skill ? Json(*log.profile.self_rated_mouse_skill) : Json(nullptr);
  p["kind"] = std::string(enum_name(log.profile.kind, kKind));
  j["profile"] = std::move(p);

  j["geometry"] = to_json(log.geometry);
  j["ray_config"] = to_json(log.ray_config);
  j["clip"] = to_json(log.clip);
  j["schedule_seed"] = seed_to_string(log.schedule_seed);

  Json trials = Json::array();
  for (const auto& t : log.trials) {
    Json tj;
    tj["spec"] = to_json(t.spec);
    Json samples = Json::array();
    for (const auto& s : t.pointer_samples) {
      Json sj;
      sj["t_ms"] = s.t_ms;
      sj["pos"] = point_json(s.pos);
      samples.push_back(std::move(sj));
    }
    tj["pointer_samples"] = std::move(samples);
    if (t.gaze_samples) {
      Json gaze = Json::array();
      for (const auto& g : *t.gaze_samples) {
        Json gj;
        gj["t_ms"] = g.t_ms;
        gj["pos"] = point_json(g.pos);
        gj["valid"] = g.valid;
        gaze.push_back(std::move(gj));
      }
      tj["gaze_samples"] = std::move(gaze);
    } else {
      tj["gaze_samples"] = nullptr;
    }
    Json clicks = Json::array();
    for (const auto& c : t.click_events) {
      Json cj;
      cj["t_ms"] = c.t_ms;
      cj["pos"] = point_json(c.pos);
      cj["button"] = std::string(enum_name(c.button, kButton));
      clicks.push_back(std::move(cj));
    }
    tj["click_events"] = std::move(clicks);
    tj["outcome"] = std::string(enum_name(t.outcome, kOutcome));
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);
  j["created_at"] = log.created_at;
  return j;
}

SessionLog session_from_json(const Json& doc) {
  Reader r(doc, "");
  SessionLog log;
  if (!r.has("schema_version")) schema_error("/schema_version", "required field missing");
  log.schema_version = r.string("schema_version");
  if (log.schema_version != kSchemaVersion)
    throw SessionError(SessionErrorKind::unknown_version, "/schema_version",
                       "unknown schema_version \"" + log.schema_version + "\"");
  log.profile = read_profile(r.object("profile"));
  log.geometry = read_geometry(r.object("geometry"));
  log.ray_config = read_ray_config(r.object("ray_config"));
  log.clip = read_clip(r.object("clip"));
  log.schedule_seed = r.seed("schedule_seed");
  const Json& trials = r.array("trials");
  log.trials.reserve(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) log.trials.push_back(read_trial(Reader(trials[i], join("/trials", i))));
  log.created_at = r.string("created_at");
  return log;
}

void validate(const SessionLog& log) {
  if (log.schema_version != kSchemaVersion)
    throw SessionError(SessionErrorKind::unknown_version, "/schema_version",
                       "unknown schema_version \"" + log.schema_version + "\"");

  const auto& p = log.profile;
  if (p.participant_id.empty()) invariant_error("/profile/participant_id", "participant_id must not be empty");
  if (p.vf_radius_deg && !(*p.vf_radius_deg > 0.0 && *p.vf_radius_deg <= 90.0))
    invariant_error("/profile/vf_radius_deg", "vf_radius_deg must be in (0, 90]");
  if (p.acuity && !(*p.acuity > 0.0)) invariant_error("/profile/acuity", "acuity must be positive");
  if (p.self_rated_mouse_skill && !(*p.self_rated_mouse_skill >= 0.0 && *p.self_rated_mouse_skill <= 10.0))
    invariant_error("/profile/self_rated_mouse_skill", "self_rated_mouse_skill must be in [0, 10]");

  try {
    log.geometry.validate();
  } catch (const std::invalid_argument& e) {
    invariant_error("/geometry", e.what());
  }
  try {
    log.ray_config.validate();
  } catch (const std::invalid_argument& e) {
    invariant_error("/ray_config", e.what());
  }
  try {
    log.clip.validate();
  } catch (const std::invalid_argument& e) {
    invariant_error("/clip", e.what());
  }
  if (log.clip.aperture) check_point_range(log.clip.aperture->center, "/clip/aperture/center");

  if (log.trials.empty()) return;
  const Condition condition = log.trials.front().spec.condition;
  const TrialSchedule schedule = generate_schedule(condition, log.schedule_seed);
  std::set<int> seen;
  for (std::size_t i = 0; i < log.trials.size(); ++i) {
    const std::string path = join("/trials", i);
    check_trial(log.trials[i], path, schedule);
    if (!seen.insert(log.trials[i].spec.trial_id).second)
      invariant_error(join(join(path, "spec"), "trial_id"), "duplicate trial_id");
  }
}

std::string serialize(const SessionLog& log) {
  validate(log);
  return to_json(log).dump();
}

SessionLog parse(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SessionError(SessionErrorKind::malformed_json, "", std::string("malformed JSON: ") + e.what());
  }
  SessionLog log = session_from_json(doc);
  validate(log);
  return log;
}

std::string serialize_corpus(std::span<const SessionLog> logs) {
  std::string out;
  for (const auto& log : logs) {
    out += serialize(log);
    out += '\n';
  }
  return out;
}

std::vector<SessionLog> parse_corpus(std::string_view text) {
  std::vector<SessionLog> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(parse(line));
      } catch (const SessionError& e) {
        throw SessionError(e.kind(), "/" + std::to_string(line_no) + e.path(), e.detail());
      }
    }
    ++line_no;
    start = end + 1;
  }
  return out;
}

std::vector<TimedPoint> resample_uniform(std::span<const TimedPoint> samples, double rate_hz) {
  if (samples.size() < 2) throw std::invalid_argument("resample_uniform: need at least 2 samples");
  if (!(rate_hz > 0)) throw std::invalid_argument("resample_uniform: rate must be positive");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].t_ms > samples[i - 1].t_ms))
      throw std::invalid_argument("resample_uniform: timestamps must be strictly increasing");

  const double period = 1000.0 / rate_hz;
  constexpr double kOnGrid = 1e-6;
  const double t0 = samples.front().t_ms;
  const double t1 = samples.back().t_ms;

  std::vector<TimedPoint> out;
  out.push_back(samples.front());
  std::size_t seg = 0;
  for (auto k = static_cast<std::int64_t>(std::floor(t0 / period)) + 1;; ++k) {
    const double t = static_cast<double>(k) * period;
    if (t <= t0 + kOnGrid) continue;
    if (t >= t1 - kOnGrid) break;
    while (samples[seg + 1].t_ms < t - kOnGrid) ++seg;
    if (std::abs(samples[seg + 1].t_ms - t) <= kOnGrid) {
      out.push_back(samples[seg + 1]);
      continue;
    }
    const TimedPoint& a = samples[seg];
    const TimedPoint& b = samples[seg + 1];
    const double w = (t - a.t_ms) / (b.t_ms - a.t_ms);
    out.push_back({t, a.pos + w * (b.pos - a.pos)});
  }
  out.push_back(samples.back());
  return out;
}

std::int64_t grid_time_ms(std::int64_t k, int rate_hz) { return (2 * k * 1000 + rate_hz) / (2 * rate_hz); }

std::vector<PointerSample> to_pointer_samples(std::span<const TimedPoint> samples) {
  std::vector<PointerSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    const auto t = static_cast<std::int64_t>(std::llround(s.t_ms));
    if (!out.empty() && t <= out.back().t_ms) continue;
    out.push_back({t, s.pos});
  }
  return out;
}

}  // namespace sunlab
