#include "sunlab/simulator.hpp"

#include <stdexcept>

namespace sunlab {

namespace {

const char* velocity_kind(VelocityLaw::Kind k) { return k == VelocityLaw::Kind::affine ? "affine" : "constant"; }
const char* reading_name(BiasReading r) { return r == BiasReading::bias ? "bias" : "raw_estimate"; }
const char* source_name(PerceptionSource s) { return s == PerceptionSource::exact ? "exact" : "rays"; }

const char* gaze_name(GazeScript g) {
  switch (g) {
    case GazeScript::none:
      return "none";
    case GazeScript::target_locked:
      return "target_locked";
    case GazeScript::four_phase_search:
      return "four_phase_search";
  }
  return "none";
}

std::string_view preset_for(Condition c) {
  switch (c) {
    case Condition::cp_fvf:
      return "cp-fvf";
    case Condition::sp_simpvl:
    case Condition::estimation:
      return "sp-simpvl";
    case Condition::sp_pvl:
      return "sp-pvl";
    case Condition::cp_pvl:
      return "cp-pvl";
  }
  return "cp-fvf";
}

Json latency_json(const Latency& l) { return Json{{"mean_ms", l.mean_ms}, {"sd_ms", l.sd_ms}}; }

void read_latency(const Json& j, Latency& l) {
  l.mean_ms = j.value("mean_ms", l.mean_ms);
  l.sd_ms = j.value("sd_ms", l.sd_ms);
}

}  // namespace

Json to_json(const AgentModel& a) {
  Json j;
  j["condition"] = std::string(to_string(a.condition));
  j["perception_source"] = source_name(a.source);
  j["visible_radius_deg"] = a.visible_radius_deg ? Json(*a.visible_radius_deg) : Json(nullptr);

  Json p;
  p["distance_bias"] = Json{{"slope", a.perception.bias_slope},
                            {"intercept_deg", a.perception.bias_intercept_deg},
                            {"reading", reading_name(a.perception.reading)}};
  Json knots = Json::array();
  for (const auto& [d, sd] : a.perception.distance_noise_knots) knots.push_back(Json::array({d, sd}));
  p["distance_noise_sd_deg"] = std::move(knots);
  p["direction_noise_sd_rad"] = Json{{"near", a.perception.direction_noise_near_rad},
                                     {"far", a.perception.direction_noise_far_rad},
                                     {"far_from_deg", a.perception.far_distance_deg}};
  p["reperception_interval_ms"] = a.perception.reperception_interval_ms;
  j["perception"] = std::move(p);

  Json m;
  m["velocity_law"] = Json{{"kind", velocity_kind(a.movement.velocity.kind)},
                           {"slope", a.movement.velocity.slope},
                           {"intercept", a.movement.velocity.intercept},
                           {"constant", a.movement.velocity.constant}};
  m["velocity_jitter_sd"] = a.movement.velocity_jitter_sd;
  m["heading_gain"] = a.movement.heading_gain;
  m["heading_noise_sd_rad"] = a.movement.heading_noise_sd_rad;
  m["min_planned_move_deg"] = a.movement.min_planned_move_deg;
  j["movement"] = std::move(m);

  Json l;
  l["acquisition_ms"] = latency_json(a.latency.acquisition);
  l["keystroke_ms"] = latency_json(a.latency.keystroke);
  if (a.latency.search) {
    const auto& s = *a.latency.search;
    l["search"] = Json{{"base_ms", s.base_ms},
                       {"per_ratio_ms", s.per_ratio_ms},
                       {"log_sd", s.log_sd},
                       {"proximity_ms", s.proximity_ms},
                       {"localization_ms", s.localization_ms}};
  } else {
    l["search"] = nullptr;
  }
  j["latency"] = std::move(l);

  j["gaze_script"] = gaze_name(a.gaze_script);
  j["sample_rate_hz"] = a.sample_rate_hz;
  j["moving_area_radius_deg"] = a.moving_area_radius_deg;
  j["abort_after_ms"] = a.abort_after_ms;
  j["seed"] = seed_to_string(a.seed);
  return j;
}

AgentModel agent_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("agent file: expected a JSON object");
  std::string preset;
  if (doc.contains("preset")) {
    preset = doc.at("preset").get<std::string>();
  } else if (doc.contains("condition")) {
    auto c = parse_condition(doc.at("condition").get<std::string>());
    if (!c) throw std::invalid_argument("agent file: unknown condition");
    preset = std::string(preset_for(*c));
  } else {
    throw std::invalid_argument("agent file: need \"preset\" or \"condition\"");
  }
  AgentModel a = agent_preset(preset);

  if (doc.contains("condition")) {
    auto c = parse_condition(doc.at("condition").get<std::string>());
    if (!c) throw std::invalid_argument("agent file: unknown condition");
    a.condition = *c;
  }
  if (doc.contains("perception_source")) {
    const std::string src = doc.at("perception_source").get<std::string>();
    if (src != "rays" && src != "exact")
      throw std::invalid_argument("agent file: unknown perception_source \"" + src + "\"");
    a.source = src == "rays" ? PerceptionSource::rays : PerceptionSource::exact;
  }
  if (doc.contains("visible_radius_deg")) {
    const Json& v = doc.at("visible_radius_deg");
    if (v.is_null())
      a.visible_radius_deg.reset();
    else
      a.visible_radius_deg = v.get<double>();
  }
  if (doc.contains("perception")) {
    const Json& p = doc.at("perception");
    if (p.contains("distance_bias")) {
      const Json& b = p.at("distance_bias");
      a.perception.bias_slope = b.value("slope", a.perception.bias_slope);
      a.perception.bias_intercept_deg = b.value("intercept_deg", a.perception.bias_intercept_deg);
      if (b.contains("reading"))
        a.perception.reading =
            b.at("reading").get<std::string>() == "raw_estimate" ? BiasReading::raw_estimate : BiasReading::bias;
    }
    if (p.contains("distance_noise_sd_deg")) {
      a.perception.distance_noise_knots.clear();
      for (const auto& k : p.at("distance_noise_sd_deg"))
        a.perception.distance_noise_knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    }
    if (p.contains("direction_noise_sd_rad")) {
      const Json& d = p.at("direction_noise_sd_rad");
      a.perception.direction_noise_near_rad = d.value("near", a.perception.direction_noise_near_rad);
      a.perception.direction_noise_far_rad = d.value("far", a.perception.direction_noise_far_rad);
      a.perception.far_distance_deg = d.value("far_from_deg", a.perception.far_distance_deg);
    }
    a.perception.reperception_interval_ms = p.value("reperception_interval_ms", a.perception.reperception_interval_ms);
  }
  if (doc.contains("movement")) {
    const Json& m = doc.at("movement");
    if (m.contains("velocity_law")) {
      const Json& v = m.at("velocity_law");
      if (v.contains("kind"))
        a.movement.velocity.kind =
            v.at("kind").get<std::string>() == "constant" ? VelocityLaw::Kind::constant : VelocityLaw::Kind::affine;
      a.movement.velocity.slope = v.value("slope", a.movement.velocity.slope);
      a.movement.velocity.intercept = v.value("intercept", a.movement.velocity.intercept);
      a.movement.velocity.constant = v.value("constant", a.movement.velocity.constant);
    }
    a.movement.velocity_jitter_sd = m.value("velocity_jitter_sd", a.movement.velocity_jitter_sd);
    a.movement.heading_gain = m.value("heading_gain", a.movement.heading_gain);
    a.movement.heading_noise_sd_rad = m.value("heading_noise_sd_rad", a.movement.heading_noise_sd_rad);
    a.movement.min_planned_move_deg = m.value("min_planned_move_deg", a.movement.min_planned_move_deg);
  }
  if (doc.contains("latency")) {
    const Json& l = doc.at("latency");
    if (l.contains("acquisition_ms")) read_latency(l.at("acquisition_ms"), a.latency.acquisition);
    if (l.contains("keystroke_ms")) read_latency(l.at("keystroke_ms"), a.latency.keystroke);
    if (l.contains("search")) {
      const Json& s = l.at("search");
      if (s.is_null()) {
        a.latency.search.reset();
      } else {
        SearchModel m = a.latency.search.value_or(SearchModel{});
        m.base_ms = s.value("base_ms", m.base_ms);
        m.per_ratio_ms = s.value("per_ratio_ms", m.per_ratio_ms);
        m.log_sd = s.value("log_sd", m.log_sd);
        m.proximity_ms = s.value("proximity_ms", m.proximity_ms);
        m.localization_ms = s.value("localization_ms", m.localization_ms);
        a.latency.search = m;
      }
    }
  }
  if (doc.contains("gaze_script")) {
    const std::string g = doc.at("gaze_script").get<std::string>();
    if (g == "none")
      a.gaze_script = GazeScript::none;
    else if (g == "target_locked")
      a.gaze_script = GazeScript::target_locked;
    else if (g == "four_phase_search")
      a.gaze_script = GazeScript::four_phase_search;
    else
      throw std::invalid_argument("agent file: unknown gaze_script \"" + g + "\"");
  }
  a.sample_rate_hz = doc.value("sample_rate_hz", a.sample_rate_hz);
  a.moving_area_radius_deg = doc.value("moving_area_radius_deg", a.moving_area_radius_deg);
  a.abort_after_ms = doc.value("abort_after_ms", a.abort_after_ms);
  if (doc.contains("seed")) {
    const Json& s = doc.at("seed");
    if (s.is_string()) {
      auto v = parse_seed(s.get<std::string>());
      if (!v) throw std::invalid_argument("agent file: seed must be a decimal 64-bit value");
      a.seed = *v;
    } else {
      a.seed = s.get<std::uint64_t>();
    }
  }
  a.validate();
  return a;
}

}  // namespace sunlab
