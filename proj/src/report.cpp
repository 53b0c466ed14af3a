#include "sunlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace sunlab {

namespace fs = std::filesystem;

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load_file(const fs::path& p, bool strict, LoadedInputs& out) {
  const std::string name = p.string();
  try {
    const std::string text = read_file(p);
    if (ends_with(name, ".jsonl")) {
      auto logs = parse_corpus(text);
      for (std::size_t i = 0; i < logs.size(); ++i)
        out.sessions.push_back({name + "#" + std::to_string(i), std::move(logs[i])});
    } else {
      out.sessions.push_back({name, parse(text)});
    }
  } catch (const std::exception& e) {
    if (strict) throw std::runtime_error(name + ": " + e.what());
    out.issues.push_back({name, e.what()});
  }
}

ColumnSummary summarize_values(const std::vector<double>& v) {
  ColumnSummary s;
  s.n = v.size();
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

Json number_or_null(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::vector<Condition> conditions_present(const std::vector<TrialRow>& rows) {
  std::set<Condition> s;
  for (const auto& r : rows) s.insert(r.condition);
  return {s.begin(), s.end()};
}

std::vector<double> distances_present(const std::vector<TrialRow>& rows) {
  std::set<double> s;
  for (const auto& r : rows) s.insert(r.distance_deg);
  return {s.begin(), s.end()};
}

std::vector<double> column(const std::vector<TrialRow>& rows, Condition c, std::optional<double> distance,
                           std::string_view name) {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.condition != c || (distance && r.distance_deg != *distance)) continue;
    if (auto v = metric_value(r.metrics, name)) out.push_back(*v);
  }
  return out;
}

const AggregateRow* find_aggregate(const std::vector<AggregateRow>& rows, Condition c, double d) {
  for (const auto& r : rows)
    if (r.condition == c && r.distance_deg == d) return &r;
  return nullptr;
}

}  // namespace

LoadedInputs load_sessions(const std::vector<fs::path>& paths, bool strict) {
  LoadedInputs out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        const std::string n = e.path().filename().string();
        if (e.is_regular_file() && (ends_with(n, ".session.json") || ends_with(n, ".sessions.jsonl")))
          files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) load_file(f, strict, out);
    } else if (fs::exists(p)) {
      load_file(p, strict, out);
    } else {
      if (strict) throw std::runtime_error(p.string() + ": no such file or directory");
      out.issues.push_back({p.string(), "no such file or directory"});
    }
  }
  return out;
}

std::optional<double> metric_value(const TrialMetrics& m, std::string_view c) {
  if (c == "tct_ms") return static_cast<double>(m.tct_ms);
  if (c == "at_ms") return static_cast<double>(m.at_ms);
  if (c == "mt_ms") return static_cast<double>(m.mt_ms);
  if (c == "kt_ms") return static_cast<double>(m.kt_ms);
  if (c == "path_length_deg") return m.path_length_deg;
  if (c == "trajectory_excess_deg") return m.trajectory_excess_deg;
  if (c == "overshoot_path_deg") return m.overshoot_path_deg;
  if (c == "mean_velocity_deg_per_s") return m.mean_velocity_deg_per_s;
  if (c == "initial_distance_deg") return m.initial_distance_deg;
  throw std::invalid_argument("unknown metric column " + std::string(c));
}

ReportBundle analyze(const std::vector<SourcedSession>& sessions, const AnalysisConfig& cfg) {
  cfg.metrics.validate();
  ReportBundle bundle;
  bundle.sessions = sessions.size();

  // Per-session work is independent; results land in fixed slots so the
  // output order does not depend on scheduling.
  struct Slot {
    std::vector<TrialRow> rows;
    std::vector<InputIssue> issues;
    std::size_t aborted = 0;
  };
  std::vector<Slot> slots(sessions.size());
  const auto work = [&](std::size_t i) {
    const auto& [source, log] = sessions[i];
    Slot& slot = slots[i];
    for (const auto& trial : log.trials) {
      if (trial.outcome == Outcome::aborted && !cfg.include_aborted) {
        ++slot.aborted;
        continue;
      }
      try {
        TrialRecord t = trial;
        if (t.outcome == Outcome::aborted) t.outcome = Outcome::completed;
        TrialRow row;
        row.participant = log.profile.participant_id;
        row.condition = trial.spec.condition;
        row.distance_deg = trial.spec.distance_deg;
        row.trial_id = trial.spec.trial_id;
        row.outcome = trial.outcome;
        row.metrics = compute_trial_metrics(t, log.geometry, cfg.metrics);
        if (log.profile.vf_radius_deg) row.vf_idt_ratio = vf_idt_ratio(log.profile, trial.spec);
        slot.rows.push_back(std::move(row));
      } catch (const std::exception& e) {
        slot.issues.push_back({source + "#trial" + std::to_string(trial.spec.trial_id), e.what()});
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, sessions.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sessions.size(); i += threads) work(i);
      });
  }
  for (auto& s : slots) {
    bundle.trials.insert(bundle.trials.end(), s.rows.begin(), s.rows.end());
    bundle.issues.insert(bundle.issues.end(), s.issues.begin(), s.issues.end());
    bundle.excluded_aborted += s.aborted;
  }

  const auto conditions = conditions_present(bundle.trials);
  const auto distances = distances_present(bundle.trials);

  for (Condition c : conditions) {
    for (double d : distances) {
      AggregateRow agg;
      agg.condition = c;
      agg.distance_deg = d;
      for (const auto& r : bundle.trials)
        if (r.condition == c && r.distance_deg == d) ++agg.trials;
      if (agg.trials == 0) continue;
      for (const char* name : kMetricColumns) agg.columns[name] = summarize_values(column(bundle.trials, c, d, name));
      bundle.aggregates.push_back(std::move(agg));
    }
  }

  for (std::size_t i = 0; i < conditions.size(); ++i) {
    for (std::size_t j = i + 1; j < conditions.size(); ++j) {
      for (double d : distances) {
        for (const char* name : kComparedColumns) {
          const auto a = column(bundle.trials, conditions[i], d, name);
          const auto b = column(bundle.trials, conditions[j], d, name);
          if (a.empty() || b.empty()) continue;
          bundle.comparisons.push_back({conditions[i], conditions[j], d, name, mann_whitney(a, b, cfg.exact_threshold)});
        }
      }
    }
  }

  for (Condition c : conditions) {
    std::vector<double> xs, ys, ratio, tct;
    std::vector<std::pair<double, double>> fitts_points;
    for (const auto& r : bundle.trials) {
      if (r.condition != c) continue;
      if (r.metrics.mean_velocity_deg_per_s) {
        xs.push_back(r.distance_deg);
        ys.push_back(*r.metrics.mean_velocity_deg_per_s);
      }
      if (r.distance_deg > 0)
        fitts_points.emplace_back(index_of_difficulty(r.distance_deg), static_cast<double>(r.metrics.mt_ms) / 1000.0);
      if (r.vf_idt_ratio) {
        ratio.push_back(*r.vf_idt_ratio);
        tct.push_back(static_cast<double>(r.metrics.tct_ms));
      }
    }
    try {
      bundle.velocity_fits.push_back({c, linear_fit(xs, ys)});
    } catch (const std::invalid_argument&) {
    }
    try {
      bundle.vf_ratio_fits.push_back({c, linear_fit(ratio, tct)});
    } catch (const std::invalid_argument&) {
    }
    try {
      bundle.fitts.push_back({c, fitts_fit(fitts_points)});
    } catch (const std::exception&) {
    }
  }

  for (double d : distances) {
    const AggregateRow* base = find_aggregate(bundle.aggregates, Condition::cp_fvf, d);
    const AggregateRow* sim = find_aggregate(bundle.aggregates, Condition::sp_simpvl, d);
    if (!base || !sim) continue;
    const auto& vb = base->columns.at("mean_velocity_deg_per_s");
    const auto& vs = sim->columns.at("mean_velocity_deg_per_s");
    if (vb.n == 0 || vs.n == 0 || !(vb.mean > 0) || !(vs.mean > 0)) continue;
    bundle.delays.push_back({d, delay_decomposition(sim->columns.at("path_length_deg").mean, vs.mean,
                                                    base->columns.at("path_length_deg").mean, vb.mean)});
  }

  for (Condition c : conditions) {
    for (double d : distances) {
      std::vector<TrialRecord> with_gaze;
      const ScreenGeometry* geometry = nullptr;
      for (const auto& s : sessions)
        for (const auto& t : s.log.trials)
          if (t.spec.condition == c && t.spec.distance_deg == d && t.gaze_samples && !t.gaze_samples->empty() &&
              t.outcome == Outcome::completed) {
            with_gaze.push_back(t);
            geometry = &s.log.geometry;
          }
      if (with_gaze.empty()) continue;
      try {
        bundle.gaze.push_back({c, d, gaze_profile(with_gaze, *geometry, cfg.metrics)});
      } catch (const std::exception& e) {
        bundle.issues.push_back({std::string(to_string(c)) + "@" + format_number(d), e.what()});
      }
    }
  }

  for (const char* name : kMetricColumns) {
    for (Condition c : conditions) {
      Series s;
      s.name = name;
      s.condition = c;
      s.x_label = "distance_deg";
      s.y_label = name;
      for (const auto& agg : bundle.aggregates) {
        if (agg.condition != c) continue;
        const auto& col = agg.columns.at(name);
        if (col.n == 0) continue;
        s.x.push_back(agg.distance_deg);
        s.y.push_back(col.mean);
        s.err.push_back(col.n > 1 ? col.sd / std::sqrt(static_cast<double>(col.n)) : 0.0);
      }
      if (!s.x.empty()) bundle.series.push_back(std::move(s));
    }
  }
  for (Condition c : conditions) {
    Series s;
    s.name = "fitts_mt_s";
    s.condition = c;
    s.x_label = "index_of_difficulty_bits";
    s.y_label = "mt_s";
    for (const auto& agg : bundle.aggregates) {
      if (agg.condition != c) continue;
      const auto& col = agg.columns.at("mt_ms");
      s.x.push_back(index_of_difficulty(agg.distance_deg));
      s.y.push_back(col.mean / 1000.0);
      s.err.push_back(col.n > 1 ? col.sd / std::sqrt(static_cast<double>(col.n)) / 1000.0 : 0.0);
    }
    if (!s.x.empty()) bundle.series.push_back(std::move(s));
  }
  return bundle;
}

std::string format_number(double v) { return Json(v).dump(); }

Json to_json(const ReportBundle& b, const std::optional<std::string>& generated_at) {
  Json j;
  j["report_version"] = "1";
  if (generated_at) j["generated_at"] = *generated_at;
  j["sessions"] = b.sessions;
  j["excluded_aborted"] = b.excluded_aborted;

  Json issues = Json::array();
  for (const auto& i : b.issues) issues.push_back(Json{{"source", i.source}, {"message", i.message}});
  j["issues"] = std::move(issues);

  Json trials = Json::array();
  for (const auto& r : b.trials) {
    Json t;
    t["participant"] = r.participant;
    t["condition"] = std::string(to_string(r.condition));
    t["distance_deg"] = r.distance_deg;
    t["trial_id"] = r.trial_id;
    t["outcome"] = r.outcome == Outcome::completed ? "completed" : "aborted";
    for (const char* name : kMetricColumns) t[name] = number_or_null(metric_value(r.metrics, name));
    t["initial_distance_deg"] = r.metrics.initial_distance_deg;
    t["vf_idt_ratio"] = number_or_null(r.vf_idt_ratio);
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);

  Json aggs = Json::array();
  for (const auto& a : b.aggregates) {
    Json row;
    row["condition"] = std::string(to_string(a.condition));
    row["distance_deg"] = a.distance_deg;
    row["trials"] = a.trials;
    for (const char* name : kMetricColumns) {
      const auto& c = a.columns.at(name);
      row[name] = Json{{"n", c.n}, {"mean", c.n ? Json(c.mean) : Json(nullptr)}, {"sd", c.n ? Json(c.sd) : Json(nullptr)}};
    }
    aggs.push_back(std::move(row));
  }
  j["aggregates"] = std::move(aggs);

  Json comps = Json::array();
  for (const auto& c : b.comparisons) {
    comps.push_back(Json{{"condition_a", std::string(to_string(c.condition_a))},
                         {"condition_b", std::string(to_string(c.condition_b))},
                         {"distance", c.distance_deg},
                         {"metric", c.metric},
                         {"u", c.result.u_statistic},
                         {"p", c.result.p_two_sided},
                         {"method", to_string(c.result.method)},
                         {"n_a", c.result.n_a},
                         {"n_b", c.result.n_b},
                         {"degenerate", c.result.degenerate}});
  }
  j["comparisons"] = std::move(comps);

  const auto fits_json = [](const std::vector<ConditionFit>& fits) {
    Json arr = Json::array();
    for (const auto& f : fits)
      arr.push_back(Json{{"condition", std::string(to_string(f.condition))},
                         {"slope", f.fit.slope},
                         {"intercept", f.fit.intercept},
                         {"r_squared", f.fit.r_squared},
                         {"n", f.fit.n}});
    return arr;
  };
  j["velocity_fits"] = fits_json(b.velocity_fits);
  j["vf_ratio_fits"] = fits_json(b.vf_ratio_fits);

  Json fitts = Json::array();
  for (const auto& f : b.fitts)
    fitts.push_back(Json{{"condition", std::string(to_string(f.condition))},
                         {"b", f.fit.b},
                         {"a", f.fit.a},
                         {"ip", f.fit.index_of_performance},
                         {"r_squared", f.fit.r_squared},
                         {"n", f.fit.n}});
  j["fitts"] = std::move(fitts);

  Json delays = Json::array();
  for (const auto& d : b.delays)
    delays.push_back(Json{{"distance", d.distance_deg},
                          {"delta_mt_ms", d.delay.delta_mt_ms},
                          {"delay_length_ms", d.delay.delay_length_ms},
                          {"delay_velocity_ms", d.delay.delay_velocity_ms},
                          {"length_fraction", number_or_null(d.delay.length_fraction)},
                          {"velocity_fraction", number_or_null(d.delay.velocity_fraction)}});
  j["delays"] = std::move(delays);

  Json gaze = Json::array();
  for (const auto& g : b.gaze) {
    Json row;
    row["condition"] = std::string(to_string(g.condition));
    row["distance"] = g.distance_deg;
    row["trials"] = g.profile.trials;
    row["mean_first_move"] = g.profile.mean_first_move;
    for (GazeCategory cat : kGazeCategories) {
      Json bins = Json::array();
      for (const auto& bin : g.profile.bins)
        bins.push_back(bin.defined ? Json(bin.proportion[static_cast<std::size_t>(cat)]) : Json(nullptr));
      row[to_string(cat)] = std::move(bins);
    }
    gaze.push_back(std::move(row));
  }
  j["gaze_profiles"] = std::move(gaze);

  Json series = Json::array();
  for (const auto& s : b.series)
    series.push_back(Json{{"name", s.name},
                          {"condition", std::string(to_string(s.condition))},
                          {"x_label", s.x_label},
                          {"y_label", s.y_label},
                          {"x", s.x},
                          {"y", s.y},
                          {"err", s.err}});
  j["series"] = std::move(series);
  return j;
}

std::string trials_csv(const ReportBundle& b) {
  std::ostringstream out;
  out << "participant,condition,distance_deg,trial_id";
  for (const char* name : kMetricColumns) out << ',' << name;
  out << ",initial_distance_deg\n";
  for (const auto& r : b.trials) {
    out << r.participant << ',' << to_string(r.condition) << ',' << format_number(r.distance_deg) << ','
        << r.trial_id;
    for (const char* name : kMetricColumns) {
      out << ',';
      if (auto v = metric_value(r.metrics, name)) out << format_number(*v);
    }
    out << ',' << format_number(r.metrics.initial_distance_deg) << '\n';
  }
  return out.str();
}

std::string aggregates_csv(const ReportBundle& b) {
  std::ostringstream out;
  out << "condition,distance_deg,trials";
  for (const char* name : kMetricColumns) out << ',' << name << "_n," << name << "_mean," << name << "_sd";
  out << '\n';
  for (const auto& a : b.aggregates) {
    out << to_string(a.condition) << ',' << format_number(a.distance_deg) << ',' << a.trials;
    for (const char* name : kMetricColumns) {
      const auto& c = a.columns.at(name);
      out << ',' << c.n << ',';
      if (c.n) out << format_number(c.mean);
      out << ',';
      if (c.n) out << format_number(c.sd);
    }
    out << '\n';
  }
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const std::string& title, const std::vector<const Json*>& group) {
  constexpr double W = 640, H = 420, L = 70, R = 160, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Json* s : group) {
    const auto& xs = (*s)["x"];
    const auto& ys = (*s)["y"];
    const auto& es = (*s)["err"];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      x0 = std::min(x0, xs[i].get<double>());
      x1 = std::max(x1, xs[i].get<double>());
      y0 = std::min(y0, ys[i].get<double>() - es[i].get<double>());
      y1 = std::max(y1, ys[i].get<double>() + es[i].get<double>());
    }
  }
  if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
  if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << L << "\" y=\"24\" font-size=\"14\">" << svg_escape(title) << "</text>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    o << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 100) / 100) << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << format_number(std::round(yv * 100) / 100) << "</text>\n";
  }
  if (!group.empty()) {
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
      << svg_escape((*group.front())["x_label"].get<std::string>()) << "</text>\n";
  }
  std::size_t idx = 0;
  for (const Json* s : group) {
    const char* color = kPalette[idx % std::size(kPalette)];
    const auto& xs = (*s)["x"];
    const auto& ys = (*s)["y"];
    const auto& es = (*s)["err"];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) o << sx(xs[i].get<double>()) << ',' << sy(ys[i].get<double>()) << ' ';
    o << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = sx(xs[i].get<double>()), y = ys[i].get<double>(), e = es[i].get<double>();
      o << "<line x1=\"" << x << "\" y1=\"" << sy(y - e) << "\" x2=\"" << x << "\" y2=\"" << sy(y + e)
        << "\" stroke=\"" << color << "\"/>\n";
      o << "<circle cx=\"" << x << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    o << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (idx + 1) << "\" fill=\"" << color << "\">"
      << svg_escape((*s)["condition"].get<std::string>()) << "</text>\n";
    ++idx;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace

std::vector<fs::path> write_svg_plots(const Json& bundle, const fs::path& dir) {
  fs::create_directories(dir);
  std::map<std::string, std::vector<const Json*>> groups;
  std::vector<std::string> order;
  for (const auto& s : bundle.at("series")) {
    const auto name = s.at("name").get<std::string>();
    if (!groups.count(name)) order.push_back(name);
    groups[name].push_back(&s);
  }
  std::vector<fs::path> written;
  for (const auto& name : order) {
    const fs::path file = dir / (name + ".svg");
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << render_svg(name, groups[name]);
    written.push_back(file);
  }
  return written;
}

std::string summarize(const Json& b) {
  std::ostringstream o;
  o << "sessions: " << b.at("sessions").get<std::size_t>() << ", trials: " << b.at("trials").size()
    << ", excluded aborted: " << b.at("excluded_aborted").get<std::size_t>() << ", issues: " << b.at("issues").size()
    << "\n";
  o << "\nmeans by condition and distance (tct / at / mt / kt ms, velocity deg/s)\n";
  for (const auto& a : b.at("aggregates")) {
    o << "  " << a.at("condition").get<std::string>() << " @ " << format_number(a.at("distance_deg").get<double>())
      << "  n=" << a.at("trials").get<std::size_t>();
    for (const char* name : {"tct_ms", "at_ms", "mt_ms", "kt_ms", "mean_velocity_deg_per_s"}) {
      const auto& m = a.at(name).at("mean");
      o << "  " << name << "=";
      if (m.is_null()) o << "-";
      else o << std::llround(m.get<double>() * 10) / 10.0;
    }
    o << "\n";
  }
  if (!b.at("velocity_fits").empty()) {
    o << "\nvelocity against distance\n";
    for (const auto& f : b.at("velocity_fits"))
      o << "  " << f.at("condition").get<std::string>() << ": v = " << f.at("slope").get<double>() << " * D + "
        << f.at("intercept").get<double>() << "  (R2 " << f.at("r_squared").get<double>() << ")\n";
  }
  if (!b.at("fitts").empty()) {
    o << "\nFitts index of performance\n";
    for (const auto& f : b.at("fitts"))
      o << "  " << f.at("condition").get<std::string>() << ": IP = " << f.at("ip").get<double>() << " bit/s  (R2 "
        << f.at("r_squared").get<double>() << ")\n";
  }
  std::size_t significant = 0;
  for (const auto& c : b.at("comparisons"))
    if (c.at("p").get<double>() < 0.05) ++significant;
  o << "\npairwise comparisons: " << b.at("comparisons").size() << " (" << significant << " with p < 0.05)\n";
  if (!b.at("delays").empty()) {
    o << "\nmovement-time delay, sp-simpvl relative to cp-fvf (ms)\n";
    for (const auto& d : b.at("delays"))
      o << "  D=" << format_number(d.at("distance").get<double>()) << ": delta " << d.at("delta_mt_ms").get<double>()
        << ", length " << d.at("delay_length_ms").get<double>() << ", velocity "
        << d.at("delay_velocity_ms").get<double>() << "\n";
  }
  for (const auto& i : b.at("issues"))
    o << "issue: " << i.at("source").get<std::string>() << ": " << i.at("message").get<std::string>() << "\n";
  return o.str();
}

}  // namespace sunlab
