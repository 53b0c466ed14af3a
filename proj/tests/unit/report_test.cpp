#include "fixtures.hpp"

#include "sunlab/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

using namespace sunlab;
using sunlab::testing::simulated_log;

namespace fs = std::filesystem;

namespace {

std::vector<SourcedSession> corpus(std::initializer_list<std::string_view> presets, int participants) {
  std::vector<SourcedSession> out;
  for (auto preset : presets)
    for (int i = 0; i < participants; ++i) {
      const std::string id = std::string(preset) + "-" + std::to_string(i);
      out.push_back({id, simulated_log(preset, static_cast<std::uint64_t>(100 + i), id)});
    }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sunlab-report-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Analyze, ComparisonsAndFits) {
  const auto sessions = corpus({"cp-fvf", "sp-simpvl"}, 4);
  const ReportBundle b = analyze(sessions);
  EXPECT_EQ(b.sessions, 8u);
  EXPECT_EQ(b.trials.size(), 8u * 24u);
  EXPECT_TRUE(b.issues.empty());
  EXPECT_EQ(b.aggregates.size(), 8u);
  EXPECT_EQ(b.comparisons.size(), 4u * kComparedColumns.size());
  for (const auto& c : b.comparisons) {
    EXPECT_EQ(c.result.n_a, 24u);
    EXPECT_EQ(c.result.method, MwMethod::normal_approx);
    EXPECT_GT(c.result.p_two_sided, 0.0);
    EXPECT_LE(c.result.p_two_sided, 1.0);
  }
  ASSERT_EQ(b.fitts.size(), 2u);
  EXPECT_EQ(b.velocity_fits.size(), 2u);
  EXPECT_EQ(b.delays.size(), 4u);
  EXPECT_EQ(b.gaze.size(), 4u);
  EXPECT_TRUE(b.vf_ratio_fits.empty());
}

TEST(Analyze, AggregatesRecomputableFromTrials) {
  const ReportBundle b = analyze(corpus({"cp-fvf", "sp-pvl"}, 3));
  const Json j = to_json(b, std::nullopt);
  for (const auto& agg : j.at("aggregates")) {
    for (const char* name : kMetricColumns) {
      std::vector<double> v;
      for (const auto& t : j.at("trials"))
        if (t.at("condition") == agg.at("condition") && t.at("distance_deg") == agg.at("distance_deg") &&
            !t.at(name).is_null())
          v.push_back(t.at(name).get<double>());
      ASSERT_EQ(agg.at(name).at("n").get<std::size_t>(), v.size());
      double m = 0;
      for (double x : v) m += x;
      m /= static_cast<double>(v.size());
      double ss = 0;
      for (double x : v) ss += (x - m) * (x - m);
      EXPECT_NEAR(agg.at(name).at("mean").get<double>(), m, 1e-9 * std::max(1.0, std::abs(m)));
      EXPECT_NEAR(agg.at(name).at("sd").get<double>(), std::sqrt(ss / static_cast<double>(v.size() - 1)), 1e-9 * std::max(1.0, m));
    }
  }
}

TEST(Analyze, CsvMatchesJson) {
  const ReportBundle b = analyze(corpus({"cp-fvf"}, 2));
  const Json j = to_json(b, std::nullopt);
  std::stringstream csv(trials_csv(b));
  std::string line;
  std::getline(csv, line);
  const auto header = split(line, ',');
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    const auto cells = split(line, ',');
    ASSERT_EQ(cells.size(), header.size());
    const Json& t = j.at("trials").at(row++);
    for (std::size_t c = 0; c < header.size(); ++c) {
      const Json& v = t.at(header[c]);
      if (v.is_null())
        EXPECT_EQ(cells[c], "");
      else if (v.is_string())
        EXPECT_EQ(cells[c], v.get<std::string>());
      else
        EXPECT_EQ(cells[c], v.dump()) << header[c];
    }
  }
  EXPECT_EQ(row, j.at("trials").size());

  std::stringstream agg(aggregates_csv(b));
  std::getline(agg, line);
  const auto agg_header = split(line, ',');
  row = 0;
  while (std::getline(agg, line)) {
    const auto cells = split(line, ',');
    const Json& a = j.at("aggregates").at(row++);
    for (std::size_t c = 3; c < agg_header.size(); ++c) {
      const std::string& h = agg_header[c];
      const auto cut = h.rfind('_');
      const Json& v = a.at(h.substr(0, cut)).at(h.substr(cut + 1));
      EXPECT_EQ(cells[c], v.is_null() ? "" : v.dump()) << h;
    }
  }
}

TEST(Analyze, DeterministicAcrossThreadCounts) {
  const auto sessions = corpus({"cp-fvf", "sp-simpvl", "cp-pvl"}, 3);
  AnalysisConfig one, many;
  one.threads = 1;
  many.threads = 5;
  const std::string a = to_json(analyze(sessions, one), std::nullopt).dump();
  const std::string b = to_json(analyze(sessions, many), std::nullopt).dump();
  EXPECT_EQ(a, b);
  EXPECT_FALSE(Json::parse(a).contains("generated_at"));
  EXPECT_EQ(to_json(analyze(sessions, one), std::string("2026-01-01T00:00:00Z")).at("generated_at"),
            "2026-01-01T00:00:00Z");
}

TEST(Analyze, AbortedTrialsExcludedByDefault) {
  auto sessions = corpus({"cp-fvf"}, 1);
  TrialRecord& t = sessions[0].log.trials[3];
  t.outcome = Outcome::aborted;
  t.click_events.clear();
  const ReportBundle b = analyze(sessions);
  EXPECT_EQ(b.trials.size(), 23u);
  EXPECT_EQ(b.excluded_aborted, 1u);
  AnalysisConfig cfg;
  cfg.include_aborted = true;
  const ReportBundle all = analyze(sessions, cfg);
  EXPECT_EQ(all.excluded_aborted, 0u);
  // Without a click the trial cannot be measured; it is reported, not dropped silently.
  EXPECT_EQ(all.trials.size() + all.issues.size(), 24u);
}

TEST(Analyze, VfRatioFitForVisualFieldConditions) {
  const ReportBundle b = analyze(corpus({"sp-pvl", "cp-pvl"}, 3));
  ASSERT_EQ(b.vf_ratio_fits.size(), 2u);
  for (const auto& row : b.trials) ASSERT_TRUE(row.vf_idt_ratio.has_value());
}

TEST(Analyze, DelaySplitAtFourteenDegrees) {
  const ReportBundle b = analyze(corpus({"cp-fvf", "sp-simpvl"}, 20));
  const DelayRow* at14 = nullptr;
  for (const auto& d : b.delays)
    if (d.distance_deg == 14.0) at14 = &d;
  ASSERT_NE(at14, nullptr);
  ASSERT_TRUE(at14->delay.length_fraction.has_value());
  EXPECT_NEAR(*at14->delay.length_fraction, 0.08, 0.10);
  EXPECT_GT(*at14->delay.velocity_fraction, 0.5);
}

TEST(LoadSessions, FilesDirectoriesAndIssues) {
  const fs::path dir = temp_dir("load");
  fs::create_directories(dir / "nested");
  const auto a = simulated_log("cp-fvf", 1, "a");
  const auto b = simulated_log("sp-simpvl", 2, "b");
  std::ofstream(dir / "a.session.json") << serialize(a);
  std::ofstream(dir / "nested" / "b.session.json") << serialize(b);
  std::vector<SessionLog> both = {a, b};
  std::ofstream(dir / "ab.sessions.jsonl") << serialize_corpus(both);
  std::ofstream(dir / "bad.session.json") << "{\"schema_version\": \"1\"}";
  std::ofstream(dir / "notes.txt") << "ignored";

  const auto loaded = load_sessions({dir});
  EXPECT_EQ(loaded.sessions.size(), 4u);
  ASSERT_EQ(loaded.issues.size(), 1u);
  EXPECT_NE(loaded.issues[0].source.find("bad.session.json"), std::string::npos);
  EXPECT_THROW(load_sessions({dir}, true), std::runtime_error);
  const auto missing = load_sessions({dir / "nope.session.json"});
  EXPECT_TRUE(missing.sessions.empty());
  EXPECT_EQ(missing.issues.size(), 1u);
  fs::remove_all(dir);
}

TEST(Output, PlotsAndSummary) {
  const Json j = to_json(analyze(corpus({"cp-fvf", "sp-simpvl"}, 2)), std::nullopt);
  const fs::path dir = temp_dir("plots");
  const auto files = write_svg_plots(j, dir / "svg");
  EXPECT_EQ(files.size(), kMetricColumns.size() + 1);
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("<svg", 0), 0u);
  }
  const std::string s = summarize(j);
  EXPECT_NE(s.find("cp-fvf: IP ="), std::string::npos);
  EXPECT_NE(s.find("sp-simpvl: IP ="), std::string::npos);
  fs::remove_all(dir);
}

TEST(Output, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 12.0, 1e-7, 123456.789}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(12.0), "12.0");
}
