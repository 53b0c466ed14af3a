#pragma once

// Analysis pipeline behind `sunlab analyze`: ingest session files, compute
// per-trial metrics, aggregate by (condition, distance), run the pairwise
// rank tests and the velocity / Fitts fits, and emit a report bundle as JSON
// plus CSV tables.

#include "sunlab/metrics.hpp"
#include "sunlab/stats.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sunlab {

struct AnalysisConfig {
  MetricsConfig metrics;
  bool include_aborted = false;
  std::size_t exact_threshold = 8;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SourcedSession {
  std::string source;
  SessionLog log;
};

struct InputIssue {
  std::string source;
  std::string message;
};

struct LoadedInputs {
  std::vector<SourcedSession> sessions;
  std::vector<InputIssue> issues;
};

/// Reads .session.json and .sessions.jsonl files; directories are scanned
/// recursively for those extensions in sorted path order. Invalid files are
/// reported in issues; with strict set the first one throws instead.
LoadedInputs load_sessions(const std::vector<std::filesystem::path>& paths, bool strict = false);

struct TrialRow {
  std::string participant;
  Condition condition = Condition::cp_fvf;
  double distance_deg = 0.0;
  int trial_id = 0;
  Outcome outcome = Outcome::completed;
  TrialMetrics metrics;
  std::optional<double> vf_idt_ratio;
};

/// Columns of the per-trial table, in report order.
inline constexpr std::array<const char*, 8> kMetricColumns = {
    "tct_ms",          "at_ms",         "mt_ms",         "kt_ms", "path_length_deg", "trajectory_excess_deg",
    "overshoot_path_deg", "mean_velocity_deg_per_s"};

/// Value of a named column; empty for an undefined mean velocity.
std::optional<double> metric_value(const TrialMetrics& m, std::string_view column);

struct ColumnSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample SD, 0 when n < 2
};

struct AggregateRow {
  Condition condition = Condition::cp_fvf;
  double distance_deg = 0.0;
  std::size_t trials = 0;
  std::map<std::string, ColumnSummary> columns;
};

struct Comparison {
  Condition condition_a = Condition::cp_fvf;
  Condition condition_b = Condition::cp_fvf;
  double distance_deg = 0.0;
  std::string metric;
  MannWhitneyResult result;
};

struct ConditionFit {
  Condition condition = Condition::cp_fvf;
  LinearFit fit;
};

struct ConditionFitts {
  Condition condition = Condition::cp_fvf;
  FittsFit fit;
};

struct DelayRow {
  double distance_deg = 0.0;
  DelayDecomposition delay;
};

struct GazeRow {
  Condition condition = Condition::cp_fvf;
  double distance_deg = 0.0;
  GazeProfile profile;
};

struct Series {
  std::string name;
  Condition condition = Condition::cp_fvf;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // standard error of the mean
};

struct ReportBundle {
  std::size_t sessions = 0;
  std::size_t excluded_aborted = 0;
  std::vector<InputIssue> issues;
  std::vector<TrialRow> trials;
  std::vector<AggregateRow> aggregates;
  std::vector<Comparison> comparisons;
  std::vector<ConditionFit> velocity_fits;
  std::vector<ConditionFit> vf_ratio_fits;  // TCT against VF / initial distance
  std::vector<ConditionFitts> fitts;
  std::vector<DelayRow> delays;  // sp-simpvl relative to cp-fvf
  std::vector<GazeRow> gaze;
  std::vector<Series> series;
};

/// Metrics columns compared between condition pairs.
inline constexpr std::array<const char*, 6> kComparedColumns = {"tct_ms", "at_ms", "mt_ms", "kt_ms",
                                                                "path_length_deg", "mean_velocity_deg_per_s"};

ReportBundle analyze(const std::vector<SourcedSession>& sessions, const AnalysisConfig& cfg = {});

/// generated_at is the only non-deterministic field; pass nullopt to omit it.
Json to_json(const ReportBundle& bundle, const std::optional<std::string>& generated_at);

std::string trials_csv(const ReportBundle& bundle);
std::string aggregates_csv(const ReportBundle& bundle);

/// Number formatting shared by the JSON and CSV views.
std::string format_number(double v);

/// One SVG line/error-bar chart per series group of a bundle JSON document.
/// Returns the files written.
std::vector<std::filesystem::path> write_svg_plots(const Json& bundle, const std::filesystem::path& dir);

/// Human-readable summary of a bundle JSON document.
std::string summarize(const Json& bundle);

/// Current UTC time, ISO-8601.
std::string utc_timestamp();

}  // namespace sunlab
