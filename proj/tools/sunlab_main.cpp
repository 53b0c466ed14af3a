// sunlab command-line entry point.

#include "sunlab/protocol.hpp"
#include "sunlab/random.hpp"
#include "sunlab/report.hpp"
#include "sunlab/service.hpp"
#include "sunlab/session.hpp"
#include "sunlab/simulator.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace sunlab;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out.flush());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::uint64_t> seed_arg(const std::string& text) {
  auto s = parse_seed(text);
  if (!s) std::cerr << "error: seed must be an unsigned 64-bit integer, got '" << text << "'\n";
  return s;
}

int cmd_schedule(const std::string& condition_name, const std::string& seed_text, const std::string& out) {
  const auto condition = parse_condition(condition_name);
  if (!condition) {
    std::cerr << "error: unknown condition '" << condition_name << "'\n"
              << "usage: sunlab schedule --condition <" << condition_names() << "> --seed <n> [--out file]\n";
    return kExitUsage;
  }
  const auto seed = seed_arg(seed_text);
  if (!seed) return kExitUsage;
  const std::string text = to_json(generate_schedule(*condition, *seed)).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  if (!write_file(out, text)) {
    std::cerr << "error: cannot write " << out << "\n";
    return kExitIo;
  }
  return 0;
}

struct SimulateArgs {
  std::string agent;
  std::string agent_file;
  int participants = 20;
  std::string seed = "1";
  std::string out_dir = ".";
};

int cmd_simulate(const SimulateArgs& a) {
  const auto seed = seed_arg(a.seed);
  if (!seed) return kExitUsage;
  AgentModel base;
  std::string label;
  try {
    if (!a.agent_file.empty()) {
      base = agent_from_json(Json::parse(read_file(a.agent_file)));
      label = fs::path(a.agent_file).stem().string();
    } else {
      base = agent_preset(a.agent.empty() ? "cp-fvf" : a.agent);
      label = a.agent.empty() ? "cp-fvf" : a.agent;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "known presets:";
    for (auto p : kAgentPresets) std::cerr << ' ' << p;
    std::cerr << "\n";
    return kExitUsage;
  }
  if (a.participants < 0) {
    std::cerr << "error: --participants must be non-negative\n";
    return kExitUsage;
  }
  if (a.participants == 0) {
    std::cerr << "warning: --participants 0, nothing to simulate\n";
    return 0;
  }
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  for (int i = 0; i < a.participants; ++i) {
    AgentModel agent = base;
    agent.seed = derive_seed(*seed, "participant/agent", static_cast<std::uint64_t>(i));
    const auto schedule =
        generate_schedule(agent.condition, derive_seed(*seed, "participant/schedule", static_cast<std::uint64_t>(i)));
    char id[32];
    std::snprintf(id, sizeof id, "p%03d", i + 1);
    ParticipantProfile profile;
    profile.participant_id = label + "-" + id;
    profile.kind = ParticipantKind::synthetic;
    if (agent.condition == Condition::sp_pvl || agent.condition == Condition::cp_pvl)
      profile.vf_radius_deg = agent.visible_radius_deg;
    const SessionLog log = simulate_session(agent, schedule, profile);
    const fs::path file = fs::path(a.out_dir) / (profile.participant_id + ".session.json");
    if (!write_file(file, serialize(log))) {
      std::cerr << "error: cannot write " << file.string() << "\n";
      return kExitIo;
    }
  }
  std::cerr << "wrote " << a.participants << " sessions to " << a.out_dir << "\n";
  return 0;
}

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  std::string out = "report.json";
  bool include_aborted = false;
  bool strict = false;
  bool timestamp = true;
};

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  if (p.extension() == ".json") p.replace_extension();
  p += suffix;
  return p;
}

int cmd_analyze(const AnalyzeArgs& a) {
  std::vector<fs::path> paths(a.inputs.begin(), a.inputs.end());
  LoadedInputs loaded;
  try {
    loaded = load_sessions(paths, a.strict);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& i : loaded.issues) std::cerr << "skipped " << i.source << ": " << i.message << "\n";
  if (loaded.sessions.empty()) {
    std::cerr << "error: no valid session logs in the input set\n";
    return kExitUsage;
  }
  AnalysisConfig cfg;
  cfg.include_aborted = a.include_aborted;
  ReportBundle bundle = analyze(loaded.sessions, cfg);
  bundle.issues.insert(bundle.issues.begin(), loaded.issues.begin(), loaded.issues.end());
  const fs::path out = a.out;
  if (out.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out.parent_path(), ec);
  }
  const auto stamp = a.timestamp ? std::optional<std::string>(utc_timestamp()) : std::nullopt;
  if (!write_file(out, to_json(bundle, stamp).dump(2) + "\n") ||
      !write_file(sibling(out, ".trials.csv"), trials_csv(bundle)) ||
      !write_file(sibling(out, ".aggregates.csv"), aggregates_csv(bundle))) {
    std::cerr << "error: cannot write " << out.string() << "\n";
    return kExitIo;
  }
  std::cerr << "analyzed " << bundle.sessions << " sessions, " << bundle.trials.size() << " trials -> " << out.string()
            << "\n";
  return 0;
}

int cmd_report(const std::string& bundle_path, const std::string& plot_dir) {
  Json bundle;
  try {
    bundle = Json::parse(read_file(bundle_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << summarize(bundle);
  if (!plot_dir.empty()) {
    try {
      for (const auto& f : write_svg_plots(bundle, plot_dir)) std::cerr << "wrote " << f.string() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  return 0;
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& data_dir, const std::string& static_dir) {
  ServiceConfig cfg;
  if (!data_dir.empty()) {
    cfg.data_dir = data_dir;
  } else if (const char* env = std::getenv("SUNLAB_DATA_DIR"); env && *env) {
    cfg.data_dir = env;
  }
  if (!static_dir.empty()) cfg.static_dir = static_dir;
  Service service(cfg);
  int bound = 0;
  try {
    bound = service.bind(host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << " (data in " << cfg.data_dir.string() << ")"
            << std::endl;
  service.listen();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sunlab: radial-cue pointing laboratory"};
  app.require_subcommand(1);

  auto* schedule = app.add_subcommand("schedule", "write a 24-trial schedule");
  std::string condition, schedule_seed, schedule_out;
  schedule->add_option("--condition", condition, "condition (" + condition_names() + ")")->required();
  schedule->add_option("--seed", schedule_seed, "schedule seed")->required();
  schedule->add_option("--out", schedule_out, "output file (stdout when omitted)");

  auto* simulate = app.add_subcommand("simulate", "simulate synthetic participants");
  SimulateArgs sim;
  auto* agent_opt = simulate->add_option("--agent", sim.agent, "agent preset");
  simulate->add_option("--agent-file", sim.agent_file, "agent model JSON")->excludes(agent_opt);
  simulate->add_option("--participants", sim.participants, "number of participants")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "root seed")->capture_default_str();
  simulate->add_option("--out-dir", sim.out_dir, "output directory")->capture_default_str();

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze session logs");
  AnalyzeArgs an;
  analyze_cmd->add_option("inputs", an.inputs, "session files or directories");
  analyze_cmd->add_option("--out", an.out, "report bundle path")->capture_default_str();
  analyze_cmd->add_flag("--include-aborted", an.include_aborted, "keep aborted trials");
  analyze_cmd->add_flag("--strict", an.strict, "abort on the first invalid input");
  analyze_cmd->add_flag("!--no-timestamp", an.timestamp, "omit generated_at");

  auto* report = app.add_subcommand("report", "summarize a report bundle");
  std::string bundle_path, plot_dir;
  report->add_option("bundle", bundle_path, "report bundle JSON")->required();
  report->add_option("--plot", plot_dir, "write SVG charts to this directory");

  auto* serve = app.add_subcommand("serve", "run the local experiment service");
  std::string host = "127.0.0.1", data_dir, static_dir;
  int port = 8080;
  serve->add_option("--port", port, "port (0 picks a free one)")->capture_default_str();
  serve->add_option("--host", host, "bind address")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "session storage (default $SUNLAB_DATA_DIR or ./sunlab-data)");
  serve->add_option("--static", static_dir, "directory of UI assets to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*schedule) return cmd_schedule(condition, schedule_seed, schedule_out);
    if (*simulate) return cmd_simulate(sim);
    if (*analyze_cmd) return cmd_analyze(an);
    if (*report) return cmd_report(bundle_path, plot_dir);
    if (*serve) return cmd_serve(host, port, data_dir, static_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
