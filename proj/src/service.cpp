#include "sunlab/service.hpp"

#include "sunlab/protocol.hpp"
#include "sunlab/session.hpp"

#include <httplib.h>

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>

namespace sunlab {

namespace fs = std::filesystem;

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message, const std::string& path = "",
                const std::string& kind = "") {
  Json body{{"error", message}};
  if (!path.empty() || !kind.empty()) {
    body["path"] = path;
    body["kind"] = kind;
  }
  send_json(res, status, body);
}

// Keeps only characters safe in a file name.
std::string sanitize(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

}  // namespace

fs::path session_directory(const ServiceConfig& cfg, const std::string& participant_id) {
  return cfg.data_dir / "sessions" / sanitize(participant_id);
}

struct Service::Impl {
  ServiceConfig cfg;
  httplib::Server server;
  std::mutex locks_guard;
  std::map<std::string, std::unique_ptr<std::mutex>> locks;
  std::atomic<std::uint64_t> received{0};

  std::mutex& participant_lock(const std::string& id) {
    std::lock_guard g(locks_guard);
    auto& slot = locks[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
  }

  void routes() {
    server.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, Json{{"status", "ok"}, {"schema_version", kSchemaVersion}});
    });

    server.Get("/api/v1/settings", [this](const httplib::Request&, httplib::Response& res) {
      const MouseGain gain = mouse_gain(cfg.geometry);
      Json body;
      body["ray_config"] = to_json(cfg.rays);
      body["clip"] = to_json(cfg.clip);
      body["geometry"] = to_json(cfg.geometry);
      body["gain"] = Json{{"px_per_cm", gain.px_per_cm},
                          {"deg_per_cm", gain.deg_per_cm},
                          {"counts_per_deg", gain.counts_per_deg},
                          {"equivalent_dpi", gain.equivalent_dpi}};
      send_json(res, 200, body);
    });

    server.Get("/api/v1/schedule", [](const httplib::Request& req, httplib::Response& res) {
      if (!req.has_param("condition") || !req.has_param("seed")) {
        send_error(res, 400, "condition and seed are required");
        return;
      }
      const auto condition = parse_condition(req.get_param_value("condition"));
      if (!condition) {
        send_error(res, 400, "unknown condition; valid values: " + condition_names());
        return;
      }
      const auto seed = parse_seed(req.get_param_value("seed"));
      if (!seed) {
        send_error(res, 400, "seed must be an unsigned 64-bit integer");
        return;
      }
      send_json(res, 200, to_json(generate_schedule(*condition, *seed)));
    });

    server.Post("/api/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      SessionLog log;
      try {
        log = parse(req.body);
      } catch (const SessionError& e) {
        send_error(res, 422, e.detail(), e.path(), to_string(e.kind()));
        return;
      }
      const auto& id = log.profile.participant_id;
      const fs::path dir = session_directory(cfg, id);
      std::string name;
      {
        std::lock_guard g(participant_lock(id));
        std::error_code ec;
        fs::create_directories(dir, ec);
        const std::string stem = log.trials.empty() ? std::string("session") : std::string(to_string(log.trials.front().spec.condition));
        for (int n = 0;; ++n) {
          name = stem + "-" + std::to_string(n) + ".session.json";
          if (!fs::exists(dir / name)) break;
        }
        std::ofstream out(dir / name, std::ios::binary);
        out.write(req.body.data(), static_cast<std::streamsize>(req.body.size()));
        if (!out) {
          send_error(res, 500, "could not persist session");
          return;
        }
      }
      ++received;
      send_json(res, 201, Json{{"participant_id", id}, {"stored_as", (fs::path("sessions") / sanitize(id) / name).generic_string()}});
    });

    if (cfg.static_dir) server.set_mount_point("/", cfg.static_dir->string());
  }
};

Service::Service(ServiceConfig cfg) : impl_(std::make_unique<Impl>()) {
  impl_->cfg = std::move(cfg);
  impl_->routes();
  // httplib defaults to SO_REUSEPORT, which lets a second instance share the port.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace sunlab
