#pragma once

// Local HTTP service used by the browser experiment: hands out schedules and
// display settings, and stores uploaded session logs.

#include "sunlab/geometry.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace sunlab {

struct ServiceConfig {
  std::filesystem::path data_dir = "sunlab-data";
  std::optional<std::filesystem::path> static_dir;
  ScreenGeometry geometry;
  RayConfig rays;
  ClipRegion clip;
};

/// Where an accepted upload lands: <data_dir>/sessions/<participant>/.
std::filesystem::path session_directory(const ServiceConfig& cfg, const std::string& participant_id);

class Service {
 public:
  explicit Service(ServiceConfig cfg);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and returns the bound port (an ephemeral one when port is 0).
  /// Throws std::runtime_error when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sunlab
