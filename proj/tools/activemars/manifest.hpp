#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "activemars/io.hpp"

namespace activemars::cli {

/// Provenance block written into (or next to) every output file.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  /// Records the path and the digest of its current bytes.
  void add_input(const std::string& role, const std::filesystem::path& path);
  void set_config(Json config) { config_ = std::move(config); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  /// With include_timing false the document is a pure function of the inputs,
  /// flags and seed.
  Json to_json(bool include_timing = true) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, Json>> inputs_;
  Json config_ = Json::object();
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
};

std::string file_digest(const std::filesystem::path& path);

}  // namespace activemars::cli
