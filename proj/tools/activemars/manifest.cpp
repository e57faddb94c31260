#include "manifest.hpp"

#include <fstream>
#include <iterator>

#include "activemars/digest.hpp"
#include "activemars/errors.hpp"
#include "activemars/version.hpp"

namespace activemars::cli {

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return content_digest(bytes);
}

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::string& role, const std::filesystem::path& path) {
  inputs_.emplace_back(role, Json{{"path", path.string()}, {"digest", file_digest(path)}});
}

Json RunManifest::to_json(bool include_timing) const {
  Json inputs = Json::object();
  for (const auto& [role, entry] : inputs_) inputs[role] = entry;
  Json doc = {{"command", command_},
              {"inputs", inputs},
              {"config", config_},
              {"seed", seed_ ? Json(*seed_) : Json(nullptr)},
              {"library_version", kVersion}};
  if (include_timing) {
    doc["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  return doc;
}

}  // namespace activemars::cli
