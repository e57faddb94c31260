#include "activemars/digest.hpp"

#include <cstdint>
#include <cstdio>

#include "activemars/io.hpp"

namespace activemars {

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + hex;
}

std::string model_digest(const MarsModel& model) { return content_digest(model_to_json(model).dump()); }

std::string prior_digest(const PriorSpec& prior) { return content_digest(prior_to_json(prior).dump()); }

}  // namespace activemars
