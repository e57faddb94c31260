#pragma once

#include <string>
#include <string_view>

#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"

namespace activemars {

/// 64-bit FNV-1a of a byte string, as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

/// Stable digests of the canonical JSON encodings.
std::string model_digest(const MarsModel& model);
std::string prior_digest(const PriorSpec& prior);

}  // namespace activemars
