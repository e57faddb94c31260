#pragma once

namespace activemars {

inline constexpr const char* kVersion = "0.1.0";

// Major version written to every file format; readers reject other majors.
inline constexpr int kFormatVersion = 1;

}  // namespace activemars
