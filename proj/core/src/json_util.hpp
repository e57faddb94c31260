#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "activemars/io.hpp"

namespace activemars::detail {

/// Nested row arrays.
Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::VectorXd vector_from_json(const Json& v, const char* what);
/// Nested rows, or a flat row-major array of n*n numbers.
Eigen::MatrixXd square_from_json(const Json& v, std::size_t n, const char* what);

inline Json vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real_to_json(v(i)));
  return out;
}

}  // namespace activemars::detail
