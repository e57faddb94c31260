#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "activemars/measures.hpp"

namespace activemars {

/// coeffs . x <= rhs
struct LinearConstraint {
  Eigen::VectorXd coeffs;
  double rhs = 0.0;
};

/// Intersection of a global box with linear half-spaces.
struct LinearConstraintSet {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<LinearConstraint> rows;

  static LinearConstraintSet unit_box(std::size_t p);
  std::size_t dimension() const { return static_cast<std::size_t>(lower.size()); }
  /// x_i <= x_j.
  void add_order(std::size_t i, std::size_t j);
  void validate() const;
};

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  double volume() const;
};

enum class BoxClass { inside, outside, partial };

/// Vertex test over the coordinates that appear in some constraint (at most
/// 20 of them). Inside: every vertex satisfies every row and one vertex
/// satisfies all rows strictly. Outside: some row is violated at every vertex.
BoxClass classify_box(const Box& box, const LinearConstraintSet& constraints);

struct BoxPartition {
  std::vector<Box> boxes;          // sorted lexicographically by lower corner
  std::vector<double> weights;     // volume fractions, sum to 1
  double covered_volume = 0.0;     // total volume of the boxes
  double min_volume = 0.0;
  std::vector<std::size_t> split_dims;
};

inline constexpr std::size_t kMaxSplitDims = 20;

/// Recursive bisection of the global box. Inside boxes are kept, outside
/// boxes dropped and partial boxes halved at the midpoint of the next split
/// dimension in rotation. Boxes below min_volume are dropped. Empty
/// split_dims means every coordinate that appears in a constraint.
BoxPartition partition(const LinearConstraintSet& constraints, double min_volume,
                       std::vector<std::size_t> split_dims = {});

/// Mixture of per-box uniform products (a plain product for a single box).
/// Throws InputError for an empty partition.
PriorSpec to_prior(const BoxPartition& partition);

}  // namespace activemars
