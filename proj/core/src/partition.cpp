#include "activemars/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "activemars/errors.hpp"

namespace activemars {

LinearConstraintSet LinearConstraintSet::unit_box(std::size_t p) {
  const auto n = static_cast<Eigen::Index>(p);
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n), {}};
}

void LinearConstraintSet::add_order(std::size_t i, std::size_t j) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(lower.size());
  c(static_cast<Eigen::Index>(i)) += 1.0;
  c(static_cast<Eigen::Index>(j)) -= 1.0;
  rows.push_back({std::move(c), 0.0});
}

void LinearConstraintSet::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw InputError("constraint box bounds must be non-empty and of equal length");
  }
  if (!lower.allFinite() || !upper.allFinite()) throw InputError("constraint box must be finite");
  if ((upper.array() <= lower.array()).any()) throw InputError("constraint box has an empty side");
  for (const auto& r : rows) {
    if (r.coeffs.size() != lower.size()) throw InputError("constraint row has the wrong length");
    if (!r.coeffs.allFinite() || !std::isfinite(r.rhs)) {
      throw InputError("constraint coefficients must be finite");
    }
  }
}

double Box::volume() const { return (upper - lower).prod(); }

namespace {

std::vector<std::size_t> constrained_dims(const LinearConstraintSet& cs) {
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < cs.dimension(); ++k) {
    for (const auto& r : cs.rows) {
      if (r.coeffs(static_cast<Eigen::Index>(k)) != 0.0) {
        dims.push_back(k);
        break;
      }
    }
  }
  return dims;
}

}  // namespace

BoxClass classify_box(const Box& box, const LinearConstraintSet& constraints) {
  const std::vector<std::size_t> dims = constrained_dims(constraints);
  if (dims.size() > kMaxSplitDims) {
    throw InputError("constraints involve " + std::to_string(dims.size()) +
                     " coordinates; vertex enumeration is capped at " +
                     std::to_string(kMaxSplitDims));
  }
  if (constraints.rows.empty()) return BoxClass::inside;

  const std::size_t vertices = std::size_t{1} << dims.size();
  const std::size_t rows = constraints.rows.size();
  std::vector<char> satisfied_somewhere(rows, 0);
  std::vector<char> violated_somewhere(rows, 0);
  bool all_satisfied = true;
  bool strict_vertex = false;
  Eigen::VectorXd v = box.lower;

  for (std::size_t mask = 0; mask < vertices; ++mask) {
    for (std::size_t d = 0; d < dims.size(); ++d) {
      const auto k = static_cast<Eigen::Index>(dims[d]);
      v(k) = (mask >> d) & 1U ? box.upper(k) : box.lower(k);
    }
    bool strict_here = true;
    for (std::size_t r = 0; r < rows; ++r) {
      const double lhs = constraints.rows[r].coeffs.dot(v);
      const double rhs = constraints.rows[r].rhs;
      if (lhs <= rhs) {
        satisfied_somewhere[r] = 1;
      } else {
        violated_somewhere[r] = 1;
        all_satisfied = false;
      }
      strict_here = strict_here && lhs < rhs;
    }
    strict_vertex = strict_vertex || strict_here;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (!satisfied_somewhere[r]) return BoxClass::outside;
  }
  if (all_satisfied && strict_vertex) return BoxClass::inside;
  if (all_satisfied) return BoxClass::outside;  // touches the region only on its boundary
  return BoxClass::partial;
}

BoxPartition partition(const LinearConstraintSet& constraints, double min_volume,
                       std::vector<std::size_t> split_dims) {
  constraints.validate();
  if (!(min_volume > 0.0)) throw InputError("min_volume must be positive");
  if (split_dims.empty()) split_dims = constrained_dims(constraints);
  if (split_dims.size() > kMaxSplitDims) {
    throw InputError("at most " + std::to_string(kMaxSplitDims) + " split dimensions are supported");
  }
  for (std::size_t d : split_dims) {
    if (d >= constraints.dimension()) throw InputError("split dimension out of range");
  }

  BoxPartition out;
  out.min_volume = min_volume;
  out.split_dims = split_dims;

  struct Pending {
    Box box;
    std::size_t level;
  };
  std::vector<Pending> stack{{{constraints.lower, constraints.upper}, 0}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.box.volume() < min_volume) continue;
    const BoxClass cls = classify_box(cur.box, constraints);
    if (cls == BoxClass::inside) {
      out.boxes.push_back(std::move(cur.box));
      continue;
    }
    if (cls == BoxClass::outside || split_dims.empty()) continue;
    const auto k = static_cast<Eigen::Index>(split_dims[cur.level % split_dims.size()]);
    const double mid = 0.5 * (cur.box.lower(k) + cur.box.upper(k));
    Box low = cur.box;
    Box high = cur.box;
    low.upper(k) = mid;
    high.lower(k) = mid;
    stack.push_back({std::move(high), cur.level + 1});
    stack.push_back({std::move(low), cur.level + 1});
  }

  auto lex = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  };
  std::sort(out.boxes.begin(), out.boxes.end(), [&](const Box& a, const Box& b) {
    if (lex(a.lower, b.lower)) return true;
    if (lex(b.lower, a.lower)) return false;
    return lex(a.upper, b.upper);
  });
  for (const Box& b : out.boxes) out.covered_volume += b.volume();
  for (const Box& b : out.boxes) out.weights.push_back(b.volume() / out.covered_volume);
  return out;
}

PriorSpec to_prior(const BoxPartition& partition) {
  if (partition.boxes.empty()) throw InputError("empty region: the partition has no boxes");
  auto product = [](const Box& b) {
    ProductPrior pp;
    for (Eigen::Index k = 0; k < b.lower.size(); ++k) pp.marginals.push_back(Uniform{b.lower(k), b.upper(k)});
    return pp;
  };
  if (partition.boxes.size() == 1) return product(partition.boxes.front());
  MixturePrior mix;
  for (std::size_t l = 0; l < partition.boxes.size(); ++l) {
    mix.components.push_back({partition.weights[l], product(partition.boxes[l])});
  }
  return mix;
}

}  // namespace activemars
