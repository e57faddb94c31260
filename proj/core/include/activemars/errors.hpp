#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace activemars {

/// Malformed or invariant-violating input (files, configs, model/prior pairs).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& routine, double x, double a, double b);

  double x() const noexcept { return x_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

 private:
  double x_, a_, b_;
};

/// A gradient was requested exactly on the knot of an active hinge term.
/// The surrogate is not differentiable there; callers may perturb and retry.
class KnotBoundary : public std::domain_error {
 public:
  KnotBoundary(std::size_t input, double knot);

  std::size_t input() const noexcept { return input_; }
  double knot() const noexcept { return knot_; }

 private:
  std::size_t input_;
  double knot_;
};

}  // namespace activemars
