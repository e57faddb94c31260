#include "activemars/errors.hpp"

#include <sstream>

namespace activemars {

namespace {
std::string convergence_message(const std::string& routine, double x, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << routine << " did not converge at (x=" << x << ", a=" << a << ", b=" << b << ")";
  return os.str();
}

std::string knot_message(std::size_t input, double knot) {
  std::ostringstream os;
  os.precision(17);
  os << "gradient undefined: input " << input << " lies on knot " << knot;
  return os.str();
}
}  // namespace

ConvergenceError::ConvergenceError(const std::string& routine, double x, double a, double b)
    : std::runtime_error(convergence_message(routine, x, a, b)), x_(x), a_(a), b_(b) {}

KnotBoundary::KnotBoundary(std::size_t input, double knot)
    : std::domain_error(knot_message(input, knot)), input_(input), knot_(knot) {}

}  // namespace activemars
