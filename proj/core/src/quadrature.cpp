#include "activemars/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "activemars/errors.hpp"

namespace activemars::quadrature {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  int segment;
  double lo, hi, value, error;
  double floor = 0.0;  // roundoff level; splitting cannot go below it
  bool operator<(const Piece& o) const { return error < o.error; }
};

// One 15-point Kronrod panel with the QUADPACK error heuristic.
void kronrod(const std::function<double(double)>& g, Piece& piece) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (piece.lo + piece.hi);
  const double half = 0.5 * (piece.hi - piece.lo);
  const double fc = g(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  double f1[7], f2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  piece.value = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > tiny / (50.0 * eps)) {
    piece.floor = 50.0 * eps * resabs;
    err = std::max(piece.floor, err);
  }
  piece.error = err;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& options,
                 const std::vector<double>& breakpoints) {
  if (std::isnan(a) || std::isnan(b)) throw InputError("quadrature bounds must not be NaN");
  if (a == b) return {};
  if (a > b) {
    Result r = integrate(f, b, a, options, breakpoints);
    r.value = -r.value;
    return r;
  }

  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b && std::isfinite(x)) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (std::isinf(a) && std::isinf(b) && cuts.size() == 1) cuts.push_back(0.0);
  cuts.push_back(b);

  // Each segment becomes an integrand on a finite interval.
  std::vector<std::function<double(double)>> segments;
  std::vector<std::pair<double, double>> ranges;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (std::isinf(lo)) {
      segments.emplace_back([&f, hi](double t) {
        const double s = 1.0 - t;
        return f(hi - t / s) / (s * s);
      });
      ranges.emplace_back(0.0, 1.0);
    } else if (std::isinf(hi)) {
      segments.emplace_back([&f, lo](double t) {
        const double s = 1.0 - t;
        return f(lo + t / s) / (s * s);
      });
      ranges.emplace_back(0.0, 1.0);
    } else {
      segments.emplace_back([&f](double x) { return f(x); });
      ranges.emplace_back(lo, hi);
    }
  }

  Result out;
  std::priority_queue<Piece> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    Piece p{static_cast<int>(k), ranges[k].first, ranges[k].second, 0.0, 0.0};
    kronrod(segments[k], p);
    out.evaluations += 15;
    total += p.value;
    total_error += p.error;
    heap.push(p);
  }

  std::size_t splits = 0;
  while (total_error > std::max(options.abs_tol, options.rel_tol * std::fabs(total))) {
    if (splits >= options.max_subdivisions) {
      throw ConvergenceError("adaptive quadrature", total_error, a, b);
    }
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // interval exhausted at machine precision
    if (worst.error <= worst.floor) break;             // largest error is already roundoff
    heap.pop();
    Piece left{worst.segment, worst.lo, mid, 0.0, 0.0};
    Piece right{worst.segment, mid, worst.hi, 0.0, 0.0};
    kronrod(segments[static_cast<std::size_t>(worst.segment)], left);
    kronrod(segments[static_cast<std::size_t>(worst.segment)], right);
    out.evaluations += 30;
    heap.push(left);
    heap.push(right);
    ++splits;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
  }
  // Final sum over the pieces to drop the drift of the running totals.
  total = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_error;
  return out;
}

}  // namespace activemars::quadrature
