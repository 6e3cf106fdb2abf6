#pragma once

// Small numerical building blocks: Richardson-refined central differences
// and golden-section search.

#include <cmath>
#include <functional>

namespace qmetro {

// One Richardson step on the central difference:
//   D(h) = (f(x+h) - f(x-h)) / 2h,   result = (4 D(h/2) - D(h)) / 3.
// The vector form takes any f returning an Eigen vector.
template <class F>
auto richardson_derivative_vector(F&& f, double x, double h) {
  const auto wide = ((f(x + h) - f(x - h)) / (2.0 * h)).eval();
  const auto narrow = ((f(x + 0.5 * h) - f(x - 0.5 * h)) / h).eval();
  return ((4.0 * narrow - wide) / 3.0).eval();
}

inline double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  const double wide = (f(x + h) - f(x - h)) / (2.0 * h);
  const double narrow = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * narrow - wide) / 3.0;
}

struct MinimumResult {
  double x;
  double value;
};

// Golden-section minimization of f on [lo, hi] until the bracket is narrower
// than `width`.  Assumes f is unimodal on the bracket.
inline MinimumResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                             double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

// Uniform grid scan followed by golden-section refinement inside the
// neighbouring cells of the best grid point.  The grid point wins ties, so a
// flat objective returns the first grid point.
inline MinimumResult grid_then_golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                                               int grid_points, double width) {
  const double step = grid_points > 1 ? (hi - lo) / (grid_points - 1) : 0.0;
  int best = 0;
  double best_val = f(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(lo + i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double x_best = lo + best * step;
  if (grid_points < 2) return {x_best, best_val};
  const double a = std::max(lo, x_best - step);
  const double b = std::min(hi, x_best + step);
  const MinimumResult refined = golden_section_minimize(f, a, b, width);
  if (refined.value < best_val) return refined;
  return {x_best, best_val};
}

}  // namespace qmetro
