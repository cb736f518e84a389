#pragma once

#include <cmath>

#include "kruskal/errors.hpp"

namespace kruskal {

// Root of an increasing function on [lo, hi] with f(lo) < 0 <= f(hi).
// Halves the bracket until it stops shrinking in double precision or its
// width drops below `tol`.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, double tol = 0.0) {
  if (!(lo < hi)) throw InvalidParameter("bisection needs lo < hi");
  if (!(f(lo) < 0.0) || !(f(hi) >= 0.0)) throw NumericalFailure("bisection bracket does not straddle the root");
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= tol) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

}  // namespace kruskal
