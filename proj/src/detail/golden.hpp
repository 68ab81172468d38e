#pragma once

#include <cmath>
#include <utility>

namespace ringsqz::detail {

// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
// Returns (argmax, max). Stops once the bracket is narrower than `tol`.
template <class F>
std::pair<double, double> golden_maximize(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 < f2 ? std::pair{x2, f2} : std::pair{x1, f1};
}

}  // namespace ringsqz::detail
