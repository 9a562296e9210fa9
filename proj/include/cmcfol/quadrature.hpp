#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cmcfol {

// Adaptive 31-point Gauss-Kronrod on [a, b], relative tolerance `tol`.
// Boost compares the Kronrod-Gauss gap of the rule on [-1, 1] against a
// tolerance that carries the interval half-width, so on short intervals the
// request drops below its 2 eps floor and bisection runs to full depth. The
// integral is therefore always handed over on [-1, 1].
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12,
                 unsigned max_depth = 12) {
  if (a == b) return 0.0;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) { return half * f(mid + half * t); }, -1.0, 1.0,
      max_depth, tol);
}

}  // namespace cmcfol
