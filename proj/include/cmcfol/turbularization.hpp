#pragma once

// Local model of a turbularized leaf in D(8 eps) x S^1: the rotationally
// invariant graph t = T(rho) over the annulus 4 eps < rho <= 8 eps, flat on
// [6 eps, 8 eps] and spiralling onto the cylinder rho = 4 eps.

#include <array>
#include <vector>

namespace cmcfol {

// Smooth step built from e^{-1/x}: 0 for x <= 0, 1 for x >= 1, all
// derivatives vanish at both ends.
double flat_step(double x);
double flat_step_derivative(double x);

struct TurbPoint {
  std::vector<double> x;  // point of the (n-1)-disk, |x| = rho
  double t = 0.0;         // coordinate along the S^1 factor (unwrapped)
};

class TurbModelSurface {
 public:
  // sigma_sign is +1 or -1. period is the length of the S^1 factor.
  TurbModelSurface(double eps, int sigma_sign, double wrap_rate, int n = 3,
                   double period = 1.0);

  double eps() const { return eps_; }
  int sigma_sign() const { return sigma_sign_; }
  double wrap_rate() const { return wrap_rate_; }
  int n() const { return n_; }
  double period() const { return period_; }
  double inner_radius() const { return 4.0 * eps_; }
  double outer_radius() const { return 8.0 * eps_; }

  // T(rho) for rho in (4 eps, 8 eps]. Throws DomainError otherwise.
  double height(double rho) const;
  double height_derivative(double rho) const;

  // Angle between the surface and the cylinder rho = const through the same
  // point, atan(1 / |T'|); tends to 0 at the inner boundary.
  double tilt_to_cylinder(double rho) const;

  // Radial distance from the surface point at rho to the limit cylinder.
  double distance_to_limit(double rho) const { return rho - inner_radius(); }

  // Point lies on the surface modulo the period of the S^1 factor.
  bool contains(const TurbPoint& p, double tol = 1e-9) const;

  TurbPoint point(double rho, const std::vector<double>& direction) const;

 private:
  double eps_;
  int sigma_sign_;
  double wrap_rate_;
  int n_;
  double period_;
};

}  // namespace cmcfol
