#include "cmcfol/turbularization.hpp"

#include <algorithm>
#include <cmath>

#include "cmcfol/errors.hpp"

namespace cmcfol {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double bump_derivative(double x) {
  return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}

}  // namespace

double flat_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double p = bump(x);
  const double q = bump(1.0 - x);
  return p / (p + q);
}

double flat_step_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double p = bump(x);
  const double q = bump(1.0 - x);
  const double dp = bump_derivative(x);
  const double dq = -bump_derivative(1.0 - x);
  return (dp * q - p * dq) / ((p + q) * (p + q));
}

TurbModelSurface::TurbModelSurface(double eps, int sigma_sign,
                                   double wrap_rate, int n, double period)
    : eps_(eps),
      sigma_sign_(sigma_sign),
      wrap_rate_(wrap_rate),
      n_(n),
      period_(period) {
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  if (sigma_sign != 1 && sigma_sign != -1)
    throw PreconditionError("sigma_sign must be +1 or -1");
  if (!(wrap_rate > 0.0)) throw PreconditionError("wrap_rate must be positive");
  if (n < 3) throw PreconditionError("model needs n >= 3");
  if (!(period > 0.0)) throw PreconditionError("period must be positive");
}

double TurbModelSurface::height(double rho) const {
  if (!(rho > inner_radius() && rho <= outer_radius()))
    throw DomainError("model surface lives over 4 eps < rho <= 8 eps");
  if (rho >= 6.0 * eps_) return 0.0;
  const double core = 1.0 / (rho - 4.0 * eps_) - 1.0 / (2.0 * eps_);
  return sigma_sign_ * wrap_rate_ * core *
         flat_step((6.0 * eps_ - rho) / (2.0 * eps_));
}

double TurbModelSurface::height_derivative(double rho) const {
  if (!(rho > inner_radius() && rho <= outer_radius()))
    throw DomainError("model surface lives over 4 eps < rho <= 8 eps");
  if (rho >= 6.0 * eps_) return 0.0;
  const double d = rho - 4.0 * eps_;
  const double core = 1.0 / d - 1.0 / (2.0 * eps_);
  const double x = (6.0 * eps_ - rho) / (2.0 * eps_);
  const double dcore = -1.0 / (d * d);
  const double dstep = -flat_step_derivative(x) / (2.0 * eps_);
  return sigma_sign_ * wrap_rate_ * (dcore * flat_step(x) + core * dstep);
}

double TurbModelSurface::tilt_to_cylinder(double rho) const {
  return std::atan2(1.0, std::abs(height_derivative(rho)));
}

bool TurbModelSurface::contains(const TurbPoint& p, double tol) const {
  if (static_cast<int>(p.x.size()) != n_ - 1) return false;
  double rr = 0.0;
  for (double c : p.x) rr += c * c;
  const double rho = std::sqrt(rr);
  if (!(rho > inner_radius() && rho <= outer_radius() * (1.0 + 1e-15)))
    return false;
  double d = std::fmod(p.t - height(std::min(rho, outer_radius())), period_);
  if (d < 0.0) d += period_;
  return std::min(d, period_ - d) <= tol * (1.0 + std::abs(p.t));
}

TurbPoint TurbModelSurface::point(double rho,
                                  const std::vector<double>& direction) const {
  if (static_cast<int>(direction.size()) != n_ - 1)
    throw PreconditionError("direction must have n-1 components");
  double norm = 0.0;
  for (double c : direction) norm += c * c;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw PreconditionError("direction must be nonzero");
  TurbPoint out;
  out.x.resize(direction.size());
  for (std::size_t k = 0; k < direction.size(); ++k)
    out.x[k] = rho * direction[k] / norm;
  out.t = height(rho);
  return out;
}

}  // namespace cmcfol
