#include "cmcfol/reeb_foliation.hpp"

#include <algorithm>
#include <cmath>

#include "cmcfol/errors.hpp"
#include "cmcfol/quadrature.hpp"

namespace cmcfol {

namespace {

constexpr int kCapKnots = 64;

double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

double wrap(double z, double period) {
  double out = std::fmod(z, period);
  if (out < 0.0) out += period;
  if (out >= period) out -= period;
  return out;
}

}  // namespace

double graph_height_primitive(double v) {
  const double w = std::sqrt((1.0 - v) * (1.0 + v));
  return w - std::log1p(w) + std::log(v);
}

EnlargedReebComponent EnlargedReebComponent::build(const ProfileParams& params,
                                                   double lambda) {
  return EnlargedReebComponent(RadialProfile::build(params), lambda);
}

EnlargedReebComponent::EnlargedReebComponent(RadialProfile profile,
                                             double lambda)
    : profile_(std::move(profile)), lambda_(lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("lambda must be positive");
  const double r0 = profile_.r0();
  const double H = profile_.H();
  knot_r_.resize(kCapKnots + 1);
  knot_z_.resize(kCapKnots + 1);
  knot_r_[0] = 0.0;
  knot_z_[0] = 0.0;
  for (int k = 1; k <= kCapKnots; ++k) {
    knot_r_[k] = r0 * k / kCapKnots;
    knot_z_[k] = knot_z_[k - 1] +
                 integrate([&](double u) { return graph_slope(u, profile_, H); },
                           knot_r_[k - 1], knot_r_[k]);
  }
  knot_r_.back() = r0;
  z_r0_ = knot_z_.back();
}

double EnlargedReebComponent::z_graph(double r) const {
  const double r0 = profile_.r0();
  const double r1 = profile_.r1();
  if (!(r >= 0.0 && r < r1))
    throw DomainError("graph height is defined only on [0, r1)");
  if (r <= r0) {
    const auto it = std::upper_bound(knot_r_.begin(), knot_r_.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - knot_r_.begin()) - 1;
    const double H = profile_.H();
    return knot_z_[k] +
           integrate([&](double u) { return graph_slope(u, profile_, H); },
                     knot_r_[k], r);
  }
  return z_r0_ + graph_height_primitive(r1 - r0) -
         graph_height_primitive(r1 - r);
}

double EnlargedReebComponent::sigma_graph(double r) const {
  return std::atan2(profile_.graph_ratio(r, profile_.H()),
                    profile_.graph_cosine(r, profile_.H()));
}

Leaf EnlargedReebComponent::graph_leaf(double z0) const {
  return {GraphLeaf{wrap(z0, lambda_)}, profile_.H()};
}

Leaf EnlargedReebComponent::cylinder_leaf(double r) const {
  if (!(r >= profile_.r1() && r <= 1.0))
    throw PreconditionError("cylinder leaves have radius in [r1, 1]");
  return {CylinderLeaf{r}, profile_.cylinder_H(r)};
}

Leaf EnlargedReebComponent::leaf_at_point(double r, double z) const {
  if (!(r >= 0.0 && r <= 1.0))
    throw PreconditionError("points of the component have r in [0, 1]");
  if (r >= profile_.r1()) return cylinder_leaf(r);
  return graph_leaf(z - z_graph(r));
}

bool EnlargedReebComponent::contains(const Leaf& leaf, double r, double z,
                                     double tol) const {
  if (leaf.is_graph()) {
    if (!(r >= 0.0 && r < profile_.r1())) return false;
    const double d = wrap(z - z_graph(r) - leaf.z0(), lambda_);
    return std::min(d, lambda_ - d) <= tol;
  }
  return std::abs(r - leaf.radius()) <= tol;
}

CurvatureSpread EnlargedReebComponent::leaf_mean_curvature(const Leaf& leaf,
                                                           int samples) const {
  if (samples < 2) throw PreconditionError("need at least two samples");
  const int n = profile_.n();
  CurvatureSpread out;
  out.samples = samples;
  if (!leaf.is_graph()) {
    // sigma = pi/2 and sigma-dot = 0 along a vertical line
    const double value =
        (n - 2) * profile_.kappa_r(leaf.radius()) * std::sin(M_PI / 2) /
        (n - 1);
    out.min = out.max = out.mean = value;
    return out;
  }
  const double r1 = profile_.r1();
  const double lo = 1e-3;
  const double hi = r1 - 1e-3;
  const double step = 1e-6;
  double sum = 0.0;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double r = lo + (hi - lo) * k / (samples - 1);
    // cos(sigma) dsigma/dr = d(sin sigma)/dr, which stays smooth as r -> r1
    const double sigma = sigma_graph(r);
    const double kappa_gamma = (std::sin(sigma_graph(r + step)) -
                                std::sin(sigma_graph(r - step))) /
                               (2.0 * step);
    const double value =
        ((n - 2) * profile_.kappa_r(r) * std::sin(sigma) + kappa_gamma) /
        (n - 1);
    out.min = std::min(out.min, value);
    out.max = std::max(out.max, value);
    sum += value;
  }
  out.mean = sum / samples;
  return out;
}

double EnlargedReebComponent::mean_curvature_at_radius(double r) const {
  if (r < profile_.r1()) return profile_.H();
  return profile_.cylinder_H(r);
}

double EnlargedReebComponent::cylinder_volume(double delta) const {
  return cmcfol::cylinder_volume(profile_, delta, lambda_);
}

double cylinder_volume(const RadialProfile& profile, double delta,
                       double lambda) {
  if (!(delta >= profile.r2() && delta <= 1.0))
    throw DomainError("cylinder volume is prescribed only for delta in [r2, 1]");
  return lambda * ipow(profile.eval(delta).value, profile.n() - 2) *
         unit_sphere_volume(profile.n() - 2);
}

double choose_lambda(double target_volume, const RadialProfile& profile) {
  if (!(target_volume > 0.0))
    throw PreconditionError("target volume must be positive");
  return target_volume / cylinder_volume(profile, profile.r2(), 1.0);
}

}  // namespace cmcfol
