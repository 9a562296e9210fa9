#include "cmcfol/radial_metric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <nlohmann/json.hpp>

#include "cmcfol/errors.hpp"
#include "cmcfol/quadrature.hpp"

namespace cmcfol {

namespace {

constexpr int kShapeGrid = 10000;
constexpr int kMaxHalvings = 12;
constexpr int kMaxPlateauRaises = 400;

double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

// Polynomial with value/first/second derivative.
std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Coefficients of int_0^t p(u)^k du.
std::vector<double> power_primitive(const std::vector<double>& p, int k) {
  std::vector<double> pk{1.0};
  for (int i = 0; i < k; ++i) pk = poly_mul(pk, p);
  std::vector<double> out(pk.size() + 1, 0.0);
  for (std::size_t i = 0; i < pk.size(); ++i) out[i + 1] = pk[i] / (i + 1);
  return out;
}

double horner(const std::vector<double>& c, double t) {
  double out = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * t + *it;
  return out;
}

Jet poly_jet(const double* c, int size, double t) {
  Jet j;
  for (int k = size - 1; k >= 0; --k) {
    j.d2 = j.d2 * t + 2.0 * j.d1;
    j.d1 = j.d1 * t + j.value;
    j.value = j.value * t + c[k];
  }
  return j;
}

// Cap coefficients p(tau) = 1 + d1 tau + d2 tau^2 + d3 tau^3 + d4 tau^4 with
// phi = r p((r/r0)^2) matching the target jet at r0, for a given d4.
std::array<double, 5> fit_cap(const Jet& target, double r0, double d4) {
  // p(1) = P, p'(1) = D1, p''(1) = D2 in tau
  const double P = target.value / r0;
  const double D1 = 0.5 * (target.d1 - P);
  const double D2 = 0.5 * (0.5 * r0 * target.d2 - 3.0 * D1);
  // [1 1 1; 1 2 3; 0 2 6] [d1 d2 d3]^T = rhs
  const double b1 = P - 1.0 - d4;
  const double b2 = D1 - 4.0 * d4;
  const double b3 = D2 - 12.0 * d4;
  // Cramer on the fixed 3x3 system (determinant 2).
  const double d3 = (b3 - 2.0 * (b2 - b1)) / 2.0;
  const double d2 = b2 - b1 - 2.0 * d3;
  const double d1 = b1 - d2 - d3;
  return {1.0, d1, d2, d3, d4};
}

Jet cap_jet(const std::array<double, 5>& c, double r0, double r) {
  const double tau = (r / r0) * (r / r0);
  const Jet p = poly_jet(c.data(), 5, tau);
  const double dtau = 2.0 * r / (r0 * r0);
  Jet out;
  out.value = r * p.value;
  out.d1 = p.value + 2.0 * tau * p.d1;
  out.d2 = dtau * (3.0 * p.d1 + 2.0 * tau * p.d2);
  return out;
}

// Quintic Hermite coefficients in t in [0, 1] through (p0, m0, a0) and
// (p1, m1, a1), derivatives taken in t.
std::array<double, 6> quintic_hermite(double p0, double m0, double a0,
                                      double p1, double m1, double a1) {
  const double A = p1 - p0 - m0 - 0.5 * a0;
  const double B = m1 - m0 - a0;
  const double C = a1 - a0;
  return {p0,
          m0,
          0.5 * a0,
          10.0 * A - 4.0 * B + 0.5 * C,
          -15.0 * A + 7.0 * B - C,
          6.0 * A - 3.0 * B + 0.5 * C};
}

}  // namespace

void validate(const ProfileParams& p) {
  if (p.n < 3) throw PreconditionError("dimension n must be >= 3");
  if (!(p.H > 0.0)) throw PreconditionError("H must be positive");
  if (!(p.r0 > 0.0 && p.r0 < p.r1))
    throw PreconditionError("r0 must lie in (0, r1)");
  if (!(p.r1 > 0.0 && p.r1 < p.r2))
    throw PreconditionError("r1 must lie in (0, r2)");
  if (!(p.r2 < 1.0)) throw PreconditionError("r2 must lie in (r1, 1)");
}

double unit_sphere_volume(int k) {
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(M_PI, half) / boost::math::tgamma(half);
}

Jet phi_closed_form(double r, int n, double H, double r1) {
  const double u = r - r1;
  const double q = 1.0 - u * u;
  if (!(q > 0.0) || std::abs(u) >= 1.0)
    throw DomainError("closed-form profile undefined: 1 - (r1 - r)^2 <= 0");
  const double a = (n - 1) * H / (n - 2);
  const double b = 1.0 / (2.0 * (n - 2));
  const double sq = std::sqrt(q);
  const double value = std::exp(a * std::asin(u)) / std::pow(q, b);
  // log-derivatives
  const double L1 = a / sq + 2.0 * b * u / q;
  const double L2 = a * u / (q * sq) + 2.0 * b * (1.0 + u * u) / (q * q);
  return {value, value * L1, value * (L1 * L1 + L2)};
}

double h_closed_form(double r, int n, double H, double r1) {
  const double u = r - r1;
  if (std::abs(u) > 1.0) throw DomainError("asin argument outside [-1, 1]");
  return std::exp((n - 1) * H * std::asin(u));
}

RadialProfile RadialProfile::build(const ProfileParams& params) {
  validate(params);
  RadialProfile prof;
  prof.n_ = params.n;
  prof.H_ = params.H;
  prof.r1_ = params.r1;
  prof.r2_ = params.r2;
  const int n = params.n;
  const double H = params.H;

  // Cap: the extra coefficient carries the mass int_0^{r0} phi^{n-2} needed
  // for h to continue as the closed form on [r0, r1).
  double r0 = params.r0;
  bool cap_ok = false;
  for (int attempt = 0; attempt <= kMaxHalvings && !cap_ok; ++attempt) {
    const Jet target = phi_closed_form(r0, n, H, params.r1);
    const double mass = h_closed_form(r0, n, H, params.r1) / ((n - 1) * H);
    auto residual = [&](double d4) {
      const auto c = fit_cap(target, r0, d4);
      return integrate(
                 [&](double r) { return ipow(cap_jet(c, r0, r).value, n - 2); },
                 0.0, r0) -
             mass;
    };
    // bracket by expansion around zero
    double lo = -1.0, hi = 1.0;
    double flo = residual(lo), fhi = residual(hi);
    int expansions = 0;
    while (flo * fhi > 0.0 && expansions < 60) {
      lo *= 2.0;
      hi *= 2.0;
      flo = residual(lo);
      fhi = residual(hi);
      ++expansions;
    }
    if (flo * fhi > 0.0) {
      r0 *= 0.5;
      continue;
    }
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, flo, fhi,
                                                    tol, iters);
    const double d4 = std::abs(residual(a)) < std::abs(residual(b)) ? a : b;
    const auto coeffs = fit_cap(target, r0, d4);

    // a posteriori shape checks on the cap grid
    bool ok = true;
    double running = 0.0;
    double prev_r = 0.0;
    double prev_pow = 0.0;
    for (int k = 1; k <= kShapeGrid && ok; ++k) {
      const double r = r0 * k / kShapeGrid;
      const double phi = cap_jet(coeffs, r0, r).value;
      if (!(phi > 0.0)) {
        ok = false;
        break;
      }
      const double pw = ipow(phi, n - 2);
      running += 0.5 * (pw + prev_pow) * (r - prev_r);
      prev_r = r;
      prev_pow = pw;
      const double ratio = (n - 1) * H * running / pw;
      if (!(ratio >= 0.0 && ratio < 1.0)) ok = false;
    }
    if (ok) {
      prof.r0_ = r0;
      prof.cap_ = coeffs;
      cap_ok = true;
    } else {
      r0 *= 0.5;
    }
  }
  if (!cap_ok)
    throw PreconditionError("no admissible cap found for these parameters");

  // Blend on [r1, r2] up to a constant plateau, raised until monotone.
  const Jet at_r1 = phi_closed_form(params.r1, n, H, params.r1);
  const double L = params.r2 - params.r1;
  double plateau = 1.05 * at_r1.value;
  bool blend_ok = false;
  for (int attempt = 0; attempt < kMaxPlateauRaises && !blend_ok; ++attempt) {
    const auto c = quintic_hermite(at_r1.value, L * at_r1.d1, L * L * at_r1.d2,
                                   plateau, 0.0, 0.0);
    bool ok = true;
    for (int k = 0; k <= kShapeGrid; ++k) {
      const double t = static_cast<double>(k) / kShapeGrid;
      if (poly_jet(c.data(), 6, t).d1 < 0.0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      prof.blend_ = c;
      prof.plateau_ = plateau;
      blend_ok = true;
    } else {
      plateau += 0.05 * at_r1.value;
    }
  }
  if (!blend_ok)
    throw PreconditionError("no monotone blend found for these parameters");

  prof.finish_setup();
  return prof;
}

void RadialProfile::finish_setup() {
  const int n = n_;
  // phi^{n-2} is a polynomial on the cap and on the blend; integrate exactly
  std::vector<double> cap_poly(10, 0.0);  // phi / r0 in s = r / r0
  for (int k = 0; k < 5; ++k) cap_poly[2 * k + 1] = cap_[k];
  cap_primitive_ = power_primitive(cap_poly, n - 2);
  blend_primitive_ =
      power_primitive(std::vector<double>(blend_.begin(), blend_.end()), n - 2);
  int_r0_ = ipow(r0_, n - 1) * horner(cap_primitive_, 1.0);
  int_r1_ = int_r0_ + (h_closed_form(r1_, n, H_, r1_) -
                       h_closed_form(r0_, n, H_, r1_)) /
                          ((n - 1) * H_);
  int_r2_ = int_r1_ + (r2_ - r1_) * horner(blend_primitive_, 1.0);
  cap_offset_ =
      (n - 1) * H_ * int_r0_ - h_closed_form(r0_, n, H_, r1_);
}

RadialProfile RadialProfile::from_json(const nlohmann::json& doc) {
  RadialProfile prof;
  ProfileParams p;
  p.n = doc.at("n").get<int>();
  p.H = doc.at("H").get<double>();
  p.r0 = doc.at("r0").get<double>();
  p.r1 = doc.at("r1").get<double>();
  p.r2 = doc.at("r2").get<double>();
  validate(p);
  prof.n_ = p.n;
  prof.H_ = p.H;
  prof.r0_ = p.r0;
  prof.r1_ = p.r1;
  prof.r2_ = p.r2;
  const auto cap = doc.at("cap_coeffs").get<std::vector<double>>();
  const auto blend = doc.at("blend_coeffs").get<std::vector<double>>();
  if (cap.size() != prof.cap_.size() || blend.size() != prof.blend_.size())
    throw PreconditionError("profile document has wrong coefficient counts");
  std::copy(cap.begin(), cap.end(), prof.cap_.begin());
  std::copy(blend.begin(), blend.end(), prof.blend_.begin());
  prof.plateau_ = doc.at("c").get<double>();
  prof.finish_setup();
  return prof;
}

nlohmann::json RadialProfile::to_json() const {
  nlohmann::json doc;
  doc["n"] = n_;
  doc["H"] = H_;
  doc["r0"] = r0_;
  doc["r1"] = r1_;
  doc["r2"] = r2_;
  doc["cap_coeffs"] = std::vector<double>(cap_.begin(), cap_.end());
  doc["blend_coeffs"] = std::vector<double>(blend_.begin(), blend_.end());
  doc["c"] = plateau_;
  return doc;
}

RadialProfile::Piece RadialProfile::piece(double r) const {
  if (r <= r0_) return Piece::cap;
  if (r <= r1_) return Piece::explicit_form;
  if (r < r2_) return Piece::blend;
  return Piece::flat;
}

Jet RadialProfile::phi_explicit(double r) const {
  return phi_closed_form(r, n_, H_, r1_);
}

Jet RadialProfile::eval_cap(double r) const { return cap_jet(cap_, r0_, r); }

Jet RadialProfile::eval_blend(double r) const {
  const double L = r2_ - r1_;
  const Jet p = poly_jet(blend_.data(), 6, (r - r1_) / L);
  return {p.value, p.d1 / L, p.d2 / (L * L)};
}

Jet RadialProfile::eval(double r) const {
  if (!(r >= 0.0 && r <= 1.0))
    throw DomainError("profile evaluated outside [0, 1]");
  return eval_piece(piece(r), r);
}

Jet RadialProfile::eval_piece(Piece which, double r) const {
  switch (which) {
    case Piece::cap:
      return eval_cap(r);
    case Piece::explicit_form:
      return phi_explicit(r);
    case Piece::blend:
      return eval_blend(r);
    case Piece::flat:
      break;
  }
  return {plateau_, 0.0, 0.0};
}

double RadialProfile::phi_power_integral(double r) const {
  if (!(r >= 0.0 && r <= 1.0))
    throw DomainError("profile evaluated outside [0, 1]");
  const int n = n_;
  switch (piece(r)) {
    case Piece::cap:
      return ipow(r0_, n - 1) * horner(cap_primitive_, r / r0_);
    case Piece::explicit_form:
      return int_r0_ + (h_closed_form(r, n, H_, r1_) -
                        h_closed_form(r0_, n, H_, r1_)) /
                           ((n - 1) * H_);
    case Piece::blend:
      return int_r1_ +
             (r2_ - r1_) * horner(blend_primitive_, (r - r1_) / (r2_ - r1_));
    case Piece::flat:
      break;
  }
  return int_r2_ + ipow(plateau_, n - 2) * (r - r2_);
}

double RadialProfile::h(double r, double H) const {
  return (n_ - 1) * H * phi_power_integral(r);
}

double RadialProfile::graph_ratio(double r, double H) const {
  const double phi = eval(r).value;
  if (r == 0.0) return 0.0;
  return h(r, H) / ipow(phi, n_ - 2);
}

double RadialProfile::graph_cosine(double r, double H) const {
  if (H == H_ && piece(r) == Piece::explicit_form && r < r1_) {
    const double u = r1_ - r;
    const double e = cap_offset_ / h_closed_form(r, n_, H_, r1_);
    const double c2 = u * u - (1.0 - u) * (1.0 + u) * e * (2.0 + e);
    return c2 > 0.0 ? std::sqrt(c2) : 0.0;
  }
  const double ratio = graph_ratio(r, H);
  const double c2 = (1.0 - ratio) * (1.0 + ratio);
  return c2 > 0.0 ? std::sqrt(c2) : 0.0;
}

double RadialProfile::kappa_r(double r) const {
  if (!(r > 0.0)) throw DomainError("kappa_r undefined on the axis r = 0");
  const Jet j = eval(r);
  return j.d1 / j.value;
}

double RadialProfile::cylinder_H(double r) const {
  return static_cast<double>(n_ - 2) / (n_ - 1) * kappa_r(r);
}

double RadialProfile::ricci_normal(double r) const {
  if (!(r > 0.0)) throw DomainError("ricci_normal undefined on the axis r = 0");
  const Jet j = eval(r);
  return -(n_ - 2) * j.d2 / j.value;
}

void RadialProfile::write_csv(std::ostream& out, int samples) const {
  if (samples < 1) throw PreconditionError("need at least one sample");
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "r,phi,dphi,ddphi,h,kappa_r,cylinder_H\n";
  for (int k = 1; k <= samples; ++k) {
    const double r = static_cast<double>(k) / samples;
    const Jet j = eval(r);
    buf << r << ',' << j.value << ',' << j.d1 << ',' << j.d2 << ',' << h(r)
        << ',' << kappa_r(r) << ',' << cylinder_H(r) << '\n';
  }
  out << buf.str();
}

}  // namespace cmcfol
