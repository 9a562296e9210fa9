#pragma once

// Rotationally symmetric metrics ds^2 = dr^2 + phi(r)^2 dtheta^2 on the closed
// unit (n-1)-disk, with the warping profile that makes the J = 0 profile curve
// asymptotic to the cylinder r = r1.

#include <array>
#include <iosfwd>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cmcfol {

// Value with its first two derivatives in r.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

struct ProfileParams {
  int n = 3;
  double H = 1.0;
  double r0 = 0.25;
  double r1 = 0.5;
  double r2 = 0.75;
};

// Throws PreconditionError unless n >= 3, H > 0 and 0 < r0 < r1 < r2 < 1.
void validate(const ProfileParams& p);

// Vol(S^k(1)).
double unit_sphere_volume(int k);

// phi(r) = e^{(n-1)/(n-2) H asin(r - r1)} / [1 - (r1 - r)^2]^{1/(2(n-2))}
// with analytic derivatives. Throws DomainError when 1 - (r1 - r)^2 <= 0.
Jet phi_closed_form(double r, int n, double H, double r1);

// e^{(n-1) H asin(r - r1)}, the antiderivative of (n-1) H phi^{n-2} for the
// closed-form phi.
double h_closed_form(double r, int n, double H, double r1);

class RadialProfile {
 public:
  enum class Piece { cap, explicit_form, blend, flat };

  // Fits the cap and the blend. The cap junction r0 is halved until the cap
  // is positive and keeps h / phi^{n-2} in [0, 1); the plateau value is
  // raised until phi' >= 0 on the blend.
  static RadialProfile build(const ProfileParams& params);

  static RadialProfile from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  int n() const { return n_; }
  double H() const { return H_; }
  double r0() const { return r0_; }
  double r1() const { return r1_; }
  double r2() const { return r2_; }
  double plateau() const { return plateau_; }
  ProfileParams params() const { return {n_, H_, r0_, r1_, r2_}; }
  const std::array<double, 5>& cap_coeffs() const { return cap_; }
  const std::array<double, 6>& blend_coeffs() const { return blend_; }

  Piece piece(double r) const;

  // Raw closed form, valid wherever 1 - (r1 - r)^2 > 0.
  Jet phi_explicit(double r) const;

  // Assembled profile on [0, 1].
  Jet eval(double r) const;
  // One piece's formula at r, regardless of which piece owns r.
  Jet eval_piece(Piece piece, double r) const;

  // int_0^r phi(u)^{n-2} du.
  double phi_power_integral(double r) const;

  // (n-1) H int_0^r phi^{n-2}; the second overload uses another mean
  // curvature with the same metric.
  double h(double r) const { return h(r, H_); }
  double h(double r, double H) const;

  // h / phi^{n-2}; equals sin(sigma) on the J = 0 branch.
  double graph_ratio(double r, double H) const;
  // sqrt(1 - ratio^2) = cos(sigma) on the J = 0 branch. On [r0, r1) with the
  // profile's own H the ratio is sqrt(1 - u^2) (1 + e), u = r1 - r and
  // e = cap_offset / h_closed, which avoids the cancellation in 1 - ratio^2
  // as r -> r1.
  double graph_cosine(double r, double H) const;

  double kappa_r(double r) const;
  double cylinder_H(double r) const;
  // Ric(d_r, d_r) = -(n-2) phi'' / phi for ds^2 + dz^2.
  double ricci_normal(double r) const;

  // (n-1) H int_0^{r0} phi_cap^{n-2} - h_closed_form(r0). Zero up to
  // quadrature error when the cap carries the right mass.
  double cap_offset() const { return cap_offset_; }

  // CSV with header r,phi,dphi,ddphi,h,kappa_r,cylinder_H on r = k/samples,
  // k = 1..samples.
  void write_csv(std::ostream& out, int samples) const;

 private:
  RadialProfile() = default;
  void finish_setup();

  Jet eval_cap(double r) const;
  Jet eval_blend(double r) const;

  int n_ = 3;
  double H_ = 1.0;
  double r0_ = 0.25;
  double r1_ = 0.5;
  double r2_ = 0.75;
  double plateau_ = 1.0;
  // phi = r * sum_k cap_[k] (r / r0)^{2k}
  std::array<double, 5> cap_{};
  // phi = sum_k blend_[k] ((r - r1) / (r2 - r1))^k
  std::array<double, 6> blend_{};

  // int_0^s (phi_cap / r0)^{n-2} and int_0^t phi_blend^{n-2} as polynomials
  std::vector<double> cap_primitive_;
  std::vector<double> blend_primitive_;
  double int_r0_ = 0.0;  // int_0^{r0} phi^{n-2}
  double int_r1_ = 0.0;
  double int_r2_ = 0.0;
  double cap_offset_ = 0.0;
};

}  // namespace cmcfol
