#pragma once

// Profile curves Gamma(s) = (r(s), z(s)) of SO(n-1)-invariant hypersurfaces in
// (D x R, ds^2 + dz^2): the ODE for constant mean curvature H, its first
// integral, and the J = 0 graphical solution.

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cmcfol/radial_metric.hpp"

namespace cmcfol {

// sigma is the angle of the unit tangent with d_r, kept unwrapped.
struct ProfileState {
  double s = 0.0;
  double r = 0.0;
  double z = 0.0;
  double sigma = 0.0;
};

struct ProfileRates {
  double dr = 0.0;
  double dz = 0.0;
  double dsigma = 0.0;
};

// (cos sigma, sin sigma, (n-1)H - (n-2) (phi'/phi) sin sigma).
// Throws DomainError for r <= 0.
ProfileRates ode_rhs(const ProfileState& state, const RadialProfile& profile,
                     double H);

// J = phi(r)^{n-2} sin sigma - h(r).
double first_integral(const ProfileState& state, const RadialProfile& profile,
                      double H);

// Stops are checked in the order axis, r_above, z_above, max_s, sigma; the
// earliest crossing wins and ties go to the earlier rule.
struct StopRule {
  double r_below = 1e-6;  // axis
  double r_above = 1.0;
  double z_above = std::numeric_limits<double>::infinity();
  double max_s = std::numeric_limits<double>::infinity();
  std::optional<double> sigma_reaches;

  static StopRule until_s(double s) {
    StopRule rule;
    rule.max_s = s;
    return rule;
  }
};

enum class StopReason { axis, r_above, z_above, max_s, sigma_reached, axis_approach };

std::string to_string(StopReason reason);

struct Trajectory {
  std::vector<ProfileState> states;
  std::vector<double> J;  // first integral at each state
  double H = 0.0;
  double J0 = 0.0;
  double max_J_drift = 0.0;
  StopReason stop_reason = StopReason::max_s;
  int n_steps = 0;

  const ProfileState& back() const { return states.back(); }
  std::size_t size() const { return states.size(); }
};

// CSV with header s,r,z,sigma,J.
void write_csv(const Trajectory& trajectory, std::ostream& out);
// {J0, max_J_drift, stop_reason, n_steps}
nlohmann::json summary_json(const Trajectory& trajectory);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 0.05;
  int max_steps = 2000000;
};

// Dormand-Prince 5(4) with PI step control.
Trajectory integrate(const ProfileState& start, const RadialProfile& profile,
                     double H, const StopRule& stop,
                     const IntegratorOptions& options = {});

// dz/dr on the J = 0 branch. Throws DomainError once h/phi^{n-2} >= 1.
double graph_slope(double r, const RadialProfile& profile, double H);

// J = 0 graph z(r) with z(0) = 0 sampled on [0, r_stop]; s is arclength and
// sigma = atan(dz/dr). Requires r_stop < r1.
Trajectory graph_integrate(const RadialProfile& profile, double H,
                           double r_stop, int samples = 4000);

// Length of the J = 0 graph between radii a <= b < r1.
double arc_length(const RadialProfile& profile, double H, double a, double b);
double arc_length(const Trajectory& trajectory);

// Mirror across the horizontal line z = z_line with the tangent angle
// reflected about sigma_line (an odd multiple of pi/2). Order is reversed so
// s stays increasing; s is re-based to start at s_start.
Trajectory mirror(const Trajectory& trajectory, double z_line,
                  double sigma_line, double s_start);

// Appends the reflection of the trajectory across z = z(end). The end
// tangent must be vertical (sigma = pi/2 mod pi within 1e-8).
Trajectory reflect_extend(const Trajectory& trajectory);

// Scalar flux of d_z across the SO(n-1)-orbit through the state, computed
// from the conormal term and an independent quadrature over the horizontal
// disk. Equals Vol(S^{n-2}) * J.
double flux_revolution(const ProfileState& state, const RadialProfile& profile,
                       double H);

}  // namespace cmcfol
