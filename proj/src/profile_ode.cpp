#include "cmcfol/profile_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmcfol/errors.hpp"
#include "cmcfol/quadrature.hpp"

namespace cmcfol {

namespace {

using Vec3 = std::array<double, 3>;  // (r, z, sigma)

double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

// phi'/phi, continued as 0 past r = 1 (phi is constant on [r2, 1]).
std::optional<double> log_derivative(const RadialProfile& profile, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) return std::nullopt;
  if (r >= 1.0) return 0.0;
  return profile.kappa_r(r);
}

std::optional<Vec3> rates(const Vec3& y, const RadialProfile& profile,
                          double H) {
  const auto kappa = log_derivative(profile, y[0]);
  if (!kappa) return std::nullopt;
  const double sn = std::sin(y[2]);
  return Vec3{std::cos(y[2]), sn,
              (profile.n() - 1) * H - (profile.n() - 2) * *kappa * sn};
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
  Vec3 y;
  Vec3 err;
};

std::optional<StepResult> dp_step(const Vec3& y, double h,
                                  const RadialProfile& profile, double H) {
  auto axpy = [&](std::initializer_list<std::pair<double, const Vec3*>> terms) {
    Vec3 out = y;
    for (const auto& [coef, k] : terms)
      for (int i = 0; i < 3; ++i) out[i] += h * coef * (*k)[i];
    return out;
  };
  const auto k1 = rates(y, profile, H);
  if (!k1) return std::nullopt;
  const auto k2 = rates(axpy({{a21, &*k1}}), profile, H);
  if (!k2) return std::nullopt;
  const auto k3 = rates(axpy({{a31, &*k1}, {a32, &*k2}}), profile, H);
  if (!k3) return std::nullopt;
  const auto k4 =
      rates(axpy({{a41, &*k1}, {a42, &*k2}, {a43, &*k3}}), profile, H);
  if (!k4) return std::nullopt;
  const auto k5 = rates(
      axpy({{a51, &*k1}, {a52, &*k2}, {a53, &*k3}, {a54, &*k4}}), profile, H);
  if (!k5) return std::nullopt;
  const auto k6 = rates(axpy({{a61, &*k1},
                              {a62, &*k2},
                              {a63, &*k3},
                              {a64, &*k4},
                              {a65, &*k5}}),
                        profile, H);
  if (!k6) return std::nullopt;
  const Vec3 y1 = axpy(
      {{b1, &*k1}, {b3, &*k3}, {b4, &*k4}, {b5, &*k5}, {b6, &*k6}});
  const auto k7 = rates(y1, profile, H);
  if (!k7) return std::nullopt;
  StepResult out{y1, {}};
  for (int i = 0; i < 3; ++i)
    out.err[i] = h * (e1 * (*k1)[i] + e3 * (*k3)[i] + e4 * (*k4)[i] +
                      e5 * (*k5)[i] + e6 * (*k6)[i] + e7 * (*k7)[i]);
  return out;
}

// Signed distance to each stop surface; a rule fires when it turns negative.
std::array<double, 4> event_values(const Vec3& y, const StopRule& stop) {
  return {y[0] - stop.r_below, stop.r_above - y[0], stop.z_above - y[1],
          stop.sigma_reaches ? (y[2] - *stop.sigma_reaches) : 1.0};
}

constexpr std::array<StopReason, 4> kEventReasons = {
    StopReason::axis, StopReason::r_above, StopReason::z_above,
    StopReason::sigma_reached};

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::axis:
      return "axis";
    case StopReason::r_above:
      return "r_above";
    case StopReason::z_above:
      return "z_above";
    case StopReason::max_s:
      return "max_s";
    case StopReason::sigma_reached:
      return "sigma_reached";
    case StopReason::axis_approach:
      return "axis_approach";
  }
  return "unknown";
}

ProfileRates ode_rhs(const ProfileState& state, const RadialProfile& profile,
                     double H) {
  if (!(state.r > 0.0))
    throw DomainError("profile ODE is singular on the axis r = 0");
  const auto k = rates({state.r, state.z, state.sigma}, profile, H);
  return {(*k)[0], (*k)[1], (*k)[2]};
}

double first_integral(const ProfileState& state, const RadialProfile& profile,
                      double H) {
  const double r = std::min(state.r, 1.0);
  const double phi = profile.eval(r).value;
  return ipow(phi, profile.n() - 2) * std::sin(state.sigma) - profile.h(r, H);
}

Trajectory integrate(const ProfileState& start, const RadialProfile& profile,
                     double H, const StopRule& stop,
                     const IntegratorOptions& options) {
  if (!(start.r > 0.0 && start.r <= 1.0))
    throw PreconditionError("integration must start with r in (0, 1]");

  Trajectory traj;
  traj.H = H;
  traj.states.push_back(start);
  traj.J0 = first_integral(start, profile, H);
  traj.J.push_back(traj.J0);

  Vec3 y{start.r, start.z, start.sigma};
  double s = start.s;
  double h = options.initial_step;
  double err_prev = 1.0;
  bool rejected_last = false;

  // sigma events need the side of the target we start on
  const double sigma_side =
      stop.sigma_reaches ? (start.sigma < *stop.sigma_reaches ? -1.0 : 1.0)
                         : 1.0;
  auto events = [&](const Vec3& v) {
    auto e = event_values(v, stop);
    e[3] *= sigma_side;
    return e;
  };

  auto record = [&](const Vec3& v, double s_new) {
    ProfileState st{s_new, v[0], v[1], v[2]};
    traj.states.push_back(st);
    const double J = first_integral(st, profile, H);
    traj.J.push_back(J);
    traj.max_J_drift = std::max(traj.max_J_drift, std::abs(J - traj.J0));
  };

  for (int step = 0; step < options.max_steps; ++step) {
    if (stop.max_s - s <= 1e-12 * (1.0 + std::abs(s))) {
      traj.stop_reason = StopReason::max_s;
      return traj;
    }
    h = std::min({h, options.max_step, stop.max_s - s});
    if (h < 1e-14 * (1.0 + std::abs(s))) {
      traj.stop_reason = StopReason::axis_approach;
      return traj;
    }

    const auto trial = dp_step(y, h, profile, H);
    double err = std::numeric_limits<double>::infinity();
    if (trial) {
      err = 0.0;
      for (int i = 0; i < 3; ++i) {
        // z and sigma are defined only up to translation (and 2 pi turns),
        // so they are held to the absolute tolerance alone
        const double mag = (i > 0) ? 0.0
                                    : std::max(std::abs(y[i]),
                                               std::abs(trial->y[i]));
        const double sc = options.atol + options.rtol * mag;
        err = std::max(err, std::abs(trial->err[i]) / sc);
      }
    }
    if (!(err <= 1.0)) {
      const double fac =
          std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
      h *= fac;
      rejected_last = true;
      continue;
    }

    // Accepted: check stop surfaces.
    const auto g0 = events(y);
    const auto g1 = events(trial->y);
    int fired = -1;
    double h_fire = h;
    for (int k = 0; k < 4; ++k) {
      if (!(g1[k] < 0.0)) continue;
      double h_root = 0.0;
      if (g0[k] > 0.0) {
        // locate the crossing by bisection on single steps from y
        double lo = 0.0, hi = h;
        for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(s));
             ++it) {
          const double mid = 0.5 * (lo + hi);
          const auto sm = dp_step(y, mid, profile, H);
          if (!sm || events(sm->y)[k] < 0.0)
            hi = mid;
          else
            lo = mid;
        }
        h_root = hi;
      }
      if (fired < 0 || h_root < h_fire) {
        fired = k;
        h_fire = h_root;
      }
    }
    if (fired >= 0) {
      if (h_fire > 0.0) {
        const auto sm = dp_step(y, h_fire, profile, H);
        if (sm) {
          ++traj.n_steps;
          record(sm->y, s + h_fire);
        }
      }
      traj.stop_reason = kEventReasons[fired];
      return traj;
    }

    y = trial->y;
    s += h;
    ++traj.n_steps;
    record(y, s);

    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                 std::pow(err_prev, 0.4 / 5.0);
    fac = std::clamp(fac, 0.2, rejected_last ? 1.0 : 5.0);
    h *= fac;
    err_prev = std::max(err, 1e-4);
    rejected_last = false;
  }
  traj.stop_reason = StopReason::max_s;
  return traj;
}

double graph_slope(double r, const RadialProfile& profile, double H) {
  const double ratio = profile.graph_ratio(r, H);
  const double cosine = profile.graph_cosine(r, H);
  if (!(ratio < 1.0 && cosine > 0.0))
    throw DomainError("graph slope blows up: h / phi^{n-2} >= 1");
  return ratio / cosine;
}

namespace {

double inverse_cosine(double r, const RadialProfile& profile, double H) {
  const double cosine = profile.graph_cosine(r, H);
  if (!(cosine > 0.0))
    throw DomainError("graph length element blows up: h / phi^{n-2} >= 1");
  return 1.0 / cosine;
}

// Integrate across the cap junction separately; the integrands are only C^2
// there.
template <class F>
double piecewise_integral(F&& f, double a, double b, double split) {
  constexpr double tol = 1e-12;
  if (a < split && split < b)
    return integrate(f, a, split, tol) + integrate(f, split, b, tol);
  return integrate(f, a, b, tol);
}

std::vector<double> graph_radii(double r1, double r_stop, int samples) {
  std::vector<double> radii;
  const double r_mid = std::min(r_stop, 0.95 * r1);
  const int uniform = (r_stop > r_mid) ? samples / 2 : samples;
  for (int k = 0; k < uniform; ++k)
    radii.push_back(r_mid * k / (uniform - 1));
  if (r_stop > r_mid) {
    const int tail = samples - uniform;
    const double g0 = std::log(r1 - r_mid);
    const double g1 = std::log(r1 - r_stop);
    for (int k = 1; k <= tail; ++k)
      radii.push_back(r1 - std::exp(g0 + (g1 - g0) * k / tail));
    radii.back() = r_stop;
  }
  return radii;
}

}  // namespace

Trajectory graph_integrate(const RadialProfile& profile, double H,
                           double r_stop, int samples) {
  if (!(r_stop > 0.0 && r_stop < profile.r1()))
    throw PreconditionError("graph_integrate needs 0 < r_stop < r1");
  if (samples < 8) throw PreconditionError("graph_integrate needs >= 8 samples");

  const auto radii = graph_radii(profile.r1(), r_stop, samples);
  Trajectory traj;
  traj.H = H;
  traj.stop_reason = StopReason::r_above;
  double z = 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    if (k > 0) {
      const double a = radii[k - 1];
      z += piecewise_integral(
          [&](double u) { return graph_slope(u, profile, H); }, a, r,
          profile.r0());
      s += piecewise_integral(
          [&](double u) { return inverse_cosine(u, profile, H); }, a, r,
          profile.r0());
    }
    const double ratio = profile.graph_ratio(r, H);
    const double sigma = std::atan2(ratio, profile.graph_cosine(r, H));
    ProfileState st{s, r, z, sigma};
    traj.states.push_back(st);
    const double J = (r > 0.0) ? first_integral(st, profile, H) : 0.0;
    traj.J.push_back(J);
    traj.max_J_drift = std::max(traj.max_J_drift, std::abs(J));
  }
  traj.J0 = 0.0;
  traj.n_steps = static_cast<int>(radii.size()) - 1;
  return traj;
}

double arc_length(const RadialProfile& profile, double H, double a, double b) {
  if (a > b) throw PreconditionError("arc_length needs a <= b");
  if (a < 0.0) throw PreconditionError("arc_length needs a >= 0");
  if (!(b < profile.r1()))
    throw DomainError("graph length diverges as the radius reaches r1");
  if (a == b) return 0.0;
  return piecewise_integral(
      [&](double u) { return inverse_cosine(u, profile, H); }, a, b,
      profile.r0());
}

double arc_length(const Trajectory& trajectory) {
  if (trajectory.states.empty()) return 0.0;
  return trajectory.states.back().s - trajectory.states.front().s;
}

Trajectory mirror(const Trajectory& trajectory, double z_line,
                  double sigma_line, double s_start) {
  Trajectory out = trajectory;
  const std::size_t count = trajectory.states.size();
  if (count == 0) return out;
  const double s_end = trajectory.states.back().s;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& src = trajectory.states[count - 1 - k];
    out.states[k] = {s_start + (s_end - src.s), src.r, 2.0 * z_line - src.z,
                     2.0 * sigma_line - src.sigma};
    out.J[k] = trajectory.J[count - 1 - k];
  }
  return out;
}

Trajectory reflect_extend(const Trajectory& trajectory) {
  if (trajectory.states.empty())
    throw PreconditionError("cannot reflect an empty trajectory");
  const auto& end = trajectory.states.back();
  const double turns = std::round((end.sigma - M_PI / 2) / M_PI);
  const double sigma_line = M_PI / 2 + turns * M_PI;
  if (std::abs(end.sigma - sigma_line) > 1e-8)
    throw PreconditionError("reflection needs a vertical end tangent");
  const Trajectory mirrored = mirror(trajectory, end.z, sigma_line, end.s);
  Trajectory out = trajectory;
  for (std::size_t k = 1; k < mirrored.states.size(); ++k) {
    out.states.push_back(mirrored.states[k]);
    out.J.push_back(mirrored.J[k]);
    out.max_J_drift =
        std::max(out.max_J_drift, std::abs(mirrored.J[k] - out.J0));
  }
  out.n_steps = trajectory.n_steps * 2;
  return out;
}

double flux_revolution(const ProfileState& state, const RadialProfile& profile,
                       double H) {
  const int n = profile.n();
  const double r = state.r;
  // conormal term: the orbit has volume phi^{n-2} Vol(S^{n-2}) and the
  // outward conormal along the orbit is the profile tangent
  const double orbit = ipow(profile.eval(r).value, n - 2);
  const double conormal = orbit * std::sin(state.sigma);
  // disk term: horizontal disk bounded by the orbit, normal -d_z
  std::vector<double> breaks{0.0};
  for (double b : {profile.r0(), profile.r1(), profile.r2()})
    if (b < r) breaks.push_back(b);
  breaks.push_back(r);
  double disk = 0.0;
  for (std::size_t k = 1; k < breaks.size(); ++k)
    disk += integrate(
        [&](double u) { return ipow(profile.eval(u).value, n - 2); },
        breaks[k - 1], breaks[k]);
  return unit_sphere_volume(n - 2) * (conormal - (n - 1) * H * disk);
}

void write_csv(const Trajectory& trajectory, std::ostream& out) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "s,r,z,sigma,J\n";
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    const auto& st = trajectory.states[k];
    buf << st.s << ',' << st.r << ',' << st.z << ',' << st.sigma << ','
        << trajectory.J[k] << '\n';
  }
  out << buf.str();
}

nlohmann::json summary_json(const Trajectory& trajectory) {
  return {{"J0", trajectory.J0},
          {"max_J_drift", trajectory.max_J_drift},
          {"stop_reason", to_string(trajectory.stop_reason)},
          {"n_steps", trajectory.n_steps}};
}

}  // namespace cmcfol
