#include "cmcfol/torus2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cmcfol/errors.hpp"

namespace cmcfol {

namespace {

double wrap_period(double x, double period) {
  double out = std::fmod(x, period);
  if (out < 0.0) out += period;
  if (out >= period) out -= period;
  return out;
}

void write_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

FlatTorus::FlatTorus(double Lx, int Nx, int Ny) : Lx_(Lx), Nx_(Nx), Ny_(Ny) {
  if (!(Lx > 0.0)) throw PreconditionError("Lx must be positive");
  if (Nx <= 0 || Ny <= 0 || Nx % 4 != 0 || Ny % 4 != 0)
    throw PreconditionError("Nx and Ny must be positive multiples of 4");
}

int FlatTorus::reflect(int k, int i) const {
  return wrap_x(2 * line_index(k) - i);
}

double GridField::bilinear(const FlatTorus& torus, double x, double y) const {
  const double fx = wrap_period(x, torus.Lx()) / torus.dx();
  const double fy = wrap_period(y, torus.Ly()) / torus.dy();
  const int i0 = static_cast<int>(std::floor(fx));
  const int j0 = static_cast<int>(std::floor(fy));
  const double tx = fx - i0;
  const double ty = fy - j0;
  const int i1 = torus.wrap_x(i0 + 1);
  const int j1 = torus.wrap_y(j0 + 1);
  const int ia = torus.wrap_x(i0);
  const int ja = torus.wrap_y(j0);
  const auto& g = *this;
  return (1 - tx) * (1 - ty) * g(ia, ja) + tx * (1 - ty) * g(i1, ja) +
         (1 - tx) * ty * g(ia, j1) + tx * ty * g(i1, j1);
}

void GridField::write_csv(std::ostream& out) const {
  for (int j = 0; j < Ny_; ++j) {
    for (int i = 0; i < Nx_; ++i) {
      if (i) out << ',';
      write_value(out, (*this)(i, j));
    }
    out << '\n';
  }
}

Foliation2D::Foliation2D(const FlatTorus& torus, double eps_strip)
    : torus_(torus),
      eps_(eps_strip),
      tx_(torus.Nx(), torus.Ny()),
      ty_(torus.Nx(), torus.Ny()) {
  if (!(eps_strip > 0.0 && eps_strip < 0.25 * torus.Lx()))
    throw PreconditionError("strip half-width must lie in (0, Lx/4)");
  for (int i = 0; i < torus.Nx(); ++i) {
    const Vec2 t = tangent(torus.x(i));
    for (int j = 0; j < torus.Ny(); ++j) {
      tx_(i, j) = t.x;
      ty_(i, j) = t.y;
    }
  }
}

TorusRegion Foliation2D::region(double x) const {
  const double L = torus_.Lx();
  const double xm = wrap_period(x, L);
  if (std::min(xm, L - xm) <= eps_) return TorusRegion::strip0;
  if (std::abs(xm - 0.5 * L) <= eps_) return TorusRegion::strip2;
  return xm < 0.5 * L ? TorusRegion::reeb1 : TorusRegion::reeb3;
}

double Foliation2D::center(double x) const {
  const double xm = wrap_period(x, torus_.Lx());
  return xm < 0.5 * torus_.Lx() ? torus_.line(1) : torus_.line(3);
}

double Foliation2D::rho(double x) const {
  const double xi = (wrap_period(x, torus_.Lx()) - center(x)) / half_width();
  return -1.0 / std::cos(0.5 * M_PI * xi * xi);
}

double Foliation2D::rho_d1(double x) const {
  const double hw = half_width();
  const double xi = (wrap_period(x, torus_.Lx()) - center(x)) / hw;
  const double u = 0.5 * M_PI * xi * xi;
  const double sec = 1.0 / std::cos(u);
  return -sec * std::tan(u) * M_PI * xi / hw;
}

double Foliation2D::rho_d2(double x) const {
  const double hw = half_width();
  const double xi = (wrap_period(x, torus_.Lx()) - center(x)) / hw;
  const double u = 0.5 * M_PI * xi * xi;
  const double sec = 1.0 / std::cos(u);
  const double tan = std::tan(u);
  const double du = M_PI * xi / hw;
  const double ddu = M_PI / (hw * hw);
  return -(sec * tan * tan + sec * sec * sec) * du * du - sec * tan * ddu;
}

Vec2 Foliation2D::tangent(double x) const {
  switch (region(x)) {
    case TorusRegion::strip0:
      return {0.0, 1.0};
    case TorusRegion::strip2:
      return {0.0, -1.0};
    default:
      break;
  }
  const double slope = rho_d1(x);
  const double norm = std::hypot(1.0, slope);
  const double sign = region(x) == TorusRegion::reeb1 ? 1.0 : -1.0;
  return {sign / norm, sign * slope / norm};
}

Vec2 Foliation2D::normal(double x) const {
  const Vec2 t = tangent(x);
  return {t.y, -t.x};
}

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double smoothstep5_integral(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 0.5 + (t - 1.0);
  const double t4 = t * t * t * t;
  return t4 * (2.5 - 3.0 * t + t * t);
}

AdmissibleF::AdmissibleF(const FlatTorus& torus, double eps_strip)
    : torus_(torus), eps_(eps_strip), grid_(torus.Nx(), torus.Ny()) {
  if (!(eps_strip > 0.0 && eps_strip < 0.25 * torus.Lx()))
    throw PreconditionError("strip half-width must lie in (0, Lx/4)");
  const int Nx = torus.Nx();
  const int half = Nx / 2;
  std::vector<double> column(Nx);
  for (int i = 0; i <= half; ++i) {
    const int d = std::min(i, half - i);
    column[i] = -smoothstep5(torus.x(d) / eps_);
  }
  for (int i = half + 1; i < Nx; ++i) column[i] = -column[Nx - i];
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < torus.Ny(); ++j) grid_(i, j) = column[i];
}

double AdmissibleF::value(double x) const {
  const double L = torus_.Lx();
  const double xm = wrap_period(x, L);
  if (xm <= 0.5 * L) return -smoothstep5(std::min(xm, 0.5 * L - xm) / eps_);
  const double mirror = L - xm;
  return smoothstep5(std::min(mirror, 0.5 * L - mirror) / eps_);
}

double AdmissibleF::primitive_from_zero(double x) const {
  const double L = torus_.Lx();
  const double l1 = 0.25 * L;
  const double l2 = 0.5 * L;
  auto left = [&](double u) { return -eps_ * smoothstep5_integral(u / eps_); };
  if (x <= l1) return left(x);
  if (x <= l2) return 2.0 * left(l1) - left(l2 - x);
  return primitive_from_zero(L - x);
}

double AdmissibleF::primitive(double x) const {
  return primitive_from_zero(wrap_period(x, torus_.Lx())) -
         primitive_from_zero(torus_.line(1));
}

double AdmissibleF::integral() const {
  const int Nx = torus_.Nx();
  double total = 0.0;
  for (int j = 0; j < torus_.Ny(); ++j) {
    double column = grid_(0, j) + grid_(Nx / 2, j);
    for (int i = 1; i < Nx / 2; ++i) column += grid_(i, j) + grid_(Nx - i, j);
    total += column;
  }
  return total * torus_.dx() * torus_.dy();
}

OneForm pullback_reflection(const FlatTorus& torus, const OneForm& w, int k) {
  OneForm out{GridField(torus.Nx(), torus.Ny()), GridField(torus.Nx(), torus.Ny())};
  for (int i = 0; i < torus.Nx(); ++i) {
    const int r = torus.reflect(k, i);
    for (int j = 0; j < torus.Ny(); ++j) {
      out.a(i, j) = -w.a(r, j);
      out.b(i, j) = w.b(r, j);
    }
  }
  return out;
}

OneForm average_y(const OneForm& w) {
  OneForm out = w;
  const int Nx = w.a.Nx();
  const int Ny = w.a.Ny();
  for (int i = 0; i < Nx; ++i) {
    // mean written as first value plus mean deviation so constant columns
    // come back bit-identical
    double da = 0.0;
    double db = 0.0;
    for (int j = 0; j < Ny; ++j) {
      da += w.a(i, j) - w.a(i, 0);
      db += w.b(i, j) - w.b(i, 0);
    }
    const double ma = w.a(i, 0) + da / Ny;
    const double mb = w.b(i, 0) + db / Ny;
    for (int j = 0; j < Ny; ++j) {
      out.a(i, j) = ma;
      out.b(i, j) = mb;
    }
  }
  return out;
}

OneForm symmetrize(const FlatTorus& torus, const OneForm& w, int k, int sign) {
  const OneForm p = pullback_reflection(torus, w, k);
  OneForm out = w;
  for (int i = 0; i < torus.Nx(); ++i) {
    for (int j = 0; j < torus.Ny(); ++j) {
      out.a(i, j) = 0.5 * (w.a(i, j) + sign * p.a(i, j));
      out.b(i, j) = 0.5 * (w.b(i, j) + sign * p.b(i, j));
    }
  }
  return out;
}

OneForm average_form(const FlatTorus& torus, const OneForm& w) {
  const OneForm w2 = average_y(w);
  const OneForm w3 = symmetrize(torus, w2, 1, -1);
  return symmetrize(torus, w3, 2, +1);
}

double max_abs_diff(const OneForm& u, const OneForm& v) {
  double out = 0.0;
  const auto& ua = u.a.data();
  const auto& va = v.a.data();
  const auto& ub = u.b.data();
  const auto& vb = v.b.data();
  for (std::size_t k = 0; k < ua.size(); ++k) {
    out = std::max(out, std::abs(ua[k] - va[k]));
    out = std::max(out, std::abs(ub[k] - vb[k]));
  }
  return out;
}

SolvedForm solve_omega(const AdmissibleF& f, const Foliation2D& foliation,
                       double alpha, double margin) {
  const FlatTorus& torus = foliation.torus();
  const int Nx = torus.Nx();
  const int Ny = torus.Ny();
  if (!(std::abs(f.integral()) <= 1e-12))
    throw PreconditionError("f must have zero mean on the torus");
  OneForm w1{GridField(Nx, Ny), GridField(Nx, Ny)};
  for (int i = 0; i < Nx; ++i) {
    const double x = torus.x(i);
    const double a = alpha * std::sin(2.0 * M_PI * x / torus.Lx());
    const double b = f.primitive(x);
    for (int j = 0; j < Ny; ++j) {
      w1.a(i, j) = a;
      w1.b(i, j) = b;
    }
  }
  SolvedForm out;
  out.omega = average_form(torus, w1);
  out.margin = margin;
  out.w = GridField(Nx, Ny);
  out.min_w = std::numeric_limits<double>::infinity();
  int worst_i = 0;
  int worst_j = 0;
  for (int i = 0; i < Nx; ++i) {
    for (int j = 0; j < Ny; ++j) {
      const double v = out.omega.a(i, j) * foliation.tangent_x()(i, j) +
                       out.omega.b(i, j) * foliation.tangent_y()(i, j);
      out.w(i, j) = v;
      if (v < out.min_w) {
        out.min_w = v;
        worst_i = i;
        worst_j = j;
      }
    }
  }
  if (!(out.min_w >= margin)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "omega(T) = %.6g below margin %.3g at grid point (%d, %d)",
                  out.min_w, margin, worst_i, worst_j);
    throw LeafwiseVanishingError(buf, worst_i, worst_j, out.min_w);
  }
  return out;
}

Metric2D::Metric2D(const FlatTorus& torus, GridField gxx, GridField gxy,
                   GridField gyy)
    : torus_(torus), gxx_(std::move(gxx)), gxy_(std::move(gxy)),
      gyy_(std::move(gyy)) {
  const int Nx = torus.Nx();
  const int Ny = torus.Ny();
  for (auto& field : gamma_) field = GridField(Nx, Ny);
  const double hx = 2.0 * torus.dx();
  const double hy = 2.0 * torus.dy();
  for (int i = 0; i < Nx; ++i) {
    const int ip = torus.wrap_x(i + 1);
    const int im = torus.wrap_x(i - 1);
    for (int j = 0; j < Ny; ++j) {
      const int jp = torus.wrap_y(j + 1);
      const int jm = torus.wrap_y(j - 1);
      // dg[l][a][b] = d_l g_ab
      double dg[2][2][2];
      const Sym2 ex{(gxx_(ip, j) - gxx_(im, j)) / hx,
                    (gxy_(ip, j) - gxy_(im, j)) / hx,
                    (gyy_(ip, j) - gyy_(im, j)) / hx};
      const Sym2 ey{(gxx_(i, jp) - gxx_(i, jm)) / hy,
                    (gxy_(i, jp) - gxy_(i, jm)) / hy,
                    (gyy_(i, jp) - gyy_(i, jm)) / hy};
      for (int l = 0; l < 2; ++l) {
        const Sym2& e = l == 0 ? ex : ey;
        dg[l][0][0] = e.xx;
        dg[l][0][1] = dg[l][1][0] = e.xy;
        dg[l][1][1] = e.yy;
      }
      const Sym2 g = at(i, j);
      const double det = g.det();
      const double inv[2][2] = {{g.yy / det, -g.xy / det},
                                {-g.xy / det, g.xx / det}};
      const int pairs[3][2] = {{0, 0}, {0, 1}, {1, 1}};
      for (int k = 0; k < 2; ++k) {
        for (int p = 0; p < 3; ++p) {
          const int a = pairs[p][0];
          const int b = pairs[p][1];
          double sum = 0.0;
          for (int l = 0; l < 2; ++l)
            sum += inv[k][l] * (dg[a][b][l] + dg[b][a][l] - dg[l][a][b]);
          gamma_[k * 3 + p](i, j) = 0.5 * sum;
        }
      }
    }
  }
}

Sym2 Metric2D::eval(double x, double y) const {
  return {gxx_.bilinear(torus_, x, y), gxy_.bilinear(torus_, x, y),
          gyy_.bilinear(torus_, x, y)};
}

Christoffel Metric2D::christoffel(double x, double y) const {
  Christoffel out{};
  for (int k = 0; k < 2; ++k) {
    const double g00 = gamma_[k * 3 + 0].bilinear(torus_, x, y);
    const double g01 = gamma_[k * 3 + 1].bilinear(torus_, x, y);
    const double g11 = gamma_[k * 3 + 2].bilinear(torus_, x, y);
    out[k][0][0] = g00;
    out[k][0][1] = out[k][1][0] = g01;
    out[k][1][1] = g11;
  }
  return out;
}

double Metric2D::max_det_error() const {
  double out = 0.0;
  for (int i = 0; i < torus_.Nx(); ++i)
    for (int j = 0; j < torus_.Ny(); ++j)
      out = std::max(out, std::abs(at(i, j).det() - 1.0));
  return out;
}

Metric2D build_metric(const SolvedForm& form, const Foliation2D& foliation) {
  const FlatTorus& torus = foliation.torus();
  const int Nx = torus.Nx();
  const int Ny = torus.Ny();
  GridField gxx(Nx, Ny), gxy(Nx, Ny), gyy(Nx, Ny);
  for (int i = 0; i < Nx; ++i) {
    for (int j = 0; j < Ny; ++j) {
      const Vec2 t{foliation.tangent_x()(i, j), foliation.tangent_y()(i, j)};
      const double w = form.w(i, j);
      if (!(w > 0.0))
        throw DomainError("omega(T) must be positive to build the metric");
      const Vec2 e{t.x / w, t.y / w};
      Vec2 k{-form.omega.b(i, j), form.omega.a(i, j)};
      const Vec2 n{t.y, -t.x};
      if (k.x * n.x + k.y * n.y < 0.0) k = {-k.x, -k.y};
      const double scale = std::abs(e.x * k.y - e.y * k.x);
      const Vec2 ng{k.x / scale, k.y / scale};
      // M = [e ng], g = M^{-T} M^{-1}
      const double det = e.x * ng.y - e.y * ng.x;
      const double m00 = ng.y / det, m01 = -ng.x / det;
      const double m10 = -e.y / det, m11 = e.x / det;
      gxx(i, j) = m00 * m00 + m10 * m10;
      gxy(i, j) = m00 * m01 + m10 * m11;
      gyy(i, j) = m01 * m01 + m11 * m11;
    }
  }
  return Metric2D(torus, std::move(gxx), std::move(gxy), std::move(gyy));
}

std::vector<double> geodesic_curvature(const std::vector<CurveSample>& curve,
                                       const Metric2D& metric,
                                       const Foliation2D& foliation) {
  if (curve.size() < 32)
    throw PreconditionError("leaf curves need at least 32 samples");
  std::vector<double> out;
  out.reserve(curve.size());
  for (const auto& c : curve) {
    if (!(std::isfinite(c.x) && std::isfinite(c.y) && std::isfinite(c.d1.x) &&
          std::isfinite(c.d1.y) && std::isfinite(c.d2.x) &&
          std::isfinite(c.d2.y)))
      throw DomainError("leaf curve leaves the grid");
    const Sym2 g = metric.eval(c.x, c.y);
    const Christoffel gam = metric.christoffel(c.x, c.y);
    const double v[2] = {c.d1.x, c.d1.y};
    double acc[2] = {c.d2.x, c.d2.y};
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc[k] += gam[k][i][j] * v[i] * v[j];
    const Vec2 vel = c.d1;
    const double vv = g(vel, vel);
    const Vec2 side = foliation.normal(c.x);
    const double proj = g(side, vel) / vv;
    Vec2 n{side.x - proj * vel.x, side.y - proj * vel.y};
    const double nn = std::sqrt(g(n, n));
    n = {n.x / nn, n.y / nn};
    out.push_back(g(Vec2{acc[0], acc[1]}, n) / vv);
  }
  return out;
}

std::vector<LeafCurvatureRow> sample_leaf_curvature(const TorusParams& params,
                                                    const Foliation2D& foliation,
                                                    const AdmissibleF& f,
                                                    const Metric2D& metric) {
  const FlatTorus& torus = foliation.torus();
  const double eps = foliation.eps_strip();
  const int n = params.samples_per_leaf;
  std::vector<LeafCurvatureRow> rows;
  int leaf_id = 0;

  auto emit = [&](const std::vector<CurveSample>& curve) {
    const auto kappa = geodesic_curvature(curve, metric, foliation);
    double s = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
      if (k > 0) {
        const Sym2 g0 = metric.eval(curve[k - 1].x, curve[k - 1].y);
        const Sym2 g1 = metric.eval(curve[k].x, curve[k].y);
        const double dt = curve[k].x - curve[k - 1].x != 0.0
                              ? curve[k].x - curve[k - 1].x
                              : 1.0 / (n - 1);
        s += 0.5 * dt *
             (std::sqrt(g0(curve[k - 1].d1, curve[k - 1].d1)) +
              std::sqrt(g1(curve[k].d1, curve[k].d1)));
      }
      LeafCurvatureRow row;
      row.leaf_id = leaf_id;
      row.s = s;
      row.x = curve[k].x;
      row.y = curve[k].y;
      row.kappa = kappa[k];
      row.f = f.value(curve[k].x);
      row.abs_err = std::abs(row.kappa + row.f);
      rows.push_back(row);
    }
    ++leaf_id;
  };

  const double L = torus.Lx();
  for (double x0 : {0.0, 0.5 * eps, L - 0.5 * eps, 0.5 * L, 0.5 * L - 0.5 * eps,
                    0.5 * L + 0.5 * eps}) {
    std::vector<CurveSample> curve(n);
    for (int k = 0; k < n; ++k)
      curve[k] = {x0, static_cast<double>(k) / (n - 1), {0.0, 1.0}, {0.0, 0.0}};
    emit(curve);
  }

  const double hw = foliation.half_width();
  for (int comp : {1, 3}) {
    for (double offset : {0.25, 0.75}) {
      std::vector<CurveSample> curve;
      for (int k = 0; k < n; ++k) {
        const double xi = -1.0 + 2.0 * (k + 1) / (n + 1);
        const double x = torus.line(comp) + hw * xi;
        const double slope = foliation.rho_d1(x);
        if (std::abs(slope) > params.tail_slope) continue;
        double y = std::fmod(offset + foliation.rho(x), 1.0);
        if (y < 0.0) y += 1.0;
        curve.push_back({x, y, {1.0, slope}, {0.0, foliation.rho_d2(x)}});
      }
      emit(curve);
    }
  }
  return rows;
}

TorusResult run_torus_pipeline(const TorusParams& params) {
  FlatTorus torus(params.Lx, params.Nx, params.Ny);
  Foliation2D foliation(torus, params.eps_strip);
  AdmissibleF f(torus, params.eps_strip);
  SolvedForm form = solve_omega(f, foliation, params.alpha, params.margin);
  Metric2D metric = build_metric(form, foliation);
  auto rows = sample_leaf_curvature(params, foliation, f, metric);
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.abs_err);
  return {params,         torus,          std::move(foliation), std::move(f),
          std::move(form), std::move(metric), std::move(rows),   worst};
}

VerificationReport torus_checks(const TorusResult& result) {
  const FlatTorus& torus = result.torus;
  const OneForm& omega = result.form.omega;
  const int Nx = torus.Nx();
  const int Ny = torus.Ny();
  VerificationReport report;

  // staggered derivative of b against f at the edge midpoints; the O(dx^2)
  // tolerance is 1e-4 at dx = 1/128
  double exact_err = 0.0;
  for (int i = 0; i < Nx; ++i) {
    const int ip = torus.wrap_x(i + 1);
    for (int j = 0; j < Ny; ++j) {
      const double db = (omega.b(ip, j) - omega.b(i, j)) / torus.dx();
      const double da = (omega.a(i, torus.wrap_y(j + 1)) - omega.a(i, j)) /
                        torus.dy();
      exact_err = std::max(
          exact_err,
          std::abs(db - da - result.f.value(torus.x(i) + 0.5 * torus.dx())));
    }
  }
  const double ref_dx = 1.0 / 128.0;
  const double scale = std::pow(torus.dx() / ref_dx, 2);
  report.add_bound("d_omega_equals_f_dV", exact_err,
                   1e-4 * std::max(1.0, scale), Provenance::derived);

  for (int k = 0; k < 4; ++k) {
    const OneForm p = pullback_reflection(torus, omega, k);
    OneForm target = omega;
    if (k % 2 == 1) {
      for (int i = 0; i < Nx; ++i)
        for (int j = 0; j < Ny; ++j) {
          target.a(i, j) = -omega.a(i, j);
          target.b(i, j) = -omega.b(i, j);
        }
    }
    report.add_bound("omega_reflection_R" + std::to_string(k),
                     max_abs_diff(p, target), 0.0, Provenance::derived);
  }
  report.add_bound("omega_averaging_idempotent",
                   max_abs_diff(average_form(torus, omega), omega), 0.0,
                   Provenance::trivial);
  report.add_bound("omega_y_invariant", max_abs_diff(average_y(omega), omega),
                   0.0, Provenance::trivial);
  report.add_flag("omega_leafwise_nonvanishing",
                  result.form.min_w >= result.form.margin, Provenance::paper);

  const AdmissibleF& f = result.f;
  double f1 = 0.0, f3 = 0.0, fsym1 = 0.0, fsym0 = 0.0, f_lines = 0.0;
  for (int i = 0; i < Nx; ++i) {
    const double x = torus.x(i);
    const TorusRegion region = result.foliation.region(x);
    for (int j = 0; j < Ny; ++j) {
      const double v = f.grid()(i, j);
      if (region == TorusRegion::reeb1) f1 = std::max(f1, std::abs(v + 1.0));
      if (region == TorusRegion::reeb3) f3 = std::max(f3, std::abs(v - 1.0));
      fsym1 = std::max(fsym1, std::abs(f.grid()(torus.reflect(1, i), j) - v));
      fsym0 = std::max(fsym0, std::abs(f.grid()(torus.reflect(0, i), j) + v));
      fsym0 = std::max(fsym0, std::abs(f.grid()(torus.reflect(2, i), j) + v));
      fsym1 = std::max(fsym1, std::abs(f.grid()(torus.reflect(3, i), j) - v));
      fsym1 = std::max(fsym1, std::abs(f.grid()(i, torus.wrap_y(j + 1)) - v));
    }
  }
  for (int k = 0; k < 4; ++k) {
    const double expected = k == 1 ? -1.0 : (k == 3 ? 1.0 : 0.0);
    f_lines = std::max(f_lines,
                       std::abs(f.grid()(torus.line_index(k), 0) - expected));
  }
  report.add_bound("f_minus_one_on_l1_component", f1, 0.0, Provenance::paper);
  report.add_bound("f_plus_one_on_l3_component", f3, 0.0, Provenance::paper);
  report.add_bound("f_even_under_R1_R3_and_y_shift", fsym1, 0.0,
                   Provenance::paper);
  report.add_bound("f_odd_under_R0_R2", fsym0, 0.0, Provenance::paper);
  report.add_bound("f_on_marked_lines", f_lines, 0.0, Provenance::trivial);
  report.add({"f_integral_zero", f.integral(), 0.0, 0.0, false,
              Provenance::trivial});

  report.add_bound("det_g_minus_one", result.metric.max_det_error(), 1e-9,
                   Provenance::paper);
  double length_err = 0.0;
  double shift_err = 0.0;
  for (int i = 0; i < Nx; ++i) {
    for (int j = 0; j < Ny; ++j) {
      const Vec2 t{result.foliation.tangent_x()(i, j),
                   result.foliation.tangent_y()(i, j)};
      const Sym2 g = result.metric.at(i, j);
      length_err = std::max(length_err,
                            std::abs(std::sqrt(g(t, t)) - result.form.w(i, j)));
      const Sym2 h = result.metric.at(i, torus.wrap_y(j + 1));
      shift_err = std::max({shift_err, std::abs(g.xx - h.xx),
                            std::abs(g.xy - h.xy), std::abs(g.yy - h.yy)});
    }
  }
  report.add_bound("omega_T_equals_g_length", length_err, 1e-9,
                   Provenance::derived);
  report.add_bound("metric_translation_invariant", shift_err, 0.0,
                   Provenance::derived);
  report.add_bound("kappa_plus_f_max", result.max_kappa_error, 5e-2,
                   Provenance::derived);
  return report;
}

void write_leaf_csv(const std::vector<LeafCurvatureRow>& rows,
                    std::ostream& out) {
  out << "leaf_id,s,x,y,kappa,f,abs_err\n";
  for (const auto& r : rows) {
    out << r.leaf_id;
    for (double v : {r.s, r.x, r.y, r.kappa, r.f, r.abs_err}) {
      out << ',';
      write_value(out, v);
    }
    out << '\n';
  }
}

}  // namespace cmcfol
