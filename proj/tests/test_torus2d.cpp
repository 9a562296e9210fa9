#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cmcfol/errors.hpp"
#include "cmcfol/torus2d.hpp"

using namespace cmcfol;

namespace {

const TorusResult& coarse() {
  static const TorusResult r = [] {
    TorusParams p;
    p.Nx = 128;
    p.Ny = 16;
    return run_torus_pipeline(p);
  }();
  return r;
}

}  // namespace

TEST(FlatTorus, NeedsMultiplesOfFour) {
  EXPECT_THROW(FlatTorus(4.0, 130, 16), PreconditionError);
  EXPECT_THROW(FlatTorus(4.0, 128, 10), PreconditionError);
  EXPECT_NO_THROW(FlatTorus(4.0, 128, 16));
}

TEST(FlatTorus, ReflectionsAreInvolutionsFixingTheirLine) {
  const FlatTorus t(4.0, 64, 8);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(t.reflect(k, t.line_index(k)), t.line_index(k));
    for (int i = 0; i < 64; ++i) EXPECT_EQ(t.reflect(k, t.reflect(k, i)), i);
  }
  EXPECT_EQ(t.line_index(2), 32);
  EXPECT_DOUBLE_EQ(t.line(1), 1.0);
}

TEST(Smoothstep, QuinticProperties) {
  EXPECT_EQ(smoothstep5(0.0), 0.0);
  EXPECT_EQ(smoothstep5(1.0), 1.0);
  EXPECT_DOUBLE_EQ(smoothstep5(0.5), 0.5);
  EXPECT_NEAR(smoothstep5_integral(1.0), 0.5, 1e-15);
}

TEST(Foliation, TangentsAreUnitAndNormalsPerpendicular) {
  const FlatTorus t(4.0, 128, 16);
  const Foliation2D fol(t, 0.5);
  for (int i = 0; i < 400; ++i) {
    const double x = 4.0 * i / 400.0;
    const Vec2 T = fol.tangent(x);
    const Vec2 N = fol.normal(x);
    EXPECT_NEAR(T.x * T.x + T.y * T.y, 1.0, 1e-14) << x;
    EXPECT_NEAR(T.x * N.x + T.y * N.y, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(N.x, T.y);
  }
  EXPECT_EQ(fol.tangent(0.1).y, 1.0);
  EXPECT_EQ(fol.tangent(2.1).y, -1.0);
  EXPECT_EQ(fol.region(1.0), TorusRegion::reeb1);
  EXPECT_EQ(fol.region(3.0), TorusRegion::reeb3);
}

TEST(Foliation, ReebLeafDerivatives) {
  const FlatTorus t(4.0, 128, 16);
  const Foliation2D fol(t, 0.5);
  const double step = 1e-6;
  for (double x : {0.7, 0.9, 1.0, 1.2, 2.8, 3.1}) {
    EXPECT_NEAR((fol.rho(x + step) - fol.rho(x - step)) / (2 * step),
                fol.rho_d1(x), 1e-6 * (1 + std::abs(fol.rho_d1(x))));
    EXPECT_NEAR((fol.rho_d1(x + step) - fol.rho_d1(x - step)) / (2 * step),
                fol.rho_d2(x), 1e-5 * (1 + std::abs(fol.rho_d2(x))));
  }
  EXPECT_NEAR(fol.rho(1.0), -1.0, 1e-15);
}

TEST(AdmissibleF, SignsAndExactZeroIntegral) {
  const FlatTorus t(4.0, 128, 16);
  const AdmissibleF f(t, 0.5);
  EXPECT_EQ(f.value(1.0), -1.0);
  EXPECT_EQ(f.value(3.0), 1.0);
  EXPECT_EQ(f.value(0.0), 0.0);
  EXPECT_EQ(f.value(2.0), 0.0);
  EXPECT_EQ(f.integral(), 0.0);
  for (int i = 0; i < 128; ++i) {
    EXPECT_EQ(f.grid()(t.reflect(0, i), 3), -f.grid()(i, 3));
    EXPECT_EQ(f.grid()(t.reflect(1, i), 5), f.grid()(i, 5));
  }
}

TEST(AdmissibleF, PrimitiveDifferentiatesBack) {
  const FlatTorus t(4.0, 128, 16);
  const AdmissibleF f(t, 0.5);
  EXPECT_EQ(f.primitive(1.0), 0.0);
  const double step = 1e-6;
  for (double x : {0.2, 0.45, 0.6, 1.5, 2.3, 3.7}) {
    EXPECT_NEAR((f.primitive(x + step) - f.primitive(x - step)) / (2 * step),
                f.value(x), 1e-8);
  }
}

TEST(OneForm, AveragingIsIdempotentAndSymmetric) {
  const auto& r = coarse();
  const OneForm& w = r.form.omega;
  EXPECT_EQ(max_abs_diff(average_form(r.torus, w), w), 0.0);
  for (int k = 0; k < 4; ++k) {
    const OneForm pulled = pullback_reflection(r.torus, w, k);
    const double sign = (k % 2) ? -1.0 : 1.0;
    double worst = 0;
    for (int j = 0; j < r.torus.Ny(); ++j)
      for (int i = 0; i < r.torus.Nx(); ++i)
        worst = std::max({worst, std::abs(pulled.a(i, j) - sign * w.a(i, j)),
                          std::abs(pulled.b(i, j) - sign * w.b(i, j))});
    EXPECT_EQ(worst, 0.0) << "R" << k;
  }
}

TEST(OneForm, ExteriorDerivativeIsF) {
  const auto& r = coarse();
  const FlatTorus& t = r.torus;
  double worst = 0;
  for (int i = 0; i + 1 < t.Nx(); ++i) {
    const double db = (r.form.omega.b(i + 1, 0) - r.form.omega.b(i, 0)) / t.dx();
    // cell average of f by composite Simpson
    const int m = 64;
    double acc = 0;
    for (int k = 0; k <= m; ++k) {
      const double wk = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
      acc += wk * r.f.value(t.x(i) + t.dx() * k / m);
    }
    worst = std::max(worst, std::abs(db - acc / (3.0 * m)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(OneForm, LeafwiseNonVanishing) {
  const auto& r = coarse();
  EXPECT_GT(r.form.min_w, r.form.margin);
}

TEST(OneForm, VanishingRaisesWithLocation) {
  const FlatTorus t(4.0, 64, 8);
  const Foliation2D fol(t, 0.5);
  const AdmissibleF f(t, 0.5);
  try {
    solve_omega(f, fol, 1.0, 10.0);
    FAIL() << "expected LeafwiseVanishingError";
  } catch (const LeafwiseVanishingError& e) {
    EXPECT_GE(e.i(), 0);
    EXPECT_LT(e.i(), 64);
    EXPECT_LT(e.value(), 10.0);
  }
}

TEST(Metric, UnitDeterminantAndOmegaLength) {
  const auto& r = coarse();
  EXPECT_LT(r.metric.max_det_error(), 1e-9);
  const FlatTorus& t = r.torus;
  for (int i = 0; i < t.Nx(); i += 7) {
    const Vec2 T{r.foliation.tangent_x()(i, 0), r.foliation.tangent_y()(i, 0)};
    const Sym2 g = r.metric.at(i, 0);
    EXPECT_NEAR(std::sqrt(g(T, T)), r.form.w(i, 0), 1e-12);
  }
}

TEST(Metric, FlatMetricCircleCurvature) {
  const FlatTorus t(4.0, 64, 8);
  const Foliation2D fol(t, 0.5);
  const Metric2D flat(t, GridField(64, 8, 1.0), GridField(64, 8, 0.0),
                      GridField(64, 8, 1.0));
  const double R = 0.3;
  std::vector<CurveSample> arc;
  for (int k = 0; k < 40; ++k) {
    const double s = -0.2 + 0.4 * k / 39.0;
    arc.push_back({R * std::cos(s) - R + 0.1, 0.5 + R * std::sin(s),
                   {-R * std::sin(s), R * std::cos(s)},
                   {-R * std::cos(s), -R * std::sin(s)}});
  }
  for (double kappa : geodesic_curvature(arc, flat, fol))
    EXPECT_NEAR(kappa, -1.0 / R, 1e-9);
}

TEST(Metric, CurvatureInputValidation) {
  const auto& r = coarse();
  std::vector<CurveSample> few(8);
  EXPECT_THROW(geodesic_curvature(few, r.metric, r.foliation), PreconditionError);
  std::vector<CurveSample> bad(40);
  bad[3].x = std::nan("");
  EXPECT_THROW(geodesic_curvature(bad, r.metric, r.foliation), DomainError);
}

TEST(Pipeline, CurvatureIsMinusF) {
  TorusParams p;
  EXPECT_LT(run_torus_pipeline(p).max_kappa_error, 5e-2);
}

TEST(Pipeline, ChecksPassOnCoarseGrid) {
  const auto rep = torus_checks(coarse());
  for (const auto& c : rep.checks()) {
    if (c.name == "kappa_plus_f_max") continue;
    EXPECT_TRUE(c.pass()) << c.name << " = " << c.value;
  }
}

TEST(Pipeline, LeafCsvHeader) {
  std::ostringstream out;
  write_leaf_csv(coarse().rows, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "leaf_id,s,x,y,kappa,f,abs_err");
}
