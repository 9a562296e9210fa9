#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cmcfol/errors.hpp"
#include "cmcfol/radial_metric.hpp"

using namespace cmcfol;

namespace {

const RadialProfile& default_profile() {
  static const RadialProfile p = RadialProfile::build({});
  return p;
}

}  // namespace

TEST(ClosedForm, SpotValuesN3) {
  // mpmath, 30 digits
  EXPECT_NEAR(phi_closed_form(0.3, 3, 1.0, 0.5).value, 0.682287030173558722,
              1e-15);
  EXPECT_NEAR(phi_closed_form(0.25, 3, 1.0, 0.5).value, 0.623073213330194006,
              1e-15);
  EXPECT_NEAR(h_closed_form(0.3, 3, 1.0, 0.5), 0.668502032817651531, 1e-15);
}

TEST(ClosedForm, SpotValuesN4) {
  EXPECT_NEAR(phi_closed_form(0.4, 4, 0.7, 0.5).value, 0.902430853567267601,
              1e-15);
  EXPECT_NEAR(h_closed_form(0.4, 4, 0.7, 0.5), 0.810299307255526315, 1e-15);
}

TEST(ClosedForm, UnitAtR1) {
  for (int n : {3, 4, 7}) {
    EXPECT_DOUBLE_EQ(phi_closed_form(0.5, n, 1.3, 0.5).value, 1.0);
    EXPECT_DOUBLE_EQ(h_closed_form(0.5, n, 1.3, 0.5), 1.0);
  }
}

TEST(ClosedForm, DerivativesMatchFiniteDifferences) {
  const double step = 1e-5;
  for (double r : {0.1, 0.3, 0.5, 0.7}) {
    const Jet j = phi_closed_form(r, 4, 0.8, 0.5);
    const Jet a = phi_closed_form(r - step, 4, 0.8, 0.5);
    const Jet b = phi_closed_form(r + step, 4, 0.8, 0.5);
    EXPECT_NEAR((b.value - a.value) / (2 * step), j.d1, 1e-8 * (1 + j.d1));
    EXPECT_NEAR((b.d1 - a.d1) / (2 * step), j.d2, 1e-7 * (1 + std::abs(j.d2)));
  }
}

TEST(ClosedForm, UndefinedFarFromR1) {
  EXPECT_THROW(phi_closed_form(1.6, 3, 1.0, 0.5), DomainError);
}

TEST(UnitSphere, KnownVolumes) {
  EXPECT_NEAR(unit_sphere_volume(1), 2 * M_PI, 1e-14);
  EXPECT_NEAR(unit_sphere_volume(2), 4 * M_PI, 1e-14);
  EXPECT_NEAR(unit_sphere_volume(3), 2 * M_PI * M_PI, 1e-13);
}

TEST(Validate, RejectsBadOrdering) {
  EXPECT_THROW(RadialProfile::build({3, 1.0, 0.5, 0.4, 0.75}), PreconditionError);
  EXPECT_THROW(RadialProfile::build({3, 1.0, 0.25, 0.5, 1.0}), PreconditionError);
  EXPECT_THROW(RadialProfile::build({2, 1.0, 0.25, 0.5, 0.75}), PreconditionError);
  EXPECT_THROW(RadialProfile::build({3, -1.0, 0.25, 0.5, 0.75}), PreconditionError);
}

TEST(Profile, AxisBehaviour) {
  const auto& p = default_profile();
  const Jet axis = p.eval(0.0);
  EXPECT_EQ(axis.value, 0.0);
  EXPECT_NEAR(axis.d1, 1.0, 1e-14);
  EXPECT_NEAR(axis.d2, 0.0, 1e-12);
  EXPECT_EQ(p.h(0.0), 0.0);
}

TEST(Profile, PieceOwnership) {
  const auto& p = default_profile();
  using P = RadialProfile::Piece;
  EXPECT_EQ(p.piece(0.1), P::cap);
  EXPECT_EQ(p.piece(0.25), P::cap);
  EXPECT_EQ(p.piece(0.4), P::explicit_form);
  EXPECT_EQ(p.piece(0.6), P::blend);
  EXPECT_EQ(p.piece(0.75), P::flat);
  EXPECT_EQ(p.piece(1.0), P::flat);
}

TEST(Profile, JetsAgreeAtJunctions) {
  for (int n : {3, 5}) {
    const auto p = RadialProfile::build({n, 0.9, 0.2, 0.45, 0.8});
    using P = RadialProfile::Piece;
    const std::pair<P, P> sides[] = {{P::cap, P::explicit_form},
                                     {P::explicit_form, P::blend},
                                     {P::blend, P::flat}};
    const double at[] = {p.r0(), p.r1(), p.r2()};
    for (int k = 0; k < 3; ++k) {
      const Jet a = p.eval_piece(sides[k].first, at[k]);
      const Jet b = p.eval_piece(sides[k].second, at[k]);
      EXPECT_NEAR(a.value, b.value, 1e-12) << "n=" << n << " junction " << k;
      EXPECT_NEAR(a.d1, b.d1, 1e-10) << "n=" << n << " junction " << k;
      EXPECT_NEAR(a.d2, b.d2, 1e-8 * (1 + std::abs(b.d2)))
          << "n=" << n << " junction " << k;
    }
  }
}

TEST(Profile, PlateauIsExactlyFlat) {
  const auto& p = default_profile();
  for (double r : {0.75, 0.8, 0.9, 1.0}) {
    EXPECT_EQ(p.eval(r).value, p.plateau());
    EXPECT_EQ(p.eval(r).d1, 0.0);
    EXPECT_EQ(p.cylinder_H(r), 0.0);
  }
}

TEST(Profile, BlendIsMonotone) {
  const auto& p = default_profile();
  for (int k = 0; k <= 1000; ++k) {
    const double r = p.r1() + (p.r2() - p.r1()) * k / 1000.0;
    EXPECT_GE(p.eval(r).d1, 0.0) << r;
  }
}

TEST(Profile, HMatchesClosedFormPastR0) {
  const auto& p = default_profile();
  for (int k = 0; k <= 50; ++k) {
    const double r = p.r0() + (p.r1() - p.r0()) * k / 50.0;
    EXPECT_NEAR(p.h(r), h_closed_form(r, 3, 1.0, 0.5), 1e-13) << r;
  }
}

TEST(Profile, HIsMonotoneIntegral) {
  // h' = (n-1) H phi^{n-2} >= 0 everywhere
  const auto p = RadialProfile::build({4, 1.2, 0.25, 0.5, 0.75});
  double prev = p.h(0.0);
  for (int k = 1; k <= 400; ++k) {
    const double now = p.h(k / 400.0);
    EXPECT_GT(now, prev);
    prev = now;
  }
}

TEST(Profile, HDerivativeProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  const auto p = RadialProfile::build({4, 0.6, 0.25, 0.5, 0.75});
  const double step = 1e-6;
  for (int k = 0; k < 200; ++k) {
    const double r = unit(rng);
    const double fd = (p.h(r + step) - p.h(r - step)) / (2 * step);
    const double phi = p.eval(r).value;
    EXPECT_NEAR(fd, 3 * 0.6 * phi * phi, 1e-7) << r;
  }
}

TEST(Profile, GraphRatioEqualsSqrtLaw) {
  const auto& p = default_profile();
  for (int k = 0; k < 100; ++k) {
    const double r = p.r0() + (p.r1() - p.r0()) * k / 100.0;
    const double u = p.r1() - r;
    EXPECT_NEAR(p.graph_ratio(r, 1.0), std::sqrt(1 - u * u), 1e-12);
    EXPECT_NEAR(p.graph_cosine(r, 1.0), u, 1e-12);
  }
}

TEST(Profile, CylinderCurvatureAtR1) {
  for (double H : {0.4, 1.0, 2.5}) {
    const auto p = RadialProfile::build({5, H, 0.25, 0.5, 0.75});
    EXPECT_NEAR(p.cylinder_H(0.5), H, 1e-12);
    EXPECT_NEAR(p.kappa_r(0.5), 4 * H / 3, 1e-12);
  }
}

TEST(Profile, RicciReachesBound) {
  const auto& p = default_profile();
  double lo = 1e300;
  for (int k = 1; k <= 10000; ++k) lo = std::min(lo, p.ricci_normal(k / 1e4));
  EXPECT_LE(lo, -2.0);
}

TEST(Profile, JsonRoundTrip) {
  const auto p = RadialProfile::build({4, 0.8, 0.2, 0.45, 0.7});
  const auto q = RadialProfile::from_json(p.to_json());
  for (double r : {0.0, 0.1, 0.3, 0.6, 0.9}) {
    EXPECT_EQ(p.eval(r).value, q.eval(r).value);
    EXPECT_EQ(p.h(r), q.h(r));
  }
}

TEST(Profile, OutsideUnitIntervalThrows) {
  EXPECT_THROW(default_profile().eval(1.01), DomainError);
  EXPECT_THROW(default_profile().eval(-0.01), DomainError);
}
