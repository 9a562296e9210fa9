#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cmcfol/errors.hpp"
#include "cmcfol/turbularization.hpp"

using namespace cmcfol;

TEST(FlatStep, EndpointsAndSymmetry) {
  EXPECT_EQ(flat_step(-1.0), 0.0);
  EXPECT_EQ(flat_step(0.0), 0.0);
  EXPECT_EQ(flat_step(1.0), 1.0);
  EXPECT_DOUBLE_EQ(flat_step(0.5), 0.5);
  for (double x : {0.05, 0.2, 0.37, 0.8})
    EXPECT_NEAR(flat_step(x) + flat_step(1 - x), 1.0, 1e-15);
}

TEST(FlatStep, DerivativeMatchesDifference) {
  const double step = 1e-6;
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.95}) {
    EXPECT_NEAR((flat_step(x + step) - flat_step(x - step)) / (2 * step),
                flat_step_derivative(x), 1e-8);
  }
  EXPECT_EQ(flat_step_derivative(0.0), 0.0);
  EXPECT_EQ(flat_step_derivative(1.0), 0.0);
}

TEST(TurbModel, RejectsBadParameters) {
  EXPECT_THROW(TurbModelSurface(0.0, 1, 1.0), PreconditionError);
  EXPECT_THROW(TurbModelSurface(0.1, 0, 1.0), PreconditionError);
  EXPECT_THROW(TurbModelSurface(0.1, 1, -1.0), PreconditionError);
  EXPECT_THROW(TurbModelSurface(0.1, 1, 1.0, 2), PreconditionError);
}

TEST(TurbModel, FlatOnOuterCollar) {
  const TurbModelSurface s(0.05, 1, 0.7);
  for (int k = 0; k <= 100; ++k) {
    const double rho = 0.3 + 0.1 * k / 100.0;
    EXPECT_EQ(s.height(rho), 0.0);
    EXPECT_EQ(s.height_derivative(rho), 0.0);
  }
}

TEST(TurbModel, DomainIsHalfOpenAnnulus) {
  const TurbModelSurface s(0.05, 1, 0.7);
  EXPECT_THROW(s.height(0.2), DomainError);
  EXPECT_THROW(s.height(0.41), DomainError);
  EXPECT_NO_THROW(s.height(0.4));
}

TEST(TurbModel, SpiralsOntoInnerCylinder) {
  for (int sign : {1, -1}) {
    const TurbModelSurface s(0.05, sign, 0.7);
    double prev_dist = 1e9;
    double prev_tilt = M_PI;
    for (int k = 1; k <= 60; ++k) {
      const double rho = 0.2 + 0.1 * std::pow(0.8, k);
      EXPECT_LT(s.distance_to_limit(rho), prev_dist);
      EXPECT_LE(s.tilt_to_cylinder(rho), prev_tilt + 1e-15);
      prev_dist = s.distance_to_limit(rho);
      prev_tilt = s.tilt_to_cylinder(rho);
    }
    EXPECT_LT(prev_dist, 1e-6);
    EXPECT_LT(prev_tilt, 1e-6);
    EXPECT_GT(sign * s.height(0.2 + 1e-4), 1e3);
  }
}

TEST(TurbModel, HeightDerivativeMatchesDifference) {
  const TurbModelSurface s(0.05, -1, 1.3);
  const double step = 1e-7;
  for (double rho : {0.21, 0.23, 0.26, 0.29}) {
    const double fd = (s.height(rho + step) - s.height(rho - step)) / (2 * step);
    EXPECT_NEAR(fd, s.height_derivative(rho),
                1e-5 * (1 + std::abs(s.height_derivative(rho))));
  }
}

TEST(TurbModel, RotationInvariance) {
  const TurbModelSurface s(0.05, 1, 0.7, 4, 2.0);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double rho = 0.2 + 0.2 * (0.001 + 0.999 * unit(rng));
    std::vector<double> dir{normal(rng), normal(rng), normal(rng)};
    TurbPoint p = s.point(rho, dir);
    EXPECT_TRUE(s.contains(p));
    // rotate in the (x0, x1) plane
    const double a = 2 * M_PI * unit(rng);
    const double x0 = p.x[0], x1 = p.x[1];
    p.x[0] = std::cos(a) * x0 - std::sin(a) * x1;
    p.x[1] = std::sin(a) * x0 + std::cos(a) * x1;
    EXPECT_TRUE(s.contains(p));
    p.t += 2.0;
    EXPECT_TRUE(s.contains(p));
    p.t += 0.5;
    EXPECT_FALSE(s.contains(p));
  }
}

TEST(TurbModel, PointNeedsMatchingDirection) {
  const TurbModelSurface s(0.05, 1, 0.7);
  EXPECT_THROW(s.point(0.3, {1.0, 0.0, 0.0}), PreconditionError);
  EXPECT_THROW(s.point(0.3, {0.0, 0.0}), PreconditionError);
}
