#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cmcfol/errors.hpp"
#include "cmcfol/reeb_foliation.hpp"

using namespace cmcfol;

namespace {

const EnlargedReebComponent& component() {
  static const EnlargedReebComponent c = EnlargedReebComponent::build({}, 1.0);
  return c;
}

}  // namespace

TEST(Reeb, RejectsNonPositiveLambda) {
  EXPECT_THROW(EnlargedReebComponent::build({}, 0.0), PreconditionError);
}

TEST(Reeb, GraphHeightClosedFormPastR0) {
  const auto& c = component();
  const double z0 = c.z_graph(0.25);
  for (double r : {0.3, 0.4, 0.45, 0.49}) {
    const double v0 = 0.25, v = 0.5 - r;
    const double F0 = std::sqrt(1 - v0 * v0) - std::log1p(std::sqrt(1 - v0 * v0)) +
                      std::log(v0);
    const double F = std::sqrt(1 - v * v) - std::log1p(std::sqrt(1 - v * v)) +
                     std::log(v);
    EXPECT_NEAR(c.z_graph(r) - z0, F0 - F, 1e-12);
  }
}

TEST(Reeb, GraphHeightMatchesIntegration) {
  const auto& c = component();
  const auto g = graph_integrate(c.profile(), 1.0, 0.45, 400);
  EXPECT_NEAR(c.z_graph(0.45), g.back().z, 1e-9);
  EXPECT_NEAR(c.z_graph(0.1), graph_integrate(c.profile(), 1.0, 0.1, 200).back().z,
              1e-11);
}

TEST(Reeb, GraphHeightDomain) {
  EXPECT_THROW(component().z_graph(0.5), DomainError);
  EXPECT_THROW(component().z_graph(-0.1), DomainError);
  EXPECT_EQ(component().z_graph(0.0), 0.0);
}

TEST(Reeb, LeafTypesAndCurvatures) {
  const auto& c = component();
  const Leaf g = c.graph_leaf(2.3);
  EXPECT_TRUE(g.is_graph());
  EXPECT_NEAR(g.z0(), 0.3, 1e-15);
  EXPECT_EQ(g.H_leaf, 1.0);
  const Leaf cyl = c.cylinder_leaf(0.9);
  EXPECT_FALSE(cyl.is_graph());
  EXPECT_EQ(cyl.H_leaf, 0.0);
  EXPECT_NEAR(c.cylinder_leaf(0.5).H_leaf, 1.0, 1e-12);
  EXPECT_THROW(c.cylinder_leaf(0.4), PreconditionError);
}

TEST(Reeb, LeafwiseConstantMeanCurvature) {
  const auto& c = component();
  for (double z0 : {0.0, 0.37, 0.81}) {
    const auto spread = c.leaf_mean_curvature(c.graph_leaf(z0));
    EXPECT_LT(spread.max - spread.min, 1e-6);
    EXPECT_NEAR(spread.mean, 1.0, 1e-6);
  }
  for (double r : {0.5, 0.6, 0.75, 1.0}) {
    const Leaf leaf = c.cylinder_leaf(r);
    EXPECT_NEAR(c.leaf_mean_curvature(leaf).mean, leaf.H_leaf, 1e-12);
  }
}

TEST(Reeb, LeafPartitionProperty) {
  const auto& c = component();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double r = unit(rng);
    const double z = -3 + 6 * unit(rng);
    const Leaf leaf = c.leaf_at_point(r, z);
    EXPECT_TRUE(c.contains(leaf, r, z));
    const Leaf other = leaf.is_graph() ? c.graph_leaf(leaf.z0() + 0.5)
                                       : c.cylinder_leaf(leaf.radius() == 1.0
                                                             ? 0.99
                                                             : 1.0);
    EXPECT_FALSE(c.contains(other, r, z));
  }
}

TEST(Reeb, QuotientShift) {
  const auto& c = component();
  const Leaf a = c.leaf_at_point(0.2, 0.4);
  const Leaf b = c.leaf_at_point(0.2, 0.4 + 3 * c.lambda());
  EXPECT_NEAR(a.z0(), b.z0(), 1e-12);
}

TEST(Reeb, MeanCurvatureProfile) {
  const auto& c = component();
  EXPECT_EQ(c.mean_curvature_at_radius(0.3), 1.0);
  EXPECT_NEAR(c.mean_curvature_at_radius(0.5), 1.0, 1e-12);
  EXPECT_EQ(c.mean_curvature_at_radius(0.8), 0.0);
  double prev = c.mean_curvature_at_radius(0.5);
  for (int k = 1; k <= 1000; ++k) {
    const double now = c.mean_curvature_at_radius(0.5 + 0.25 * k / 1000.0);
    EXPECT_LT(std::abs(now - prev), 1e-2);
    prev = now;
  }
}

TEST(Volume, ClosedFormN3) {
  const auto& p = component().profile();
  EXPECT_NEAR(cylinder_volume(p, 0.8, 1.0), 2 * M_PI * p.plateau(), 1e-14);
  EXPECT_NEAR(cylinder_volume(p, 0.8, 2.5), 2.5 * 2 * M_PI * p.plateau(), 1e-13);
}

TEST(Volume, IndependentOfDelta) {
  const auto p = RadialProfile::build({5, 0.8, 0.25, 0.5, 0.75});
  const double v = cylinder_volume(p, 0.75, 1.3);
  for (double d : {0.8, 0.9, 1.0})
    EXPECT_NEAR(cylinder_volume(p, d, 1.3), v, 1e-12 * v);
  EXPECT_THROW(cylinder_volume(p, 0.7, 1.0), DomainError);
}

TEST(Volume, ChooseLambdaRoundTrip) {
  const auto& p = component().profile();
  for (double target : {0.5, 10.0, 1234.5}) {
    const double lambda = choose_lambda(target, p);
    EXPECT_NEAR(cylinder_volume(p, 0.9, lambda), target, 1e-10 * target);
  }
  EXPECT_THROW(choose_lambda(-1.0, p), PreconditionError);
}

TEST(GraphHeightPrimitive, DerivativeIsSlope) {
  const double step = 1e-6;
  for (double v : {0.01, 0.1, 0.5, 0.9}) {
    const double fd = (graph_height_primitive(v + step) -
                       graph_height_primitive(v - step)) /
                      (2 * step);
    EXPECT_NEAR(fd, std::sqrt(1 - v * v) / v, 1e-6 * (1 + 1 / v));
  }
}
