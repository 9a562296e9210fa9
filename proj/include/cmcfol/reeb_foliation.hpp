#pragma once

// The enlarged Reeb-type foliation of D x R (and of its quotient by z -> z +
// lambda): vertical translates of one J = 0 graph over D(r1), plus the
// vertical cylinders C(r), r in [r1, 1].

#include <variant>
#include <vector>

#include "cmcfol/profile_ode.hpp"
#include "cmcfol/radial_metric.hpp"

namespace cmcfol {

struct GraphLeaf {
  double z0 = 0.0;  // height of the leaf on the axis, in [0, lambda)
};

struct CylinderLeaf {
  double r = 1.0;
};

struct Leaf {
  std::variant<GraphLeaf, CylinderLeaf> kind;
  double H_leaf = 0.0;

  bool is_graph() const { return std::holds_alternative<GraphLeaf>(kind); }
  double z0() const { return std::get<GraphLeaf>(kind).z0; }
  double radius() const { return std::get<CylinderLeaf>(kind).r; }
};

struct CurvatureSpread {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  int samples = 0;
};

class EnlargedReebComponent {
 public:
  static EnlargedReebComponent build(const ProfileParams& params,
                                     double lambda);
  EnlargedReebComponent(RadialProfile profile, double lambda);

  const RadialProfile& profile() const { return profile_; }
  double H() const { return profile_.H(); }
  double lambda() const { return lambda_; }

  // Height of the J = 0 graph through the origin, r in [0, r1). Quadrature
  // of the slope on [0, r0], closed form of the length law beyond.
  double z_graph(double r) const;
  // Tangent angle of the graph, sigma = asin(h / phi^{n-2}).
  double sigma_graph(double r) const;

  Leaf graph_leaf(double z0) const;
  Leaf cylinder_leaf(double r) const;

  // Cylinder(r) for r >= r1, otherwise the graph leaf through (r, z), its
  // axis height reduced mod lambda.
  Leaf leaf_at_point(double r, double z) const;
  bool contains(const Leaf& leaf, double r, double z, double tol = 1e-9) const;

  // Mean curvature along the leaf from the orbit term and the numerically
  // differentiated profile curvature sigma-dot.
  CurvatureSpread leaf_mean_curvature(const Leaf& leaf,
                                      int samples = 400) const;

  // Mean curvature of the leaf through radius r (H inside D(r1)).
  double mean_curvature_at_radius(double r) const;

  // Vol(dD(delta) x R/lambda Z) = lambda phi(delta)^{n-2} Vol(S^{n-2}).
  double cylinder_volume(double delta) const;

 private:
  RadialProfile profile_;
  double lambda_;
  std::vector<double> knot_r_;  // graph heights cached on [0, r0]
  std::vector<double> knot_z_;
  double z_r0_ = 0.0;
};

double cylinder_volume(const RadialProfile& profile, double delta,
                       double lambda);

// lambda with cylinder_volume(r2, lambda) = target_volume.
double choose_lambda(double target_volume, const RadialProfile& profile);

// Antiderivative used by the length law: with v = r1 - r, dz/dr =
// sqrt(1 - v^2) / v = F'(v) for F(v) = sqrt(1 - v^2) - log((1 + sqrt(1 - v^2))
// / v).
double graph_height_primitive(double v);

}  // namespace cmcfol
