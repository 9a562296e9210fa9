#pragma once

// Flat torus [0, Lx) x [0, 1) with two Reeb components and two product strips,
// an admissible f, a 1-form omega with d omega = f dV, and the metric g for
// which every leaf has geodesic curvature -f.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cmcfol/report.hpp"

namespace cmcfol {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

class FlatTorus {
 public:
  // Nx, Ny must be positive multiples of 4.
  FlatTorus(double Lx, int Nx, int Ny);

  double Lx() const { return Lx_; }
  double Ly() const { return 1.0; }
  int Nx() const { return Nx_; }
  int Ny() const { return Ny_; }
  double dx() const { return Lx_ / Nx_; }
  double dy() const { return 1.0 / Ny_; }
  double x(int i) const { return dx() * i; }
  double y(int j) const { return dy() * j; }

  // x-coordinate of the marked line l_k, k = 0..3.
  double line(int k) const { return 0.25 * Lx_ * k; }
  int line_index(int k) const { return k * Nx_ / 4; }
  // Column index of the reflection of column i across l_k.
  int reflect(int k, int i) const;
  int wrap_x(int i) const { return ((i % Nx_) + Nx_) % Nx_; }
  int wrap_y(int j) const { return ((j % Ny_) + Ny_) % Ny_; }

 private:
  double Lx_;
  int Nx_;
  int Ny_;
};

class GridField {
 public:
  GridField() = default;
  GridField(int Nx, int Ny, double value = 0.0)
      : Nx_(Nx), Ny_(Ny), data_(static_cast<std::size_t>(Nx) * Ny, value) {}

  int Nx() const { return Nx_; }
  int Ny() const { return Ny_; }
  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  const std::vector<double>& data() const { return data_; }

  // Periodic bilinear interpolation at physical coordinates.
  double bilinear(const FlatTorus& torus, double x, double y) const;

  // Ny rows of Nx comma-separated values, %.17g.
  void write_csv(std::ostream& out) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * Nx_ + i;
  }
  int Nx_ = 0;
  int Ny_ = 0;
  std::vector<double> data_;
};

enum class TorusRegion { strip0, reeb1, strip2, reeb3 };

class Foliation2D {
 public:
  // Throws PreconditionError unless 0 < eps_strip < Lx/4 (disjoint strips
  // with nonempty Reeb components).
  Foliation2D(const FlatTorus& torus, double eps_strip);

  const FlatTorus& torus() const { return torus_; }
  double eps_strip() const { return eps_; }
  double half_width() const { return 0.25 * torus_.Lx() - eps_; }

  TorusRegion region(double x) const;
  // Center line of the Reeb component containing x (l1 or l3).
  double center(double x) const;

  // Reeb leaf profile y = c + rho(x) inside a component, rho = -sec(pi/2 xi^2)
  // with xi the affine coordinate of the component onto (-1, 1).
  double rho(double x) const;
  double rho_d1(double x) const;
  double rho_d2(double x) const;

  // Unit tangent of the leaf through (x, y): (0, 1) on the l0 strip, (0, -1)
  // on the l2 strip, +-(1, rho') / |(1, rho')| on the l1 / l3 components.
  Vec2 tangent(double x) const;
  // Transverse orientation N = (T_y, -T_x).
  Vec2 normal(double x) const;

  const GridField& tangent_x() const { return tx_; }
  const GridField& tangent_y() const { return ty_; }

 private:
  FlatTorus torus_;
  double eps_;
  GridField tx_;
  GridField ty_;
};

// Quintic smoothstep and its antiderivative from 0.
double smoothstep5(double t);
double smoothstep5_integral(double t);

class AdmissibleF {
 public:
  AdmissibleF(const FlatTorus& torus, double eps_strip);

  // -1 on the l1 component, +1 on the l3 component, odd about l0 and l2,
  // even about l1 and l3.
  double value(double x) const;
  // int_{l1}^x f.
  double primitive(double x) const;

  const GridField& grid() const { return grid_; }
  // sum f dA grouped by R0-orbits of columns, so it cancels exactly.
  double integral() const;

 private:
  double primitive_from_zero(double x) const;
  FlatTorus torus_;
  double eps_;
  GridField grid_;
};

// omega = a dx + b dy on the grid.
struct OneForm {
  GridField a;
  GridField b;
};

// Pullback by the reflection R_k across l_k.
OneForm pullback_reflection(const FlatTorus& torus, const OneForm& w, int k);
OneForm average_y(const OneForm& w);
// (w + sign * R_k^* w) / 2
OneForm symmetrize(const FlatTorus& torus, const OneForm& w, int k, int sign);
// y-average, then R1-antisymmetrize, then R2-symmetrize.
OneForm average_form(const FlatTorus& torus, const OneForm& w);
double max_abs_diff(const OneForm& u, const OneForm& v);

struct SolvedForm {
  OneForm omega;
  GridField w;  // omega(T)
  double min_w = 0.0;
  double margin = 0.0;
};

// Initial form a = alpha sin(2 pi x / Lx), b = int_{l1}^x f, averaged.
// Throws LeafwiseVanishingError when omega(T) < margin at some grid node.
SolvedForm solve_omega(const AdmissibleF& f, const Foliation2D& foliation,
                       double alpha = 1.0, double margin = 1e-2);

struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double operator()(const Vec2& u, const Vec2& v) const {
    return xx * u.x * v.x + xy * (u.x * v.y + u.y * v.x) + yy * u.y * v.y;
  }
};

// Christoffel symbols Gamma^k_{ij}, index [k][i][j].
using Christoffel = std::array<std::array<std::array<double, 2>, 2>, 2>;

class Metric2D {
 public:
  Metric2D(const FlatTorus& torus, GridField gxx, GridField gxy, GridField gyy);

  const FlatTorus& torus() const { return torus_; }
  Sym2 at(int i, int j) const { return {gxx_(i, j), gxy_(i, j), gyy_(i, j)}; }
  Sym2 eval(double x, double y) const;
  Christoffel christoffel(double x, double y) const;
  double max_det_error() const;

  const GridField& gxx() const { return gxx_; }
  const GridField& gxy() const { return gxy_; }
  const GridField& gyy() const { return gyy_; }

 private:
  FlatTorus torus_;
  GridField gxx_, gxy_, gyy_;
  // Gamma^k_{ij} at the nodes, flattened as k*3 + (00, 01, 11).
  std::array<GridField, 6> gamma_;
};

// g = M^{-T} M^{-1} for the frame M = [E, N_g]: E = T / omega(T) and N_g
// spans ker omega on the N side with det[E, N_g] = -1.
Metric2D build_metric(const SolvedForm& form, const Foliation2D& foliation);

// Leaf curve point with first and second derivatives in its parameter.
struct CurveSample {
  double x = 0.0;
  double y = 0.0;
  Vec2 d1;
  Vec2 d2;
};

// kappa_g = g(c'' + Gamma(c', c'), n) / g(c', c') with n the g-unit normal on
// the side of the transverse orientation. At least 32 samples.
std::vector<double> geodesic_curvature(const std::vector<CurveSample>& curve,
                                       const Metric2D& metric,
                                       const Foliation2D& foliation);

struct LeafCurvatureRow {
  int leaf_id = 0;
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double kappa = 0.0;
  double f = 0.0;
  double abs_err = 0.0;  // |kappa + f|
};

struct TorusParams {
  double Lx = 4.0;
  int Nx = 512;
  int Ny = 64;
  double eps_strip = 0.5;
  double alpha = 1.0;
  double margin = 1e-2;
  double tail_slope = 10.0;
  int samples_per_leaf = 257;
};

struct TorusResult {
  TorusParams params;
  FlatTorus torus;
  Foliation2D foliation;
  AdmissibleF f;
  SolvedForm form;
  Metric2D metric;
  std::vector<LeafCurvatureRow> rows;
  double max_kappa_error = 0.0;
};

// Strip leaves at l0, l0 +- eps/2, l2, l2 +- eps/2; two Reeb leaves per
// component. Reeb samples with |rho'| > tail_slope are dropped.
std::vector<LeafCurvatureRow> sample_leaf_curvature(const TorusParams& params,
                                                    const Foliation2D& foliation,
                                                    const AdmissibleF& f,
                                                    const Metric2D& metric);

TorusResult run_torus_pipeline(const TorusParams& params);

// Grid checks of one pipeline run: exactness, symmetries, det g, integral of
// f, leafwise margin, curvature.
VerificationReport torus_checks(const TorusResult& result);

void write_leaf_csv(const std::vector<LeafCurvatureRow>& rows, std::ostream& out);

}  // namespace cmcfol
