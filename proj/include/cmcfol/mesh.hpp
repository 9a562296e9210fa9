#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmcfol {

class EnlargedReebComponent;
struct Leaf;
class TurbModelSurface;

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based

  void append(const Mesh& other);
};

// Leaves are embedded in R^3 as (r cos theta, r sin theta, z) for n = 3.
// Cylinder: resolution heights over one period times resolution angles.
Mesh mesh_cylinder(double r, double lambda, int resolution);
// Graph leaf over D(r_stop): resolution rings (the first on the axis) times
// resolution angles; r_stop defaults to r1 - 1e-4.
Mesh mesh_graph_leaf(const EnlargedReebComponent& component, double z0,
                     int resolution, double r_stop = -1.0);
Mesh mesh_leaf(const EnlargedReebComponent& component, const Leaf& leaf,
               int resolution);
// Four graph translates spread over one period and four cylinders.
Mesh mesh_component(const EnlargedReebComponent& component, int resolution);
// rho from 4 eps + inner_gap to 8 eps, t unwrapped.
Mesh mesh_turbularization(const TurbModelSurface& surface, int resolution,
                          double inner_gap = 1e-3);

// ASCII OBJ with v and f records only; coordinates written with %.17g.
void write_obj(const Mesh& mesh, std::ostream& out);
void write_obj(const Mesh& mesh, const std::string& path);
Mesh read_obj(std::istream& in);
Mesh read_obj(const std::string& path);

}  // namespace cmcfol
