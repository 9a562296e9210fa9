#include "cmcfol/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmcfol/errors.hpp"
#include "cmcfol/reeb_foliation.hpp"
#include "cmcfol/turbularization.hpp"

namespace cmcfol {

namespace {

void check_resolution(int resolution) {
  if (resolution < 4)
    throw PreconditionError("mesh resolution must be at least 4");
}

// rows x cols lattice, periodic in the column (angular) direction. When
// collapsed_first_row is set the first row is a single point repeated and
// only the non-degenerate triangle of each first-band quad is emitted.
void add_band_faces(Mesh& mesh, int base, int rows, int cols,
                    bool collapsed_first_row) {
  auto idx = [&](int k, int j) { return base + k * cols + j; };
  for (int k = 0; k + 1 < rows; ++k) {
    for (int j = 0; j < cols; ++j) {
      const int j1 = (j + 1) % cols;
      if (!(collapsed_first_row && k == 0))
        mesh.faces.push_back({idx(k, j), idx(k, j1), idx(k + 1, j1)});
      mesh.faces.push_back({idx(k, j), idx(k + 1, j1), idx(k + 1, j)});
    }
  }
}

double angle(int j, int cols) { return 2.0 * M_PI * j / cols; }

}  // namespace

void Mesh::append(const Mesh& other) {
  const int base = static_cast<int>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  for (const auto& f : other.faces)
    faces.push_back({f[0] + base, f[1] + base, f[2] + base});
}

Mesh mesh_cylinder(double r, double lambda, int resolution) {
  check_resolution(resolution);
  Mesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int k = 0; k < resolution; ++k) {
    const double z = lambda * k / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double t = angle(j, resolution);
      mesh.vertices.push_back({r * std::cos(t), r * std::sin(t), z});
    }
  }
  add_band_faces(mesh, 0, resolution, resolution, false);
  return mesh;
}

Mesh mesh_graph_leaf(const EnlargedReebComponent& component, double z0,
                     int resolution, double r_stop) {
  check_resolution(resolution);
  if (r_stop < 0.0) r_stop = component.profile().r1() - 1e-4;
  if (!(r_stop > 0.0 && r_stop < component.profile().r1()))
    throw PreconditionError("graph leaves are meshed over D(r_stop), r_stop < r1");
  Mesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int k = 0; k < resolution; ++k) {
    // rings bunch up toward r_stop where the leaf climbs fastest
    const double r =
        k + 1 == resolution
            ? r_stop
            : r_stop * std::sin(0.5 * M_PI * k / (resolution - 1));
    const double z = z0 + component.z_graph(r);
    for (int j = 0; j < resolution; ++j) {
      const double t = angle(j, resolution);
      mesh.vertices.push_back({r * std::cos(t), r * std::sin(t), z});
    }
  }
  add_band_faces(mesh, 0, resolution, resolution, true);
  return mesh;
}

Mesh mesh_leaf(const EnlargedReebComponent& component, const Leaf& leaf,
               int resolution) {
  if (leaf.is_graph()) return mesh_graph_leaf(component, leaf.z0(), resolution);
  return mesh_cylinder(leaf.radius(), component.lambda(), resolution);
}

Mesh mesh_component(const EnlargedReebComponent& component, int resolution) {
  const auto& p = component.profile();
  Mesh mesh;
  for (int k = 0; k < 4; ++k)
    mesh.append(mesh_graph_leaf(component, component.lambda() * k / 4.0,
                                resolution));
  for (double r : {p.r1(), 0.5 * (p.r1() + p.r2()), p.r2(), 1.0})
    mesh.append(mesh_cylinder(r, component.lambda(), resolution));
  return mesh;
}

Mesh mesh_turbularization(const TurbModelSurface& surface, int resolution,
                          double inner_gap) {
  check_resolution(resolution);
  const double inner = surface.inner_radius();
  const double span = surface.outer_radius() - inner;
  if (!(inner_gap > 0.0 && inner_gap < span))
    throw PreconditionError("inner gap must lie in (0, 4 eps)");
  Mesh mesh;
  for (int k = 0; k < resolution; ++k) {
    const double q = static_cast<double>(k) / (resolution - 1);
    const double rho =
        k + 1 == resolution ? surface.outer_radius()
                            : inner + inner_gap * std::pow(span / inner_gap, q);
    const double t = surface.height(rho);
    for (int j = 0; j < resolution; ++j) {
      const double a = angle(j, resolution);
      mesh.vertices.push_back({rho * std::cos(a), rho * std::sin(a), t});
    }
  }
  add_band_faces(mesh, 0, resolution, resolution, false);
  return mesh;
}

void write_obj(const Mesh& mesh, std::ostream& out) {
  char line[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
    out << line;
  }
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw IoError("failed writing OBJ stream");
}

void write_obj(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_obj(mesh, out);
}

Mesh read_obj(std::istream& in) {
  Mesh mesh;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::array<double, 3> v{};
      std::string tok;
      for (double& c : v) {
        if (!(ls >> tok)) throw IoError("bad vertex at line " + std::to_string(lineno));
        c = std::strtod(tok.c_str(), nullptr);
      }
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      std::string tok;
      for (int& c : f) {
        if (!(ls >> tok)) throw IoError("bad face at line " + std::to_string(lineno));
        c = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

Mesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_obj(in);
}

}  // namespace cmcfol
