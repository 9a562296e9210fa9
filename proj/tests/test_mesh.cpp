#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cmcfol/errors.hpp"
#include "cmcfol/mesh.hpp"
#include "cmcfol/reeb_foliation.hpp"
#include "cmcfol/turbularization.hpp"

using namespace cmcfol;

TEST(Mesh, CylinderVerticesLieOnRadius) {
  const Mesh m = mesh_cylinder(0.6, 2.0, 16);
  ASSERT_FALSE(m.faces.empty());
  for (const auto& v : m.vertices) {
    EXPECT_NEAR(std::hypot(v[0], v[1]), 0.6, 1e-14);
    EXPECT_GE(v[2], 0.0);
    EXPECT_LE(v[2], 2.0 + 1e-14);
  }
  for (const auto& f : m.faces)
    for (int idx : f) {
      EXPECT_GE(idx, 0);
      EXPECT_LT(idx, static_cast<int>(m.vertices.size()));
    }
}

TEST(Mesh, GraphLeafVerticesOnLeaf) {
  const auto c = EnlargedReebComponent::build({}, 1.0);
  const Mesh m = mesh_graph_leaf(c, 0.2, 12);
  for (const auto& v : m.vertices) {
    const double r = std::hypot(v[0], v[1]);
    EXPECT_NEAR(v[2], 0.2 + c.z_graph(r), 1e-9);
  }
}

TEST(Mesh, TurbularizationVerticesOnSurface) {
  const TurbModelSurface s(0.05, 1, 0.7);
  const Mesh m = mesh_turbularization(s, 10);
  for (const auto& v : m.vertices) {
    const double rho = std::min(std::hypot(v[0], v[1]), s.outer_radius());
    EXPECT_NEAR(v[2], s.height(rho), 1e-9 * (1 + std::abs(v[2])));
  }
}

TEST(Mesh, ResolutionTooSmall) {
  EXPECT_THROW(mesh_cylinder(0.6, 1.0, 3), PreconditionError);
}

TEST(Mesh, ObjRoundTrip) {
  const auto c = EnlargedReebComponent::build({}, 1.0);
  const Mesh m = mesh_component(c, 8);
  std::stringstream buf;
  write_obj(m, buf);
  const Mesh back = read_obj(buf);
  ASSERT_EQ(back.vertices.size(), m.vertices.size());
  ASSERT_EQ(back.faces.size(), m.faces.size());
  for (std::size_t k = 0; k < m.vertices.size(); ++k)
    for (int d = 0; d < 3; ++d) EXPECT_EQ(back.vertices[k][d], m.vertices[k][d]);
  EXPECT_EQ(back.faces, m.faces);
}

TEST(Mesh, ObjFacesAreOneBased) {
  Mesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.faces = {{0, 1, 2}};
  std::ostringstream out;
  write_obj(m, out);
  EXPECT_NE(out.str().find("f 1 2 3"), std::string::npos);
}

TEST(Mesh, AppendOffsetsFaces) {
  Mesh a;
  a.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  a.faces = {{0, 1, 2}};
  Mesh b = a;
  a.append(b);
  EXPECT_EQ(a.vertices.size(), 6u);
  EXPECT_EQ(a.faces[1], (std::array<int, 3>{3, 4, 5}));
}

TEST(Mesh, IoErrors) {
  EXPECT_THROW(read_obj(std::string("/nonexistent/dir/x.obj")), IoError);
  EXPECT_THROW(write_obj(Mesh{}, std::string("/nonexistent/dir/x.obj")), IoError);
}
