#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "cmcfol/errors.hpp"
#include "cmcfol/profile_ode.hpp"
#include "cmcfol/radial_metric.hpp"
#include "cmcfol/reeb_foliation.hpp"
#include "cmcfol/suites.hpp"
#include "cmcfol/torus2d.hpp"
#include "cmcfol/turbularization.hpp"

namespace py = pybind11;
using namespace cmcfol;

namespace {

py::dict trajectory_dict(const Trajectory& t) {
  std::vector<double> s, r, z, sigma;
  for (const auto& st : t.states) {
    s.push_back(st.s);
    r.push_back(st.r);
    z.push_back(st.z);
    sigma.push_back(st.sigma);
  }
  py::dict d;
  d["s"] = s;
  d["r"] = r;
  d["z"] = z;
  d["sigma"] = sigma;
  d["J"] = t.J;
  d["J0"] = t.J0;
  d["max_J_drift"] = t.max_J_drift;
  d["stop_reason"] = to_string(t.stop_reason);
  d["n_steps"] = t.n_steps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CMC foliations: warped disk profiles, Reeb-type components and the flat-torus model.";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<LeafwiseVanishingError>(m, "LeafwiseVanishingError",
                                                 PyExc_RuntimeError);

  py::class_<ProfileParams>(m, "ProfileParams")
      .def(py::init([](int n, double H, double r0, double r1, double r2) {
             return ProfileParams{n, H, r0, r1, r2};
           }),
           py::arg("n") = 3, py::arg("H") = 1.0, py::arg("r0") = 0.25,
           py::arg("r1") = 0.5, py::arg("r2") = 0.75)
      .def_readwrite("n", &ProfileParams::n)
      .def_readwrite("H", &ProfileParams::H)
      .def_readwrite("r0", &ProfileParams::r0)
      .def_readwrite("r1", &ProfileParams::r1)
      .def_readwrite("r2", &ProfileParams::r2);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_static("build", &RadialProfile::build, py::arg("params") = ProfileParams{})
      .def_property_readonly("n", &RadialProfile::n)
      .def_property_readonly("H", &RadialProfile::H)
      .def_property_readonly("r0", &RadialProfile::r0)
      .def_property_readonly("r1", &RadialProfile::r1)
      .def_property_readonly("r2", &RadialProfile::r2)
      .def_property_readonly("plateau", &RadialProfile::plateau)
      .def("phi", [](const RadialProfile& p, double r) {
        const Jet j = p.eval(r);
        return py::make_tuple(j.value, j.d1, j.d2);
      }, py::arg("r"), "(phi, phi', phi'') at r.")
      .def("h", py::overload_cast<double, double>(&RadialProfile::h, py::const_),
           py::arg("r"), py::arg("H"))
      .def("graph_ratio", &RadialProfile::graph_ratio, py::arg("r"), py::arg("H"))
      .def("graph_cosine", &RadialProfile::graph_cosine, py::arg("r"), py::arg("H"))
      .def("kappa_r", &RadialProfile::kappa_r)
      .def("cylinder_H", &RadialProfile::cylinder_H)
      .def("ricci_normal", &RadialProfile::ricci_normal)
      .def("to_json", [](const RadialProfile& p) { return p.to_json().dump(); });

  m.def("phi_closed_form", [](double r, int n, double H, double r1) {
    const Jet j = phi_closed_form(r, n, H, r1);
    return py::make_tuple(j.value, j.d1, j.d2);
  }, py::arg("r"), py::arg("n"), py::arg("H"), py::arg("r1"));
  m.def("h_closed_form", &h_closed_form, py::arg("r"), py::arg("n"), py::arg("H"),
        py::arg("r1"));

  m.def("first_integral", [](const RadialProfile& p, double H, double r, double sigma) {
    return first_integral({0.0, r, 0.0, sigma}, p, H);
  }, py::arg("profile"), py::arg("H"), py::arg("r"), py::arg("sigma"));
  m.def("integrate", [](const RadialProfile& p, double H, double r, double z,
                        double sigma, double max_s) {
    return trajectory_dict(integrate({0.0, r, z, sigma}, p, H, StopRule::until_s(max_s)));
  }, py::arg("profile"), py::arg("H"), py::arg("r"), py::arg("z"), py::arg("sigma"),
        py::arg("max_s"));
  m.def("graph_integrate", [](const RadialProfile& p, double H, double r_stop, int samples) {
    return trajectory_dict(graph_integrate(p, H, r_stop, samples));
  }, py::arg("profile"), py::arg("H"), py::arg("r_stop"), py::arg("samples") = 4000);
  m.def("arc_length", py::overload_cast<const RadialProfile&, double, double, double>(&arc_length),
        py::arg("profile"), py::arg("H"), py::arg("a"), py::arg("b"));

  py::class_<EnlargedReebComponent>(m, "EnlargedReebComponent")
      .def_static("build", &EnlargedReebComponent::build, py::arg("params"),
                  py::arg("lam"))
      .def_property_readonly("lam", &EnlargedReebComponent::lambda)
      .def_property_readonly("profile", &EnlargedReebComponent::profile)
      .def("z_graph", &EnlargedReebComponent::z_graph)
      .def("sigma_graph", &EnlargedReebComponent::sigma_graph)
      .def("mean_curvature_at_radius", &EnlargedReebComponent::mean_curvature_at_radius)
      .def("cylinder_volume", &EnlargedReebComponent::cylinder_volume);
  m.def("choose_lambda", &choose_lambda, py::arg("target_volume"), py::arg("profile"));

  py::class_<TurbModelSurface>(m, "TurbModelSurface")
      .def(py::init<double, int, double, int, double>(), py::arg("eps"),
           py::arg("sigma_sign"), py::arg("wrap_rate"), py::arg("n") = 3,
           py::arg("period") = 1.0)
      .def("height", &TurbModelSurface::height)
      .def("height_derivative", &TurbModelSurface::height_derivative)
      .def("tilt_to_cylinder", &TurbModelSurface::tilt_to_cylinder);

  m.def("torus_summary", [](int Nx, int Ny, double margin) {
    TorusParams params;
    params.Nx = Nx;
    params.Ny = Ny;
    params.margin = margin;
    const TorusResult res = run_torus_pipeline(params);
    py::dict d;
    d["max_kappa_error"] = res.max_kappa_error;
    d["min_omega_T"] = res.form.min_w;
    d["max_det_error"] = res.metric.max_det_error();
    d["f_integral"] = res.f.integral();
    d["leaf_samples"] = res.rows.size();
    return d;
  }, py::arg("Nx") = 512, py::arg("Ny") = 64, py::arg("margin") = 1e-2);

  m.def("profile_suite", [](const RadialProfile& p) {
    return profile_suite(p).to_json().dump();
  });
  m.def("ode_suite", [](const RadialProfile& p, std::uint64_t seed, int starts) {
    return ode_suite(p, seed, starts).to_json().dump();
  }, py::arg("profile"), py::arg("seed") = 20240611, py::arg("random_starts") = 50);
  m.def("reeb_suite", [](const EnlargedReebComponent& c, std::uint64_t seed, int points) {
    return reeb_suite(c, seed, points).to_json().dump();
  }, py::arg("component"), py::arg("seed") = 20240611, py::arg("partition_points") = 10000);
  m.def("turb_suite", [](const TurbModelSurface& s, std::uint64_t seed) {
    return turb_suite(s, seed).to_json().dump();
  }, py::arg("surface"), py::arg("seed") = 20240611);
  m.def("torus_suite", [](int Nx, int Ny) {
    TorusParams params;
    params.Nx = Nx;
    params.Ny = Ny;
    return torus_suite(run_torus_pipeline(params)).to_json().dump();
  }, py::arg("Nx") = 512, py::arg("Ny") = 64);
}
