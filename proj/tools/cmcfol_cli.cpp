// cmcfol: build, verify and export the CMC foliation models.
//
//   cmcfol profile  [--n --H --r0 --r1 --r2] --out DIR
//   cmcfol reeb     [profile flags] [--lambda | --target-volume] [--leaf K:V]
//   cmcfol torus2d  [--Lx --Nx --Ny --eps-strip --margin] --out DIR
//   cmcfol verify   DIR/manifest.json
//   cmcfol export   --object cylinder:R|graph:Z0|component|turb --out DIR
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or precondition,
// 3 I/O, 4 omega vanishes on a leaf.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cmcfol/config.hpp"
#include "cmcfol/errors.hpp"
#include "cmcfol/mesh.hpp"
#include "cmcfol/profile_ode.hpp"
#include "cmcfol/radial_metric.hpp"
#include "cmcfol/reeb_foliation.hpp"
#include "cmcfol/suites.hpp"
#include "cmcfol/torus2d.hpp"
#include "cmcfol/turbularization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cmcfol;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIo = 3, kVanishing = 4 };

struct Flags {
  CLI::App* app = nullptr;
  std::map<std::string, double> num;
  std::map<std::string, std::string> str;
  Config config;
  std::string section;

  bool given(const std::string& name) const {
    return app->get_option("--" + name)->count() > 0;
  }

  double real(const std::string& name, double fallback) const {
    if (given(name)) return num.at(name);
    return config.get_double(section, name, fallback);
  }

  int integer(const std::string& name, int fallback) const {
    const double v = real(name, fallback);
    if (v != static_cast<int>(v))
      throw PreconditionError("--" + name + " must be an integer");
    return static_cast<int>(v);
  }

  std::string text(const std::string& name, const std::string& fallback) const {
    if (given(name)) return str.at(name);
    return config.get(section, name).value_or(fallback);
  }

  bool has(const std::string& name) const {
    return given(name) || config.get(section, name).has_value();
  }
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void write_json(const fs::path& path, const json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

fs::path prepare_out(const Flags& f) {
  const fs::path dir = f.text("out", "cmcfol_out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

ProfileParams profile_params(const Flags& f) {
  ProfileParams p;
  p.n = f.integer("n", p.n);
  p.H = f.real("H", p.H);
  p.r0 = f.real("r0", p.r0);
  p.r1 = f.real("r1", p.r1);
  p.r2 = f.real("r2", p.r2);
  validate(p);
  return p;
}

json params_json(const ProfileParams& p) {
  return {{"n", p.n}, {"H", p.H}, {"r0", p.r0}, {"r1", p.r1}, {"r2", p.r2}};
}

ProfileParams params_from_json(const json& doc) {
  ProfileParams p;
  p.n = doc.at("n").get<int>();
  p.H = doc.at("H").get<double>();
  p.r0 = doc.at("r0").get<double>();
  p.r1 = doc.at("r1").get<double>();
  p.r2 = doc.at("r2").get<double>();
  validate(p);
  return p;
}

TorusParams torus_params(const Flags& f) {
  TorusParams t;
  t.Lx = f.real("Lx", t.Lx);
  t.Nx = f.integer("Nx", t.Nx);
  t.Ny = f.integer("Ny", t.Ny);
  t.eps_strip = f.real("eps-strip", t.eps_strip);
  t.margin = f.real("margin", t.margin);
  if (t.Nx <= 0 || t.Ny <= 0 || t.Nx % 4 != 0 || t.Ny % 4 != 0)
    throw PreconditionError("Nx and Ny must be positive multiples of 4");
  return t;
}

// Writes the manifest; on failed checks also error.json and a JSON line on
// stderr.
int finish(const fs::path& dir, json manifest, const VerificationReport& rep) {
  manifest["checks"] = rep.to_json();
  manifest["pass"] = rep.all_pass();
  write_json(dir / "manifest.json", manifest);
  if (rep.all_pass()) {
    std::cout << "all " << rep.checks().size() << " checks pass\n";
    return kPass;
  }
  const json err = {{"error", "verification_failed"}, {"failed", rep.failures()}};
  write_json(dir / "error.json", err);
  std::cerr << err.dump() << '\n';
  return kFail;
}

VerificationReport run_profile_checks(const RadialProfile& profile,
                                      std::uint64_t seed) {
  VerificationReport rep = profile_suite(profile);
  rep.append(ode_suite(profile, seed));
  return rep;
}

int cmd_profile(const Flags& f, std::uint64_t seed) {
  const ProfileParams p = profile_params(f);
  const RadialProfile profile = RadialProfile::build(p);
  const fs::path dir = prepare_out(f);
  {
    auto out = open_out(dir / "profile.csv");
    profile.write_csv(out, f.integer("samples", 1000));
  }
  write_json(dir / "profile.json", profile.to_json());
  {
    const Trajectory graph = graph_integrate(profile, p.H, p.r1 - 1e-4);
    auto out = open_out(dir / "graph.csv");
    write_csv(graph, out);
    write_json(dir / "graph_summary.json", summary_json(graph));
  }
  json manifest = params_json(p);
  manifest["command"] = "profile";
  manifest["seed"] = seed;
  return finish(dir, manifest, run_profile_checks(profile, seed));
}

double resolve_lambda(const Flags& f, const RadialProfile& profile) {
  if (f.has("target-volume")) {
    if (f.has("lambda"))
      throw PreconditionError("give either --lambda or --target-volume");
    return choose_lambda(f.real("target-volume", 1.0), profile);
  }
  return f.real("lambda", 1.0);
}

// "cylinder:0.8" or "graph:0.25"
Leaf parse_leaf(const std::string& text, const EnlargedReebComponent& comp) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw PreconditionError("leaf must be cylinder:R or graph:Z0");
  const std::string kind = text.substr(0, colon);
  double value = 0.0;
  try {
    value = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw PreconditionError("bad leaf value in " + text);
  }
  if (kind == "cylinder") return comp.cylinder_leaf(value);
  if (kind == "graph") return comp.graph_leaf(value);
  throw PreconditionError("leaf kind must be cylinder or graph");
}

int cmd_reeb(const Flags& f, std::uint64_t seed) {
  const ProfileParams p = profile_params(f);
  RadialProfile profile = RadialProfile::build(p);
  const double lambda = resolve_lambda(f, profile);
  const EnlargedReebComponent comp(std::move(profile), lambda);
  const int resolution = f.integer("resolution", 32);
  const fs::path dir = prepare_out(f);
  if (f.has("leaf")) {
    const Leaf leaf = parse_leaf(f.text("leaf", ""), comp);
    write_obj(mesh_leaf(comp, leaf, resolution), (dir / "leaf.obj").string());
  } else {
    write_obj(mesh_component(comp, resolution), (dir / "component.obj").string());
  }
  json manifest = params_json(p);
  manifest["command"] = "reeb";
  manifest["lambda"] = lambda;
  if (f.has("target-volume"))
    manifest["target_volume"] = f.real("target-volume", 1.0);
  manifest["seed"] = seed;
  return finish(dir, manifest, reeb_suite(comp, seed));
}

void write_field(const fs::path& path, const GridField& field) {
  auto out = open_out(path);
  field.write_csv(out);
}

int cmd_torus2d(const Flags& f, std::uint64_t seed) {
  const TorusParams t = torus_params(f);
  const TorusResult result = run_torus_pipeline(t);
  const fs::path dir = prepare_out(f);
  write_field(dir / "f.csv", result.f.grid());
  write_field(dir / "omega_a.csv", result.form.omega.a);
  write_field(dir / "omega_b.csv", result.form.omega.b);
  write_field(dir / "omega_T.csv", result.form.w);
  write_field(dir / "g_xx.csv", result.metric.gxx());
  write_field(dir / "g_xy.csv", result.metric.gxy());
  write_field(dir / "g_yy.csv", result.metric.gyy());
  {
    auto out = open_out(dir / "leaf_curvature.csv");
    write_leaf_csv(result.rows, out);
  }
  json manifest = {{"command", "torus2d"},
                   {"Lx", t.Lx},
                   {"Nx", t.Nx},
                   {"Ny", t.Ny},
                   {"eps_strip", t.eps_strip},
                   {"margins",
                    {{"leafwise", t.margin},
                     {"min_omega_T", result.form.min_w},
                     {"tail_slope", t.tail_slope}}},
                   {"seed", seed}};
  return finish(dir, manifest, torus_suite(result));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << json{{"error", "missing_manifest"}, {"path", path}}.dump() << '\n';
    return kUsage;
  }
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "bad_manifest"}, {"detail", e.what()}}.dump() << '\n';
    return kUsage;
  }
  const std::string command = manifest.value("command", "");
  const std::uint64_t seed = manifest.value("seed", std::uint64_t{0});
  VerificationReport fresh;
  if (command == "profile") {
    const RadialProfile profile = RadialProfile::build(params_from_json(manifest));
    fresh = run_profile_checks(profile, seed);
  } else if (command == "reeb") {
    const EnlargedReebComponent comp = EnlargedReebComponent::build(
        params_from_json(manifest), manifest.at("lambda").get<double>());
    fresh = reeb_suite(comp, seed);
  } else if (command == "torus2d") {
    TorusParams t;
    t.Lx = manifest.at("Lx").get<double>();
    t.Nx = manifest.at("Nx").get<int>();
    t.Ny = manifest.at("Ny").get<int>();
    t.eps_strip = manifest.at("eps_strip").get<double>();
    t.margin = manifest.at("margins").at("leafwise").get<double>();
    t.tail_slope = manifest.at("margins").at("tail_slope").get<double>();
    fresh = torus_suite(run_torus_pipeline(t));
  } else {
    std::cerr << json{{"error", "unknown_command"}, {"command", command}}.dump()
              << '\n';
    return kUsage;
  }

  const VerificationReport stored =
      VerificationReport::from_json(manifest.at("checks"));
  json regressions = json::array();
  for (const Check& old : stored.checks()) {
    const Check* now = fresh.find(old.name);
    std::string reason;
    if (!now) {
      reason = "check no longer produced";
    } else if (!now->pass()) {
      reason = "check fails on re-run";
    } else if (fmt(now->reference) != fmt(old.reference) ||
               now->tolerance != old.tolerance) {
      reason = "stored reference or tolerance differs from re-run";
    } else if (fmt(now->value) != fmt(old.value)) {
      reason = "stored value differs from re-run";
    } else if (!old.pass()) {
      reason = "stored check does not pass";
    }
    if (reason.empty()) continue;
    json entry = {{"name", old.name},
                  {"reason", reason},
                  {"stored_value", old.value},
                  {"stored_reference", old.reference}};
    if (now) {
      entry["value"] = now->value;
      entry["reference"] = now->reference;
    }
    regressions.push_back(entry);
  }
  for (const Check& now : fresh.checks())
    if (!stored.find(now.name))
      regressions.push_back({{"name", now.name}, {"reason", "check missing from manifest"}});

  const json report = {{"manifest", path},
                       {"checks", fresh.checks().size()},
                       {"regressions", regressions}};
  std::cout << report.dump(2) << '\n';
  return regressions.empty() ? kPass : kFail;
}

int cmd_export(const Flags& f) {
  const std::string object = f.text("object", "component");
  const int resolution = f.integer("resolution", 32);
  const fs::path dir = prepare_out(f);
  Mesh mesh;
  std::string name;
  if (object == "turb") {
    const TurbModelSurface surface(f.real("turb-eps", 0.05),
                                   f.integer("sigma-sign", 1),
                                   f.real("wrap-rate", 0.01));
    mesh = mesh_turbularization(surface, resolution);
    name = "turb";
  } else {
    RadialProfile profile = RadialProfile::build(profile_params(f));
    const double lambda = resolve_lambda(f, profile);
    const EnlargedReebComponent comp(std::move(profile), lambda);
    if (object == "component") {
      mesh = mesh_component(comp, resolution);
      name = "component";
    } else {
      mesh = mesh_leaf(comp, parse_leaf(object, comp), resolution);
      name = object.substr(0, object.find(':'));
    }
  }
  const fs::path path = dir / (name + ".obj");
  write_obj(mesh, path.string());
  std::cout << path.string() << ": " << mesh.vertices.size() << " vertices, "
            << mesh.faces.size() << " faces\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CMC foliation models: construction, verification, export"};
  app.require_subcommand(1);
  Flags flags;
  flags.app = &app;

  const std::pair<const char*, const char*> numeric[] = {
      {"n", "ambient dimension (>= 3)"},
      {"H", "mean curvature of the graph leaves"},
      {"r0", "cap junction radius"},
      {"r1", "radius of the limit cylinder"},
      {"r2", "start of the flat plateau"},
      {"lambda", "period of the z direction"},
      {"target-volume", "choose lambda to give this boundary volume"},
      {"Lx", "torus length"},
      {"Nx", "grid points in x (multiple of 4)"},
      {"Ny", "grid points in y (multiple of 4)"},
      {"eps-strip", "half-width of the Reeb strips"},
      {"margin", "lower bound required for omega(T)"},
      {"seed", "random seed for sampled checks"},
      {"resolution", "mesh resolution"},
      {"samples", "rows in profile.csv"},
      {"turb-eps", "turbularization scale"},
      {"sigma-sign", "spiral direction, +1 or -1"},
      {"wrap-rate", "turbularization wrap rate"},
  };
  for (const auto& [name, help] : numeric)
    app.add_option(std::string("--") + name, flags.num[name], help);
  const std::pair<const char*, const char*> text[] = {
      {"out", "output directory"},
      {"config", "INI file supplying defaults per subcommand section"},
      {"leaf", "leaf to mesh, cylinder:R or graph:Z0"},
      {"object", "cylinder:R, graph:Z0, component or turb"},
  };
  for (const auto& [name, help] : text)
    app.add_option(std::string("--") + name, flags.str[name], help);

  auto* profile = app.add_subcommand("profile", "warped profile and ODE checks");
  auto* reeb = app.add_subcommand("reeb", "enlarged Reeb component");
  auto* torus = app.add_subcommand("torus2d", "flat torus construction");
  auto* verify = app.add_subcommand("verify", "re-run the checks of a manifest");
  auto* exporter = app.add_subcommand("export", "write an OBJ mesh");
  std::string manifest_path;
  verify->add_option("manifest", manifest_path, "manifest.json")->required();
  for (auto* sub : {profile, reeb, torus, verify, exporter}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (flags.given("config")) flags.config = Config::load(flags.str.at("config"));
    const std::uint64_t seed =
        static_cast<std::uint64_t>(flags.real("seed", 20240611));
    if (*profile) {
      flags.section = "profile";
      return cmd_profile(flags, seed);
    }
    if (*reeb) {
      flags.section = "reeb";
      return cmd_reeb(flags, seed);
    }
    if (*torus) {
      flags.section = "torus2d";
      return cmd_torus2d(flags, seed);
    }
    if (*verify) return cmd_verify(manifest_path);
    if (*exporter) {
      flags.section = "export";
      return cmd_export(flags);
    }
  } catch (const LeafwiseVanishingError& e) {
    std::cerr << json{{"error", "leafwise_vanishing"}, {"detail", e.what()},
                      {"i", e.i()}, {"j", e.j()}, {"value", e.value()}}.dump()
              << '\n';
    return kVanishing;
  } catch (const IoError& e) {
    std::cerr << json{{"error", "io"}, {"detail", e.what()}}.dump() << '\n';
    return kIo;
  } catch (const PreconditionError& e) {
    std::cerr << json{{"error", "usage"}, {"detail", e.what()}}.dump() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << json{{"error", "domain"}, {"detail", e.what()}}.dump() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "bad_manifest"}, {"detail", e.what()}}.dump() << '\n';
    return kUsage;
  }
  return kUsage;
}
