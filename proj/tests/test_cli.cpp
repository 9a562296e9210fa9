// Runs the installed command-line tool and checks exit codes and outputs.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("cmcfol_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(CMCFOL_CLI_PATH) + " " + args +
                          " >" + (scratch() / "stdout.txt").string() + " 2>" +
                          (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Cli, ProfileWritesArtifacts) {
  const fs::path out = scratch() / "profile";
  ASSERT_EQ(run("profile --out " + out.string()), 0);
  for (const char* name : {"profile.csv", "profile.json", "graph.csv",
                           "graph_summary.json", "manifest.json"})
    EXPECT_TRUE(fs::exists(out / name)) << name;
  const auto m = read_json(out / "manifest.json");
  EXPECT_TRUE(m.at("pass").get<bool>());
  EXPECT_EQ(m.at("command"), "profile");
}

TEST(Cli, VerifyRoundTripAndTamper) {
  const fs::path out = scratch() / "verify";
  ASSERT_EQ(run("reeb --lambda 2 --out " + out.string()), 0);
  EXPECT_EQ(run("verify " + (out / "manifest.json").string()), 0);

  auto m = read_json(out / "manifest.json");
  m["checks"][0]["value"] = m["checks"][0]["value"].get<double>() + 1e-3;
  std::ofstream(out / "tampered.json") << m.dump();
  EXPECT_EQ(run("verify " + (out / "tampered.json").string()), 1);
  std::ifstream report(scratch() / "stdout.txt");
  const auto r = nlohmann::json::parse(report);
  EXPECT_EQ(r.at("regressions").size(), 1u);
}

TEST(Cli, TargetVolumeChoosesLambda) {
  const fs::path out = scratch() / "volume";
  ASSERT_EQ(run("reeb --target-volume 10 --leaf cylinder:0.9 --out " +
                out.string()),
            0);
  EXPECT_TRUE(fs::exists(out / "leaf.obj"));
  EXPECT_NEAR(read_json(out / "manifest.json").at("lambda").get<double>(),
              10.0 / (2 * M_PI * 1.3), 1e-9);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("profile --bogus 1"), 2);
  EXPECT_EQ(run("torus2d --Nx 510 --out " + (scratch() / "x").string()), 2);
  EXPECT_EQ(run("profile --r0 0.6 --out " + (scratch() / "x").string()), 2);
  EXPECT_EQ(run("verify " + (scratch() / "missing.json").string()), 2);
  EXPECT_EQ(run("reeb --lambda 1 --leaf cylinder:0.2 --out " +
                (scratch() / "x").string()),
            2);
  EXPECT_EQ(run(""), 2);
}

TEST(Cli, IoErrorExitsThree) {
  std::ofstream(scratch() / "blocker") << "file";
  EXPECT_EQ(run("profile --out " + (scratch() / "blocker" / "sub").string()), 3);
  EXPECT_EQ(run("profile --config " + (scratch() / "nope.ini").string() +
                " --out " + (scratch() / "y").string()),
            3);
}

TEST(Cli, LeafwiseVanishingExitsFour) {
  const fs::path out = scratch() / "vanish";
  EXPECT_EQ(run("torus2d --Nx 64 --Ny 8 --margin 10 --out " + out.string()), 4);
  std::ifstream err(scratch() / "stderr.txt");
  const auto e = nlohmann::json::parse(err);
  EXPECT_EQ(e.at("error"), "leafwise_vanishing");
  EXPECT_TRUE(e.contains("i"));
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  std::ofstream(scratch() / "run.ini") << "[torus2d]\nNy = 16\n";
  const fs::path out = scratch() / "cfg";
  ASSERT_EQ(run("torus2d --config " + (scratch() / "run.ini").string() +
                " --out " + out.string()),
            0);
  EXPECT_EQ(read_json(out / "manifest.json").at("Ny"), 16);
}

TEST(Cli, ExportObjects) {
  const fs::path out = scratch() / "export";
  EXPECT_EQ(run("export --object turb --turb-eps 0.05 --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "turb.obj"));
  EXPECT_EQ(run("export --object component --resolution 8 --out " + out.string()),
            0);
  EXPECT_TRUE(fs::exists(out / "component.obj"));
  EXPECT_EQ(run("export --object sphere --out " + out.string()), 2);
}
