#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cmcfol/config.hpp"
#include "cmcfol/errors.hpp"
#include "cmcfol/report.hpp"

using namespace cmcfol;

TEST(Config, SectionsCommentsAndFallback) {
  std::istringstream in(
      "seed = 42   # global\n"
      "[profile]\n"
      "  H = 1.5 ; inline\n"
      "n=4\n"
      "\n"
      "[torus2d]\n"
      "Nx = 256\n");
  const Config cfg = Config::parse(in);
  EXPECT_EQ(cfg.get_double("profile", "H", 0.0), 1.5);
  EXPECT_EQ(cfg.get_int("profile", "n", 3), 4);
  EXPECT_EQ(cfg.get_int("torus2d", "Nx", 512), 256);
  EXPECT_EQ(cfg.get_int("torus2d", "seed", 0), 42);
  EXPECT_EQ(cfg.get_int("torus2d", "Ny", 64), 64);
  EXPECT_FALSE(cfg.get("profile", "missing").has_value());
}

TEST(Config, Malformed) {
  std::istringstream a("[profile\n");
  EXPECT_THROW(Config::parse(a), PreconditionError);
  std::istringstream b("just words\n");
  EXPECT_THROW(Config::parse(b), PreconditionError);
  std::istringstream c("H = fast\n");
  EXPECT_THROW(Config::parse(c).get_double("", "H", 1.0), PreconditionError);
  std::istringstream d("n = 3.5\n");
  EXPECT_THROW(Config::parse(d).get_int("", "n", 1), PreconditionError);
  EXPECT_THROW(Config::load("/nonexistent/file.ini"), IoError);
}

TEST(Report, BoundsFlagsAndRelative) {
  VerificationReport rep;
  rep.add_bound("small", 1e-9, 1e-8, Provenance::paper);
  rep.add_bound("large", 1e-7, 1e-8, Provenance::derived);
  rep.add_flag("holds", true, Provenance::trivial);
  rep.add({"rel", 101.0, 100.0, 0.02, true, Provenance::derived});
  EXPECT_TRUE(rep.find("small")->pass());
  EXPECT_FALSE(rep.find("large")->pass());
  EXPECT_TRUE(rep.find("holds")->pass());
  EXPECT_TRUE(rep.find("rel")->pass());
  EXPECT_FALSE(rep.all_pass());
  EXPECT_EQ(rep.failures(), std::vector<std::string>{"large"});
  EXPECT_EQ(rep.find("nope"), nullptr);
}

TEST(Report, NanNeverPasses) {
  VerificationReport rep;
  rep.add_bound("nan", std::nan(""), 1.0, Provenance::derived);
  EXPECT_FALSE(rep.all_pass());
}

TEST(Report, JsonRoundTrip) {
  VerificationReport rep;
  rep.add_bound("a", 0.5, 1.0, Provenance::paper);
  rep.add({"b", 2.0, 2.0, 0.0, false, Provenance::trivial});
  const auto doc = rep.to_json();
  EXPECT_EQ(doc[0]["provenance"], "PAPER");
  const auto back = VerificationReport::from_json(doc);
  ASSERT_EQ(back.checks().size(), 2u);
  EXPECT_EQ(back.checks()[1].name, "b");
  EXPECT_EQ(back.checks()[1].provenance, Provenance::trivial);
  EXPECT_EQ(back.to_json(), doc);
}

TEST(Report, ProvenanceStrings) {
  EXPECT_EQ(to_string(Provenance::derived), "DERIVED");
  EXPECT_EQ(provenance_from_string("PAPER"), Provenance::paper);
  EXPECT_THROW(provenance_from_string("maybe"), PreconditionError);
}
