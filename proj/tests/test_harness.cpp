#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "burgers/errors.hpp"
#include "burgers/harness/config.hpp"
#include "burgers/harness/ensemble.hpp"
#include "burgers/harness/report.hpp"

using namespace burgers;
using namespace burgers::harness;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("burgers_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LawRecord law(const std::string& id, double measured, double target, double tol, bool asserted = true) {
  LawRecord r;
  r.id = id;
  r.measured = measured;
  r.target = target;
  r.tolerance = tol;
  r.asserted = asserted;
  return r.evaluate();
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  std::istringstream in(
      "# desk run\n"
      "nu_list = 0.01, 0.005   # two viscosities\n"
      "seed = 7\n"
      "\n"
      "bracket_T = 2\n"
      "forcing = explicit(1:1)\n");
  const ExperimentConfig cfg = parse_config(in);
  EXPECT_EQ(cfg.nu_list, (std::vector<double>{0.01, 0.005}));
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.bracket.T, 2.0);
  EXPECT_EQ(cfg.forcing, "explicit(1:1)");
  EXPECT_EQ(cfg.cfl, ExperimentConfig{}.cfl);
}

TEST(Config, RejectsUnknownAndDuplicateKeys) {
  std::istringstream unknown("seed = 1\nviscosity = 0.1\n");
  try {
    parse_config(unknown, "x.conf");
    FAIL();
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find("x.conf:2"), std::string::npos);
  }
  std::istringstream dup("seed = 1\nseed = 2\n");
  EXPECT_THROW(parse_config(dup), ConfigurationError);
  std::istringstream bad("seed = many\n");
  EXPECT_THROW(parse_config(bad), ConfigurationError);
  std::istringstream noeq("seed 1\n");
  EXPECT_THROW(parse_config(noeq), ConfigurationError);
}

TEST(Config, RejectsUnderResolvedViscosity) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.nu_list = {1e-4};
  EXPECT_THROW(cfg.validate(), ConfigurationError);
  cfg = ExperimentConfig{};
  cfg.resolution_factor = 4;
  EXPECT_THROW(cfg.validate(), ConfigurationError);
  EXPECT_EQ(ExperimentConfig{}.grid_for(1e-3), 8192u);
}

TEST(Config, WriteParseRoundTrip) {
  ExperimentConfig cfg;
  cfg.nu_list = {0.02, 0.01};
  cfg.seed = 99;
  cfg.structure_p = {1.0, 2.5};
  std::stringstream ss;
  write_config(ss, cfg);
  const ExperimentConfig back = parse_config(ss);
  EXPECT_EQ(back.to_json(), cfg.to_json());
  EXPECT_EQ(config_keys().size(), cfg.to_json().size());
}

TEST(Law, Evaluation) {
  EXPECT_TRUE(law("a", 1.05, 1.0, 0.1).passed);
  EXPECT_FALSE(law("a", 1.2, 1.0, 0.1).passed);
  EXPECT_FALSE(law("a", std::nan(""), 1.0, 0.1).passed);
  LawRecord r = law("b", 0.5, 1.0, 0.0);
  r.check = Check::at_most;
  EXPECT_TRUE(r.evaluate().passed);
  r.measured = 1.5;
  EXPECT_FALSE(r.evaluate().passed);
}

TEST(Report, EmptyReportPasses) {
  const auto dir = scratch("empty");
  EXPECT_EQ(emit_report(AcceptanceReport{}, dir.string()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "laws.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Report, PassingAndFailingLaws) {
  AcceptanceReport rep;
  Section s{"demo", {law("ok", 1.0, 1.0, 0.1), law("loose", 9.0, 1.0, 0.1, false)}, {}, 0.0};
  rep.sections.push_back(s);
  const auto dir = scratch("pass");
  EXPECT_EQ(emit_report(rep, dir.string()), 0);

  rep.sections[0].laws.push_back(law("injected_failure", 2.0, 1.0, 0.1));
  EXPECT_EQ(emit_report(rep, dir.string()), 1);
  ASSERT_EQ(rep.failures().size(), 1u);
  EXPECT_EQ(rep.failures()[0]->id, "injected_failure");
  EXPECT_NE(slurp(dir / "report.txt").find("injected_failure"), std::string::npos);
  EXPECT_NE(rep.find("loose"), nullptr);
  EXPECT_EQ(rep.find("missing"), nullptr);
  std::filesystem::remove_all(dir);
}

TEST(Report, TablesAreDeterministic) {
  AcceptanceReport rep;
  Section s;
  s.name = "t";
  s.tables.push_back({"t/nu=0.01/data.csv", {"x", "y"}, {{1.0, 0.1}, {2.0, 1.0 / 3.0}}});
  rep.sections.push_back(s);
  const auto a = scratch("det_a"), b = scratch("det_b");
  emit_report(rep, a.string());
  emit_report(rep, b.string());
  const std::string csv = slurp(a / "t/nu=0.01/data.csv");
  EXPECT_EQ(csv, slurp(b / "t/nu=0.01/data.csv"));
  EXPECT_EQ(csv.substr(0, 4), "x,y\n");
  EXPECT_NE(csv.find(format_number(1.0 / 3.0)), std::string::npos);
  EXPECT_EQ(nu_label(0.001), "nu=0.001");
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(Report, UnwritableDirectoryIsIoError) {
  const auto file = scratch("blocker");
  std::ofstream(file) << "x";
  EXPECT_THROW(emit_report(AcceptanceReport{}, (file / "sub").string()), IoError);
  std::filesystem::remove(file);
}

TEST(Ensemble, ParallelForRethrowsLowestIndex) {
  std::vector<int> hits(50, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] = 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  try {
    parallel_for(10, [](std::size_t i) {
      if (i == 3 || i == 7) throw DomainError("fail " + std::to_string(i));
    });
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(std::string(e.what()), "fail 3");
  }
}

TEST(Ensemble, MemberIdsDoNotCollide) {
  EXPECT_NE(member_id(Stream::ensemble_a, 0), member_id(Stream::ensemble_b, 0));
  EXPECT_NE(member_id(Stream::partner, 5), member_id(Stream::ensemble_a, 5));
  EXPECT_EQ(member_id(Stream::ensemble_a, 5), 5u);
}
