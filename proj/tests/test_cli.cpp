#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "patchdyn/serialize.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun run(const std::string& args) {
  static int counter = 0;
  const fs::path errf = fs::temp_directory_path() / ("patchdyn_cli_err_" + std::to_string(::getpid()) + "_" +
                                                     std::to_string(counter++));
  const std::string cmd = std::string(PATCHDYN_CLI) + " " + args + " 2>" + errf.string();
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(errf);
  fs::remove(errf);
  return r;
}

std::string params(const char* name) { return "--params " + testutil::data(name); }

}  // namespace

TEST(Cli, HelpAndDefaults) {
  EXPECT_EQ(run("--help").code, 0);
  const CliRun d = run("--show-defaults");
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("transient"), std::string::npos);
  EXPECT_NE(d.out.find("seed"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("equilibria " + params("fig1.json") + " --frobnicate").code, 2);
  EXPECT_EQ(run("equilibria --params /nonexistent.json").code, 2);
  const fs::path bad = fs::temp_directory_path() / "patchdyn_bad_params.json";
  std::ofstream(bad) << R"({"r": 1.5, "K1": 5})";
  const CliRun r = run("equilibria --params " + bad.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
  fs::remove(bad);
  EXPECT_EQ(run("equilibria " + params("fig1.json") + " --out /nonexistent_dir/x.json").code, 2);
}

TEST(Cli, EquilibriaFig1) {
  const CliRun r = run("equilibria " + params("fig1.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto eqs = patchdyn::read_equilibria_document(r.out);
  int boundary = 0, interior = 0;
  for (const auto& e : eqs) (e.kind == patchdyn::EquilibriumKind::Interior ? interior : boundary)++;
  EXPECT_EQ(boundary, 8);
  EXPECT_GE(interior, 1);
}

TEST(Cli, ConditionsExtinctFiresTheorem3) {
  const CliRun r = run("conditions " + params("extinct.json") + " --json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = patchdyn::read_document(r.out);
  bool found = false;
  for (const auto& e : j.at("report").at("entries"))
    if (e.at("theorem") == "Th3") found = found || e.at("fired") == "true";
  EXPECT_TRUE(found);
  const CliRun t = run("conditions " + params("extinct.json"));
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("Th3"), std::string::npos);
}

TEST(Cli, SimulateWritesCsv) {
  const fs::path out = fs::temp_directory_path() / "patchdyn_traj.csv";
  const CliRun r = run("simulate " + params("fig1.json") + " --init 1,1,1,1 --t-end 10 --sample-dt 0.5 --out " +
                    out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto t = patchdyn::read_csv(slurp(out));
  EXPECT_EQ(t.rows.size(), 21u);
  fs::remove(out);
  EXPECT_EQ(run("simulate " + params("fig1.json") + " --init 1,1,1").code, 2);
}

TEST(Cli, StabilityAtIndex) {
  const CliRun r = run("stability " + params("fig1.json") + " --at 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = patchdyn::read_document(r.out);
  EXPECT_EQ(j.at("eigenvalues").size(), 4u);
  EXPECT_EQ(run("stability " + params("fig1.json") + " --at 99").code, 2);
  EXPECT_EQ(run("stability " + params("fig1.json") + " --state 5,0,3,0").code, 0);
}

TEST(Cli, EveryShippedFileRunsEverySubcommand) {
  for (const char* f : {"fig1.json", "fig2.json", "fig3.json", "fig4a.json", "fig4b.json", "extinct.json",
                        "symmetric_density.json"}) {
    const std::string p = params(f);
    EXPECT_EQ(run("equilibria " + p).code, 0) << f;
    EXPECT_EQ(run("conditions " + p).code, 0) << f;
    EXPECT_EQ(run("stability " + p + " --at 0").code, 0) << f;
    EXPECT_EQ(run("simulate " + p + " --init 1,1,1,1 --t-end 5").code, 0) << f;
    EXPECT_EQ(run("compare " + p + " --probes 1 --transient 100 --window 200").code, 0) << f;
    EXPECT_EQ(run("sweep1d " + p + " --range 0:0.5:3 --transient 100 --window 200").code, 0) << f;
    EXPECT_EQ(run("sweep2d " + p + " --rho1 0:0.5:2 --rho2 0:0.05:2 --transient 100 --window 200").code, 0) << f;
  }
}

TEST(Cli, CompareHasBothSections) {
  const CliRun r = run("compare " + params("fig1.json") + " --probes 2 --transient 200 --window 400");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = patchdyn::read_document(r.out);
  EXPECT_TRUE(j.contains("strength"));
  EXPECT_TRUE(j.contains("density"));
}

TEST(Cli, Sweep2DByteIdenticalReruns) {
  const std::string cmd = "sweep2d " + params("fig1.json") + " --rho1 0:0.5:100 --rho2 0:0.05:100 --seed 7";
  const CliRun a = run(cmd), b = run(cmd);
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed=7"), std::string::npos);
  const auto t = patchdyn::read_csv(a.out);
  EXPECT_EQ(t.rows.size(), 10000u);
}
