#include "vilenkin/cli.hpp"
#include "vilenkin/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vilenkin::cli {
namespace {

using json = nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "vilenkin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string transform(const RunConfig& config, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out;
  run_transform(config, in, out);
  return out.str();
}

const json* find_record(const json& report, const std::string& name) {
  for (const auto& r : report["records"]) {
    if (r["name"] == name) return &r;
  }
  return nullptr;
}

TEST(Cli, VerifyPassesForBaseThree) {
  const CliRun r = run({"verify", "--p", "3", "--max-rank", "3"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(report["artifact"]["version"], kArtifactVersion);
  EXPECT_TRUE(report["summary"]["all_passed"].get<bool>());
  EXPECT_TRUE(report.contains("wall_time_s"));
  EXPECT_GE(report["records"].size(), 12u);
  for (const auto& rec : report["records"]) {
    EXPECT_EQ(rec["status"], "pass") << rec["name"];
    EXPECT_FALSE(rec["anchor"].get<std::string>().empty());
  }
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"verify", "--p", "1"}).code, kExitConfigError);
  const CliRun big = run({"verify", "--p", "2", "--max-rank", "40"});
  EXPECT_EQ(big.code, kExitConfigError);
  EXPECT_NE(big.err.find("cell limit"), std::string::npos);
  EXPECT_EQ(run({"verify", "--p", "5", "--max-rank", "4"}).code, kExitConfigError);  // verify work cap
  EXPECT_EQ(run({"verify", "--tolerance", "0"}).code, kExitConfigError);
  EXPECT_EQ(run({"verify", "--format", "xml"}).code, kExitConfigError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitConfigError);
  EXPECT_EQ(run({}).code, kExitConfigError);
  EXPECT_EQ(run({"verify", "--p", "three"}).code, kExitConfigError);
  EXPECT_EQ(run({"index", "--set", "vtilde"}).code, kExitConfigError);  // --max is required
  EXPECT_EQ(run({"verify", "--help"}).code, kExitPass);
}

TEST(Cli, CellLimitFromEnvironment) {
  ::setenv(kCellLimitEnv, "100", 1);
  EXPECT_EQ(run({"sharpness", "--p", "3", "--d", "5"}).code, kExitConfigError);
  EXPECT_EQ(run({"sharpness", "--p", "3", "--d", "5", "--max-cells", "1000"}).code, kExitPass);
  ::setenv(kCellLimitEnv, "lots", 1);
  EXPECT_EQ(run({"sharpness", "--p", "3", "--d", "1"}).code, kExitConfigError);
  ::unsetenv(kCellLimitEnv);
  EXPECT_EQ(cell_limit(), kDefaultCellLimit);
}

TEST(Cli, SharpnessReports) {
  auto measures = [](const CliRun& r) {
    const json report = json::parse(r.out);
    return std::make_pair(report["records"][0]["exact"], report["records"][1]["exact"]);
  };
  const CliRun a = run({"sharpness", "--p", "3", "--d", "2"});
  ASSERT_EQ(a.code, kExitPass);
  auto [v, vt] = measures(a);
  EXPECT_EQ(v["level_set_measure"], "5/9");
  EXPECT_EQ(vt["level_set_measure"], "8/9");

  std::tie(v, vt) = measures(run({"sharpness", "--p", "2", "--d", "3"}));
  EXPECT_EQ(v["threshold"], "1/8");
  EXPECT_EQ(vt["threshold"], "1/8");

  std::tie(v, vt) = measures(run({"sharpness", "--p", "5", "--d", "1"}));
  EXPECT_EQ(v["threshold"], "4/5");
  EXPECT_EQ(vt["threshold"], "1/5");
  EXPECT_EQ(v["level_set_measure"], "1/5");
  EXPECT_EQ(vt["level_set_measure"], "4/5");
}

TEST(Cli, ReportsAreDeterministic) {
  const std::vector<std::string> args = {"khinchin", "--p", "3", "--d", "2", "--q", "4", "--N", "80",
                                         "--trials", "50", "--seed", "5", "--no-timing"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(json::parse(a.out).contains("wall_time_s"));
  const CliRun other = run({"khinchin", "--p", "3", "--d", "2", "--q", "4", "--N", "80", "--trials", "50", "--seed",
                         "6", "--no-timing"});
  EXPECT_NE(a.out, other.out);
  const json report = json::parse(a.out);
  EXPECT_EQ(report["config"]["seed"], 5);
  const json* k = find_record(report, "khinchin-constant");
  ASSERT_NE(k, nullptr);
  EXPECT_TRUE((*k)["approx"]["best_ratio"].contains("err"));
}

TEST(Cli, CsvProjection) {
  const CliRun r = run({"sharpness", "--p", "2", "--d", "1", "--format", "csv", "--no-timing"});
  ASSERT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out.rfind("record,status,anchor,kind,field,value,err\n", 0), 0u);
  EXPECT_NE(r.out.find("sharpness-v,pass,"), std::string::npos);
  EXPECT_NE(r.out.find(",exact,level_set_measure,1/2,"), std::string::npos);
}

TEST(Cli, IndexListing) {
  const CliRun r = run({"index", "--set", "vtilde", "--p", "3", "--d", "2", "--max", "26"});
  ASSERT_EQ(r.code, kExitPass);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 18);
  EXPECT_EQ(run({"index", "--set", "v", "--p", "3", "--d", "2", "--max", "26"}).out, "1\n3\n4\n9\n10\n12\n");
  EXPECT_EQ(run({"index", "--set", "aset", "--p", "3", "--s", "1", "--digits", "1", "2", "--max", "8"}).out,
            "1\n6\n");
  EXPECT_EQ(run({"index", "--set", "w", "--p", "3", "--max", "8"}).code, kExitConfigError);
}

TEST(Cli, TransformLines) {
  RunConfig config;
  config.p = 2;
  config.k = 2;
  EXPECT_EQ(transform(config, "4\n0\n0\n0\n"), "1/1\n1/1\n1/1\n1/1\n");
  config.direction = "inverse";
  EXPECT_EQ(transform(config, "1\n1\n1\n1\n"), "4/1\n0/1\n0/1\n0/1\n");

  // p = 3: value omega on cell 0 only; coefficients are omega^(1-e)/3.
  RunConfig c3;
  c3.p = 3;
  c3.direction = "forward";
  const std::string out = transform(c3, "0 1 0\n0\n0\n");
  EXPECT_EQ(out, "0/1 1/3 0/1\n0/1 1/3 0/1\n0/1 1/3 0/1\n");

  RunConfig f;
  f.p = 2;
  f.mode = "float";
  EXPECT_EQ(transform(f, "4 0\n0 0\n0 0\n0\n"), "1 0\n1 0\n1 0\n1 0\n");
  EXPECT_EQ(transform(f, "[[4,0],0,0,0]"), "[[1.0,0.0],[1.0,0.0],[1.0,0.0],[1.0,0.0]]\n");

  RunConfig bad = config;
  EXPECT_THROW(transform(bad, "1\n2\n3\n"), DomainError);
  bad.k = 3;
  EXPECT_THROW(transform(bad, "1\n2\n3\n4\n"), DomainError);
  bad.k = 0;
  EXPECT_THROW(transform(bad, "1 2 3\n"), DomainError);
  EXPECT_THROW(transform(bad, "x\n"), DomainError);
  EXPECT_THROW(transform(bad, "[1, 2"), DomainError);
  EXPECT_THROW(transform(bad, ""), DomainError);
}

TEST(Cli, TransformJsonExact) {
  RunConfig config;
  config.p = 3;
  EXPECT_EQ(transform(config, R"(["9", 0, 0, 0, 0, 0, 0, 0, 0])"), R"(["1/1","1/1","1/1","1/1","1/1","1/1","1/1","1/1","1/1"])" "\n");
  EXPECT_EQ(transform(config, R"([["0","1","0"], 0, 0])"), R"([["0/1","1/3","0/1"],["0/1","1/3","0/1"],["0/1","1/3","0/1"]])" "\n");
}

TEST(Cli, FilesInAndOut) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto in = dir / "vilenkin_cli_test_in.txt";
  const auto out = dir / "vilenkin_cli_test_out.txt";
  {
    std::ofstream f(in);
    f << "8\n0\n0\n0\n0\n0\n0\n0\n";
  }
  const CliRun r = run({"transform", "--p", "2", "--input", in.string(), "--output", out.string()});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), "1/1\n1/1\n1/1\n1/1\n1/1\n1/1\n1/1\n1/1\n");
  EXPECT_EQ(run({"transform", "--p", "2", "--input", (dir / "missing_vilenkin_file").string()}).code,
            kExitConfigError);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST(Cli, KhinchinCeilingRecordsForRademacherSums) {
  const CliRun r = run({"khinchin", "--p", "2", "--d", "1", "--q", "4", "--N", "16", "--trials", "200", "--seed", "7",
                     "--no-timing"});
  const json report = json::parse(r.out);
  const json* ceiling = find_record(report, "rademacher-fourth-moment-ceiling");
  const json* target = find_record(report, "rademacher-fourth-moment-target");
  ASSERT_NE(ceiling, nullptr);
  ASSERT_NE(target, nullptr);
  EXPECT_EQ((*ceiling)["status"], "pass");
  // Five Rademachers: the supremum 3 - 2/5 = 13/5 is below the 2.9 target.
  EXPECT_EQ((*target)["exact"]["supremum_on_support"], "13/5");
  EXPECT_EQ((*target)["status"], "fail");
  EXPECT_EQ(r.code, kExitCheckFailed);
}

}  // namespace
}  // namespace vilenkin::cli
