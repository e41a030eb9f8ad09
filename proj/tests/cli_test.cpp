#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <sys/wait.h>

#include "gcx/cli/report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the gcx binary with a private cache directory; stderr is discarded.
Run run_gcx(const std::string& args) {
  std::string cmd = "GCX_CACHE_DIR=" + (std::filesystem::temp_directory_path() / "gcx-cli-test").string() + " " +
                    GCX_TOOL_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::ordered_json parse(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

}  // namespace

TEST(Cli, EnumerateCounts) {
  auto r = run_gcx("enumerate --g 0 --n 4..5");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  ASSERT_EQ(j["cases"].size(), 2u);
  EXPECT_EQ(j["cases"][0]["computed"]["count"], 4);
  EXPECT_EQ(j["cases"][1]["computed"]["count"], 26);
}

TEST(Cli, UsageAndFeasibilityErrors) {
  EXPECT_EQ(run_gcx("enumerate --g 0 --n 2").code, 2);
  EXPECT_EQ(run_gcx("verify --suite bogus").code, 2);
  EXPECT_EQ(run_gcx("homology --sector lie --g 2 --n 8 --anti").code, 2);
  EXPECT_EQ(run_gcx("homology --sector com-bar --g 2 --n 10").code, 2);
  EXPECT_EQ(run_gcx("--not-an-option").code, 2);
}

TEST(Cli, ReportSchema) {
  auto r = run_gcx("verify --suite theta --n 4 --no-cache");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["version"], gcx::cli::kReportVersion);
  EXPECT_TRUE(j["config"].is_object());
  ASSERT_TRUE(j["cases"].is_array());
  ASSERT_FALSE(j["cases"].empty());
  for (const auto& c : j["cases"]) {
    std::vector<std::string> keys;
    for (auto it = c.begin(); it != c.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"id", "inputs", "expected", "computed", "status"}));
    EXPECT_NE(c["status"], "fail");
  }
}

TEST(Cli, ReportsAreByteIdentical) {
  auto a = run_gcx("verify --suite genus1 --n 3 4 --no-cache");
  auto a2 = run_gcx("verify --suite genus1 --n 3 4 --no-cache");
  // the first cached run builds and stores, the second reads
  auto b = run_gcx("verify --suite genus1 --n 3 4");
  auto c = run_gcx("verify --suite genus1 --n 3 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, a2.out);
  EXPECT_EQ(b.out, c.out);
  auto x = run_gcx("verify --suite genus1 --n 3 --format csv");
  auto y = run_gcx("verify --suite genus1 --n 3 --format csv");
  EXPECT_EQ(x.code, 0);
  EXPECT_EQ(x.out, y.out);
}

TEST(Cli, HomologyReport) {
  auto r = run_gcx("homology --sector com --g 0 --n 4");
  ASSERT_EQ(r.code, 0);
  auto h = parse(r)["cases"][0]["computed"]["homology"];
  EXPECT_EQ(h, nlohmann::ordered_json({{"1", 2}}));
}

TEST(Csv, FlatProjection) {
  gcx::cli::Report rep;
  gcx::cli::Case c;
  c.id = "a,b";
  c.inputs = {{"n", 4}};
  c.expected = {{"dim", 1}};
  c.computed = {{"dim", 1}, {"list", {1, 2}}};
  rep.cases.push_back(c);
  gcx::cli::Case d;
  d.id = "plain";
  d.inputs = {{"n", 5}, {"extra", "x\"y"}};
  d.status = "fail";
  rep.cases.push_back(d);
  std::ostringstream os;
  gcx::cli::write_csv(os, rep);
  EXPECT_EQ(os.str(),
            "id,status,inputs.n,expected.dim,computed.dim,computed.list,inputs.extra,expected,computed\n"
            "\"a,b\",pass,4,1,1,\"[1,2]\",,,\n"
            "plain,fail,5,,,,\"x\"\"y\",null,{}\n");
  EXPECT_TRUE(rep.failed());
}
