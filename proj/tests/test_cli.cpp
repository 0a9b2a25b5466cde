#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(BSF_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(BSF_FIXTURE_DIR) + "/" + name;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bsf_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Cli, AppendixDemoIsStable) {
  const auto a = run("appendix-demo");
  const auto b = run("appendix-demo");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("11 | -1  0  0  1"), std::string::npos);
  EXPECT_NE(a.out.find("Psi(2) = (0.5, -0.5, 0)"), std::string::npos);
}

TEST(Cli, GramOfDeutsch) {
  const auto r = run("gram " + fixture("deutsch.json") + " --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("routes") || j.contains("gram")) << r.out;
}

TEST(Cli, ExtractVerifyReconstructPipeline) {
  const auto bs = scratch("deutsch_bs.json");
  const auto alg = scratch("deutsch_rec.json");
  ASSERT_EQ(run("extract " + fixture("deutsch.json") + " -o " + bs.string()).code, 0);
  EXPECT_EQ(run("verify " + bs.string() + " --m 1").code, 0);
  ASSERT_EQ(run("reconstruct " + bs.string() + " --m 1 -o " + alg.string()).code, 0);
  EXPECT_EQ(run("gram " + alg.string()).code, 0);
}

TEST(Cli, XorCheckExitCodes) {
  const std::string family = " --family " + fixture("xor4_family.json");
  EXPECT_EQ(run("xor-check" + family + " --parts " + fixture("xor4_parts.json")).code, 0);
  EXPECT_EQ(run("xor-check" + family + " --parts " + fixture("xor4_parts_bad.json")).code, 3);
}

TEST(Cli, BuildAndSolve) {
  const auto sys = scratch("dj_sys.json");
  ASSERT_EQ(run("build-system --flavor ehat --t 0 --n 2 --sets " + fixture("deutsch_sets.json") +
                " -o " + sys.string())
                .code,
            0);
  const auto r = run("solve " + sys.string() + " --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("feasible").get<bool>());
  const auto infeasible = scratch("one_vs_three.json");
  ASSERT_EQ(run("build-system --flavor ehat --t 0 --n 2 --X 00 --Y 01,10,11 -o " +
                infeasible.string())
                .code,
            0);
  EXPECT_EQ(run("solve " + infeasible.string()).code, 3);
}

TEST(Cli, DjGeneralFeasible) {
  EXPECT_EQ(run("dj-general --n 4 --t 1").code, 0);
  EXPECT_EQ(run("dj-general --n 5 --t 1").code, 2);
}

TEST(Cli, LowerBoundModes) {
  const std::string parts = " --parts " + fixture("dj4_parts.json");
  EXPECT_EQ(run("lower-bound" + parts + " --k 1").code, 0);
  EXPECT_EQ(run("lower-bound" + parts + " --k 0 --mode proof").code, 3);
  EXPECT_EQ(run("lower-bound" + parts + " --k 0 --mode statement").code, 0);
}

TEST(Cli, MissingFileReportsIoError) {
  const auto r = run("gram /nonexistent/alg.json", true);
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("file not found"), std::string::npos);
  EXPECT_NE(r.out.find("\"error\""), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("no-such-verb").code, 2);
  EXPECT_EQ(run("masks-dump --n 2 --k 5").code, 2);
}

TEST(Cli, MasksDumpMatchesAppendix) {
  const auto r = run("masks-dump --n 2 --k 1 --kind P");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1,0,1,0\n0,0,0,0\n1,0,1,0\n0,0,0,0\n");
}

}  // namespace
