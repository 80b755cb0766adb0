#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string("\"") + QDISCORD_CLI + "\" " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, ComputeWernerJson) {
  const CliRun r = run("compute --family werner --p 0.5");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("d1").get<double>(), 0.5, 1e-9);
  EXPECT_NEAR(j.at("d2").get<double>(), 0.25, 1e-9);
  EXPECT_NEAR(j.at("negativity").get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_TRUE(j.at("converged").get<bool>());
  EXPECT_EQ(j.at("argmin_params").size(), 4u);
}

TEST(Cli, ComputeHorodecki) {
  const CliRun r = run("compute --family horodecki --alpha 4.5 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("d1").get<double>(), 2.0 / 7.0, 1e-9);
  EXPECT_GT(j.at("negativity").get<double>(), 0.0);
}

TEST(Cli, ComputeFromFile) {
  const CliRun r = run(std::string("compute --file \"") + QDISCORD_DATA_DIR + "/maximally_mixed.json\"");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("d1").get<double>(), 0.0);
  EXPECT_EQ(j.at("family").get<std::string>(), "file");
}

TEST(Cli, SweepCsvRowCount) {
  const CliRun r = run("sweep --family werner --param p --from 0 --to 1 --step 0.25 --grid 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 1 + 5);
  EXPECT_EQ(r.out.rfind("family,param_name", 0), 0u);
}

TEST(Cli, SweepTable) {
  const CliRun r = run("sweep --family ac --c 0.1 --param a --from 0 --to 0.2 --step 0.1 --format table");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 1 + 3);
}

TEST(Cli, GoldenSweepMatchesFixture) {
  const CliRun r = run("sweep --family werner --param p --from 0 --to 1 --step 0.1 --seed 0");
  ASSERT_EQ(r.code, 0);
  std::FILE* f = std::fopen(QDISCORD_FIXTURE, "rb");
  ASSERT_NE(f, nullptr);
  std::string stored;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) stored.append(buf.data(), n);
  std::fclose(f);
  EXPECT_EQ(r.out, stored);
}

TEST(Cli, ValidationFailuresExitOne) {
  EXPECT_EQ(run("compute --family werner --p 1.5").code, 1);
  EXPECT_EQ(run("compute --family werner").code, 1);
  EXPECT_EQ(run("compute --family ghz").code, 1);
  EXPECT_EQ(run("compute").code, 1);
  EXPECT_EQ(run("compute --family ac --a 0.3 --c 0.3").code, 1);
  EXPECT_EQ(run("compute --file /nonexistent.json").code, 1);
  EXPECT_EQ(run("sweep --family werner --param p --from 0 --to 2 --step 0.5").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, ExhaustedBudgetExitsTwo) {
  EXPECT_EQ(run("compute --family horodecki --alpha 2.5 --grid 4 --max-evals 270").code, 2);
}
