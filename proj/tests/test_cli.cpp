#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tourprof/generators.hpp"
#include "tourprof/profiles.hpp"
#include "tourprof/trn_io.hpp"

using namespace tourprof;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tourprof_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

RunResult run(const std::string& args) {
  const auto err_path = scratch("stderr.txt");
  const std::string command = std::string(TOURPROF_CLI_PATH) + ' ' + args + " 2>" + err_path.string();
  RunResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream err(err_path);
  r.err.assign(std::istreambuf_iterator<char>(err), {});
  return r;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

// First data row of a CSV keyed by the header names.
std::map<std::string, std::string> first_row(const std::string& text) {
  const auto lines = data_lines(text);
  std::map<std::string, std::string> out;
  if (lines.size() < 2) return out;
  const auto keys = split(lines[0]);
  const auto values = split(lines[1]);
  for (std::size_t i = 0; i < keys.size() && i < values.size(); ++i) out[keys[i]] = values[i];
  return out;
}

double field(const std::map<std::string, std::string>& row, const std::string& key) {
  return std::stod(row.at(key));
}

// Row whose first column is closest to x.
std::vector<double> row_at(const std::string& csv, double x) {
  const auto lines = data_lines(csv);
  std::vector<double> best;
  double gap = 1e300;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<double> values;
    for (const auto& s : split(lines[i])) values.push_back(std::stod(s));
    if (std::abs(values[0] - x) < gap) {
      gap = std::abs(values[0] - x);
      best = values;
    }
  }
  return best;
}

}  // namespace

TEST(Cli, GenCyclicFiveHasAllC4) {
  const auto path = scratch("c5.trn");
  const auto r = run("gen cyclic --n 5 --out " + path.string());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(profile4(load_trn(path)), (Profile4Counts{5, 0, 5, 0, 0}));
  EXPECT_NE(r.out.find("# tourprof"), std::string::npos);
  EXPECT_NE(r.out.find("# seed 0"), std::string::npos);
}

TEST(Cli, GenToStdoutIsPlainTrn) {
  const auto r = run("gen transitive --n 3");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "TRN v1 3\n-11\n0-1\n00-\n");
  EXPECT_NE(r.err.find("# seed"), std::string::npos);
}

TEST(Cli, GenCyclicEvenIsRejected) {
  const auto r = run("gen cyclic --n 4");
  EXPECT_EQ(r.status, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, GenBlowupOfTransitivePair) {
  const auto path = scratch("t2.trn");
  const auto r = run("gen blowup --host T2 --weights 0.5,0.5 --n 600 --seed 7 --out " + path.string());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NEAR(profile3(load_trn(path)).c3_density(), 1.0 / 16, 0.005);
}

TEST(Cli, GenIsDeterministic) {
  EXPECT_EQ(run("gen random --n 40 --seed 9").out, run("gen random --n 40 --seed 9").out);
  EXPECT_NE(run("gen random --n 40 --seed 9").out, run("gen random --n 40 --seed 10").out);
}

TEST(Cli, ProfileExamples) {
  auto r = run("profile --construction transitive --n 10");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(field(first_row(r.out), "t4"), 1.0);

  r = run("profile --construction cyclic --n 5");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(field(first_row(r.out), "c4"), 1.0);
  EXPECT_EQ(field(first_row(r.out), "t4"), 0.0);

  r = run("profile --construction interval --n 100 --s 50 --counts");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(field(first_row(r.out), "w"), 0.0);
  EXPECT_EQ(field(first_row(r.out), "l"), 0.0);
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[2], "n,t3_count,c3_count,t4_count,c4_count,w_count,l_count");
}

TEST(Cli, RoundTripMatchesInMemoryProfile) {
  const auto path = scratch("r.trn");
  ASSERT_EQ(run("gen random --n 50 --seed 4 --out " + path.string()).status, 0);
  const auto r = run("profile --counts --in " + path.string());
  ASSERT_EQ(r.status, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  const auto p3 = profile3(random_tournament(50, 4));
  const auto p4 = profile4(random_tournament(50, 4));
  std::ostringstream expected;
  expected << 50 << ',' << p3.t3 << ',' << p3.c3 << ',' << p4.t4 << ',' << p4.c4 << ',' << p4.w
           << ',' << p4.l;
  EXPECT_EQ(lines[3], expected.str());
}

TEST(Cli, MalformedFileNamesTheLine) {
  const auto path = scratch("bad.trn");
  std::ofstream(path) << "TRN v1 3\n-10\n0-1\n1x-\n";
  const auto r = run("profile --in " + path.string());
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("profile --bogus").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("gen nonsense --n 3").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, EdgeStatsRows) {
  const auto r = run("edge-stats --construction cyclic --n 5");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "tail,head,cyc,thru,dom_out,dom_in");
  const auto phi = run("edge-stats --construction transitive --n 12 --phi 3");
  ASSERT_EQ(phi.status, 0);
  EXPECT_EQ(data_lines(phi.out), (std::vector<std::string>{"x,phi", "0,1", "0.5,0", "1,0"}));
}

TEST(Cli, CurveExamples) {
  auto r = run("curve --fig 3 --grid 3 --min 0.5 --max 1");
  ASSERT_EQ(r.status, 0) << r.err;
  auto row = row_at(r.out, 0.5);
  EXPECT_NEAR(row[0], 0.5, 1e-12);
  EXPECT_NEAR(row[2], 0.5, 1e-12);

  r = run("curve --fig 1 --grid 11");
  ASSERT_EQ(r.status, 0) << r.err;
  row = row_at(r.out, 1.0);
  EXPECT_NEAR(row[0], 1.0, 1e-12);
  EXPECT_NEAR(row[2], 1.0, 1e-12);

  r = run("curve --fig 4 --grid 5");
  ASSERT_EQ(r.status, 0) << r.err;
  row = row_at(r.out, 1.0 / 16);
  EXPECT_NEAR(row[0], 1.0 / 16, 1e-12);
  EXPECT_NEAR(row[3], 3.0 / 64, 1e-9);
  EXPECT_NEAR(row[4], 3.0 / 64, 1e-9);
  EXPECT_EQ(data_lines(r.out)[0], "c3,upper,lb_variance,lb_flag,conjectured,m");

  EXPECT_EQ(run("curve --fig 4 --grid 1").status, 2);
}

TEST(Cli, FlagsEnumerate) {
  const auto r = run("flags enumerate --k 6");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(data_lines(r.out).size(), 56u);
  EXPECT_EQ(data_lines(run("flags flags --k 4").out).size(), 16u);
}

TEST(Cli, CertificateWriteAndVerify) {
  const auto good = scratch("good.cert");
  ASSERT_EQ(run("flags lemma1 --gamma 0.1 --out " + good.string()).status, 0);
  auto r = run("verify --cert " + good.string());
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("valid lambda="), std::string::npos);

  std::ifstream in(good);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  const auto bad = scratch("bad.cert");
  // Raise lambda far above every slack.
  std::istringstream lines(text);
  std::ostringstream edited;
  std::string line;
  for (int i = 1; std::getline(lines, line); ++i) edited << (i == 4 ? "5" : line) << '\n';
  std::ofstream(bad) << edited.str();
  r = run("verify --cert " + bad.string());
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("invalid"), std::string::npos);
}

TEST(Cli, VerifyIdentities) {
  const auto r = run("verify --construction random --n 30 --seed 2");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.find("VIOLATED"), std::string::npos);
}

TEST(Cli, SearchAtOneSixteenth) {
  const auto r = run("search --gamma 0.0625 --n 64 --seed 3");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto row = first_row(r.out);
  EXPECT_EQ(row.at("discovery_flag"), "false");
  EXPECT_NEAR(field(row, "gamma"), 0.0625, 1e-12);
  EXPECT_EQ(r.err.find("DISCOVERY"), std::string::npos);
}
