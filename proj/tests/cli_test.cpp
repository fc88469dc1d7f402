#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace dsw;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "dswlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int st = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {st, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& s) {
  std::vector<std::string> rows;
  std::istringstream is(s);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::string header_value(const std::string& s, const std::string& key) {
  const auto pos = s.find("# " + key + "=");
  if (pos == std::string::npos) return "";
  const auto start = pos + key.size() + 3;
  return s.substr(start, s.find('\n', start) - start);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> f;
  std::stringstream ss(s);
  std::string x;
  while (std::getline(ss, x, ',')) f.push_back(x);
  return f;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 9.87007, 1e22}) EXPECT_EQ(std::stod(cli::fmt(x)), x);
  EXPECT_EQ(cli::fmt(0.1), "0.1");
}

TEST(Pairs, Parsing) {
  const auto p = cli::parse_pairs("2:0.1,50:0.2");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1].first, 50.0);
  EXPECT_EQ(p[1].second, 0.2);
  EXPECT_TRUE(cli::parse_pairs("").empty());
  EXPECT_ANY_THROW(cli::parse_pairs("2-0.1"));
  EXPECT_ANY_THROW(cli::parse_pairs("2:x"));
  EXPECT_EQ(cli::default_theta_pairs().size(), 15u);
}

TEST(ParallelRows, KeepsIndexOrder) {
  const auto rows = cli::parallel_rows(50, 4, [](std::size_t i) { return std::to_string(i * i); });
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i], std::to_string(i * i));
  EXPECT_TRUE(cli::parallel_rows(0, 4, [](std::size_t) { return std::string("x"); }).empty());
}

TEST(Wave, HeaderAndRoundTripThroughTheSpeed) {
  const CliRun a = run({"wave", "--L", "2", "--kappa", "0.1", "--N", "64"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_NEAR(std::stod(header_value(a.out, "c")), 9.87007, 5e-6);
  EXPECT_EQ(data_lines(a.out).size(), 64u);
  const CliRun b = run({"wave", "--L", "2", "--c", header_value(a.out, "c"), "--N", "64"});
  ASSERT_EQ(b.status, 0) << b.err;
  const auto ra = data_lines(a.out), rb = data_lines(b.out);
  for (std::size_t i = 0; i < ra.size(); ++i)
    EXPECT_NEAR(std::stod(split(ra[i])[1]), std::stod(split(rb[i])[1]), 1e-9);
}

TEST(Wave, InvalidParameters) {
  const CliRun a = run({"wave", "--L", "2", "--kappa", "1.5"});
  EXPECT_NE(a.status, 0);
  EXPECT_FALSE(a.err.empty());
  EXPECT_EQ(run({"wave", "--L", "2"}).status, 2);
  EXPECT_EQ(run({"wave", "--L", "2", "--c", "1"}).status, 1);
  EXPECT_EQ(run({"wave", "--L", "2", "--kappa", "0.3", "--N", "100"}).status, 2);
  EXPECT_EQ(run({"nonsense"}).status, 2);
}

TEST(ThetaTable, DefaultRowsAndDeterminism) {
  const CliRun a = run({"theta-table", "--threads", "4"});
  ASSERT_EQ(a.status, 0) << a.err;
  const auto rows = data_lines(a.out);
  ASSERT_EQ(rows.size(), 15u);
  const auto last = split(rows.back());
  EXPECT_EQ(last[0], "50");
  EXPECT_EQ(last[6], "1");
  const CliRun b = run({"theta-table", "--threads", "1"});
  EXPECT_EQ(a.out, b.out);
}

TEST(ThetaTable, EmptyAndFailingRows) {
  const CliRun e = run({"theta-table", "--pairs", ""});
  EXPECT_EQ(e.status, 0);
  EXPECT_TRUE(data_lines(e.out).empty());
  EXPECT_NE(e.out.find("L,kappa,c,p_prime_0,q_prime_L,theta,n_minus,n_zero"), std::string::npos);
  const CliRun f = run({"theta-table", "--pairs", "2:0.3,2:1.5,3:0.2"});
  EXPECT_EQ(f.status, 1);
  EXPECT_EQ(data_lines(f.out).size(), 2u);
  EXPECT_NE(f.out.find("# row L=2 kappa=1.5 failed"), std::string::npos);
}

TEST(DmatrixSweep, SinglePointAndColumns) {
  const CliRun a = run({"dmatrix-sweep", "--L", "1", "--kappa", "0.5", "--n-H", "2"});
  ASSERT_EQ(a.status, 0) << a.err;
  const auto rows = data_lines(a.out);
  ASSERT_EQ(rows.size(), 1u);
  const auto f = split(rows[0]);
  ASSERT_EQ(f.size(), 21u);
  EXPECT_LT(std::stod(f[7]), 0.0);   // det
  EXPECT_EQ(f[11], "1");             // n_D
  EXPECT_EQ(f[13], "1");             // k_ham with n_H = 2
  EXPECT_LT(std::stod(f[15]), 0.0);  // A2
  EXPECT_EQ(f[20], "ok");
}

TEST(DmatrixSweep, RangeUsesMeasuredMorseIndex) {
  const CliRun a = run({"dmatrix-sweep", "--L", "1", "--kappa-min", "0.2", "--kappa-max", "0.4", "--kappa-step", "0.1"});
  ASSERT_EQ(a.status, 0) << a.err;
  const auto rows = data_lines(a.out);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    const auto f = split(r);
    EXPECT_EQ(f[12], "1");  // n_H from theta
    EXPECT_EQ(f[13], "0");
  }
  EXPECT_EQ(run({"dmatrix-sweep", "--kappa", "1.2"}).status, 2);
}

TEST(Spectrum, SummaryLine) {
  const CliRun a = run({"spectrum", "--L", "2", "--kappa", "0.3", "--N", "256"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(data_lines(a.out).size(), 512u);
  EXPECT_NE(a.out.find("# summary k_r=0 k_c=0 k_i_minus=0"), std::string::npos);
  EXPECT_NE(a.out.find("count_identity=holds"), std::string::npos);
}

TEST(Simulate, ZeroDataAndWave) {
  const CliRun z = run({"simulate", "--zero", "--L", "6.283185307179586", "--N", "32", "--T", "1", "--dt", "0.01"});
  ASSERT_EQ(z.status, 0) << z.err;
  for (const auto& r : data_lines(z.out)) {
    const auto f = split(r);
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(std::stod(f[i]), 0.0);
  }
  const CliRun w = run({"simulate", "--wave", "--L", "2", "--kappa", "0.3", "--N", "128", "--T", "0.5", "--sample", "0.1"});
  ASSERT_EQ(w.status, 0) << w.err;
  EXPECT_EQ(data_lines(w.out).size(), 6u);
  EXPECT_LT(std::stod(header_value(w.out, "drift_l2")), 1e-8);
}

TEST(Simulate, UsageAndModuleErrors) {
  EXPECT_EQ(run({"simulate", "--L", "2"}).status, 2);
  EXPECT_EQ(run({"simulate", "--zero", "--wave", "--L", "2", "--kappa", "0.3"}).status, 2);
  EXPECT_EQ(run({"simulate", "--zero", "--L", "2", "--perturb", "1e-6"}).status, 2);
  // No unstable mode to seed for this wave.
  const CliRun g = run({"simulate", "--wave", "--L", "2", "--kappa", "0.3", "--perturb", "1e-6", "--T", "1"});
  EXPECT_EQ(g.status, 1);
  EXPECT_NE(g.err.find("unstable"), std::string::npos);
}

TEST(NormalFormCheck, AllTrialsPass) {
  const CliRun a = run({"normalform-check", "--trials", "20", "--seed", "3"});
  ASSERT_EQ(a.status, 0) << a.err;
  const auto rows = data_lines(a.out);
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& r : rows) EXPECT_EQ(split(r).back(), "1");
  EXPECT_EQ(a.out, run({"normalform-check", "--trials", "20", "--seed", "3"}).out);
}
