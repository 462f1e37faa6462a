// Copyright 2026 The cvw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "cvw/generators.hpp"
#include "cvw/io.hpp"

namespace cvw {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cvw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cvw_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    unsetenv("CVW_DEFAULT_TOL");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("CVW_DEFAULT_TOL");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const CovarianceMatrix& v) const {
    write_cm_file(path(name), v);
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, GenWritesLoadableFile) {
  const Result r = cli({"gen", "tmsv", "--r", "0.5", "--out", path("t.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_cm_file(path("t.json")).matrix(), tmsv(0.5).matrix());

  const Result s = cli({"gen", "random_standard", "--n-modes", "3", "--seed", "7"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(cm_from_json(s.out).matrix(), random_standard(3, 2, 7).matrix());

  const Result th = cli({"gen", "thermal", "--n-modes", "2", "--nbar", "0.5,1"});
  ASSERT_EQ(th.code, 0) << th.err;
  EXPECT_EQ(cm_from_json(th.out).matrix(), thermal({0.5, 1.0}).matrix());
}

TEST_F(CliTest, CertifyVacuum) {
  const Result r = cli({"certify", write("vac.json", vacuum(2))});
  ASSERT_EQ(r.code, 0) << r.err;
  const Report rep = report_from_json(r.out);
  EXPECT_FALSE(*rep.verdict.steerable_a_to_b);
  EXPECT_FALSE(*rep.verdict.steerable_b_to_a);
  EXPECT_EQ(rep.input_descriptor, path("vac.json"));
}

TEST_F(CliTest, CertifyTmsv) {
  const Result r = cli({"certify", write("tmsv.json", tmsv(0.5))});
  ASSERT_EQ(r.code, 0) << r.err;
  const Report rep = report_from_json(r.out);
  EXPECT_TRUE(*rep.verdict.steerable_a_to_b);
  EXPECT_TRUE(*rep.verdict.steerable_b_to_a);
  EXPECT_NEAR(rep.verdict.witnesses.at("det_ratio_ab"), 0.25 / std::pow(std::cosh(1.0), 2), 1e-9);
}

TEST_F(CliTest, CertifyNonPhysical) {
  const Result r =
      cli({"certify", write("quarter.json", CovarianceMatrix(0.25 * Eigen::MatrixXd::Identity(4, 4)))});
  EXPECT_EQ(r.code, 2);
  const Report rep = report_from_json(r.out);
  EXPECT_FALSE(rep.verdict.physical);
  EXPECT_NE(r.out.find("\"ppt\": null"), std::string::npos);
}

TEST_F(CliTest, CertifyErrors) {
  EXPECT_EQ(cli({"certify", path("missing.json")}).code, 1);
  std::ofstream(path("bad.json")) << "{\"n_modes\": 2";
  EXPECT_EQ(cli({"certify", path("bad.json")}).code, 1);
  std::ofstream(path("dims.json")) << R"({"n_modes": 2, "n_alice": 1, "matrix": [[1,0],[0,1]]})";
  EXPECT_EQ(cli({"certify", path("dims.json")}).code, 1);
  Eigen::MatrixXd m = random_standard(3, 2, 1).matrix();
  m(0, 1) = m(1, 0) = 0.01;
  EXPECT_EQ(cli({"certify", write("nonstd.json", CovarianceMatrix(m))}).code, 1);
  EXPECT_EQ(cli({"certify"}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"--format", "xml", "certify", path("x.json")}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, ReportsAreByteIdentical) {
  const std::string f = write("r.json", random_standard(3, 2, 4));
  const Result a = cli({"certify", f, "--seed", "3"});
  const Result b = cli({"certify", f, "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("timing_ms"), std::string::npos);

  const Result t = cli({"certify", f, "--timing"});
  EXPECT_TRUE(report_from_json(t.out).timing_ms.has_value());
}

TEST_F(CliTest, ToleranceFromFlagAndEnvironment) {
  const std::string f = write("v.json", vacuum(2));
  EXPECT_EQ(report_from_json(cli({"certify", f}).out).tol, 1e-9);
  setenv("CVW_DEFAULT_TOL", "1e-6", 1);
  EXPECT_EQ(report_from_json(cli({"certify", f}).out).tol, 1e-6);
  EXPECT_EQ(report_from_json(cli({"certify", f, "--tol", "1e-3"}).out).tol, 1e-3);
  EXPECT_EQ(report_from_json(cli({"--tol", "1e-4", "certify", f}).out).tol, 1e-4);
  setenv("CVW_DEFAULT_TOL", "abc", 1);
  EXPECT_EQ(cli({"certify", f}).code, 1);
}

TEST_F(CliTest, CertifyCsv) {
  const Result r = cli({"certify", write("t.json", tmsv(0.5)), "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_EQ(rows[0].size(), rows[1].size());
  EXPECT_EQ(rows[0][5], "steerable_a_to_b");
  EXPECT_EQ(rows[1][5], "true");
}

TEST_F(CliTest, OutFlagWritesFile) {
  const Result r = cli({"certify", write("t.json", tmsv(0.5)), "--out", path("report.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path("report.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(*report_from_json(ss.str()).verdict.steerable_a_to_b);
}

TEST_F(CliTest, SweepTmsvKappaColumn) {
  const Result r = cli({"sweep", "tmsv", "--param", "r", "--range", "0", "1", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  // JSON is the default; ask for CSV.
  const Result c = cli({"sweep", "tmsv", "--param", "r", "--range", "0", "1", "11", "--format", "csv"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto rows = parse_csv(c.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0][0], "value");
  EXPECT_EQ(rows[0][7], "crossings");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r_val = std::stod(rows[i][0]);
    EXPECT_NEAR(r_val, 0.1 * static_cast<double>(i - 1), 1e-15);
    EXPECT_NEAR(std::stod(rows[i][1]), 0.5 * std::exp(-2.0 * r_val), 1e-10);
  }
  // r = 0 is separable; every later row is entangled and steerable.
  EXPECT_EQ(rows[1][4], "true");
  EXPECT_EQ(rows[2][4], "false");
  EXPECT_NE(rows[2][7].find("ppt:true->false"), std::string::npos);
  EXPECT_TRUE(rows[3][7].empty());
}

TEST_F(CliTest, SweepNoisyWindow) {
  const Result c = cli({"sweep", "noisy_tmsv", "--r", "0.7", "--side", "A", "--param", "nbar",
                        "--range", "0", "1", "21", "--format", "csv"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto rows = parse_csv(c.out);
  const double b = 0.5 * std::cosh(1.4);
  const double ba_edge = 0.5 - 0.25 / b;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double n = std::stod(rows[i][0]);
    if (std::abs(n - 0.5) > 1e-9) EXPECT_EQ(rows[i][5], n < 0.5 ? "true" : "false") << n;
    EXPECT_EQ(rows[i][6], n < ba_edge ? "true" : "false") << n;
  }
  bool ab_flip = false;
  for (const auto& row : rows) ab_flip |= row[7].find("steerable_a_to_b:true->false") != std::string::npos;
  EXPECT_TRUE(ab_flip);
}

TEST_F(CliTest, SweepEdgeCases) {
  const Result one =
      cli({"sweep", "tmsv", "--param", "r", "--range", "0.5", "0.5", "1", "--format", "csv"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(parse_csv(one.out).size(), 2u);
  EXPECT_EQ(cli({"sweep", "tmsv", "--param", "r", "--range", "1", "0", "3"}).code, 1);
  EXPECT_EQ(cli({"sweep", "tmsv", "--param", "r", "--range", "0", "1", "0"}).code, 1);
  EXPECT_EQ(cli({"sweep", "tmsv", "--param", "r", "--range", "0", "1", "2.5"}).code, 1);
  EXPECT_EQ(cli({"sweep", "tmsv", "--param", "q", "--range", "0", "1", "2"}).code, 1);
  EXPECT_EQ(cli({"sweep", "tmsv", "--param", "r", "--range", "-1", "1", "3"}).code, 1);
}

TEST_F(CliTest, OracleVacuum) {
  const Result r = cli({"oracle", write("v.json", vacuum(2)), "--functional", "sigma_plus",
                        "--samples", "20000"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  for (const char* key : {"numeric_min", "brute_force_min", "closed_form"}) {
    const auto pos = r.out.find(std::string("\"") + key + "\": ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_NEAR(std::stod(r.out.substr(pos + std::string(key).size() + 4)), 1.0, 1e-3) << key;
  }
}

TEST_F(CliTest, OracleAgreement) {
  const Result t = cli({"oracle", write("t.json", tmsv(0.5)), "--functional", "sigma_ab"});
  EXPECT_EQ(t.code, 0) << t.out;
  EXPECT_NE(t.out.find("\"agree_oracle\": true"), std::string::npos);
  EXPECT_NE(t.out.find("\"agree_closed_form\": true"), std::string::npos);

  const Result r = cli({"oracle", write("r.json", random_standard(3, 2, 7)), "--functional",
                        "sigma_plus", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][8], "true");
  EXPECT_EQ(rows[1][9], "");
}

TEST_F(CliTest, OracleDisagreementAndErrors) {
  // Sign-constrained minus sum vs its unconstrained closed form.
  TwoModeStandardParams p{2.0, 0.6, 0.3, -0.3};
  const Result r = cli({"oracle", write("p.json", p.to_covariance()), "--functional", "sigma_minus",
                        "--samples", "20000"});
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("\"agree_closed_form\": false"), std::string::npos);

  const Result tight = cli({"oracle", write("t.json", tmsv(0.5)), "--functional", "sigma_plus",
                            "--samples", "10", "--oracle-tol", "0"});
  EXPECT_EQ(tight.code, 3);
  EXPECT_EQ(cli({"oracle", write("q.json", CovarianceMatrix(0.25 * Eigen::MatrixXd::Identity(4, 4)))})
                .code,
            2);
  EXPECT_EQ(cli({"oracle", write("v.json", vacuum(2)), "--functional", "sigma_x"}).code, 1);
}

}  // namespace
}  // namespace cvw
