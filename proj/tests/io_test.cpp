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
#include <filesystem>
#include <limits>

#include "cvw/errors.hpp"
#include "cvw/generators.hpp"
#include "cvw/io.hpp"

namespace cvw {
namespace {

TEST(FormatNumber, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_THROW(format_number(std::numeric_limits<double>::quiet_NaN()), NonFiniteError);
  EXPECT_THROW(format_number(std::numeric_limits<double>::infinity()), NonFiniteError);
}

TEST(CmJson, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CovarianceMatrix v = random_standard(3, 2, seed);
    const std::string text = cm_to_json(v);
    const CovarianceMatrix back = cm_from_json(text);
    EXPECT_EQ(back.matrix(), v.matrix());
    EXPECT_EQ(cm_to_json(back), text);
    EXPECT_EQ(cm_from_json(cm_to_json(v, Ordering::block)).matrix(), v.matrix());
  }
}

TEST(CmJson, Layout) {
  const std::string text = cm_to_json(vacuum(1));
  EXPECT_EQ(text,
            "{\n"
            "  \"n_modes\": 1,\n"
            "  \"n_alice\": 0,\n"
            "  \"ordering\": \"interleaved\",\n"
            "  \"matrix\": [\n"
            "    [0.5, 0],\n"
            "    [0, 0.5]\n"
            "  ]\n"
            "}\n");
}

TEST(CmJson, BlockOrderingInput) {
  const std::string text = R"({"n_modes": 2, "n_alice": 1, "ordering": "block",
    "matrix": [[1, 0.2, 0, 0], [0.2, 1, 0, 0], [0, 0, 2, 0.1], [0, 0, 0.1, 2]]})";
  const CovarianceMatrix v = cm_from_json(text);
  EXPECT_DOUBLE_EQ(v(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(v(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(v(0, 2), 0.2);
  EXPECT_DOUBLE_EQ(v(1, 3), 0.1);
  EXPECT_DOUBLE_EQ(v(0, 1), 0.0);
}

TEST(CmJson, Errors) {
  EXPECT_THROW(cm_from_json("{"), ParseError);
  EXPECT_THROW(cm_from_json(R"({"n_alice": 0, "matrix": [[1,0],[0,1]]})"), ParseError);
  EXPECT_THROW(cm_from_json(R"({"n_modes": 1, "n_alice": 0, "ordering": "weird",
                                "matrix": [[1,0],[0,1]]})"),
               ParseError);
  EXPECT_THROW(cm_from_json(R"({"n_modes": 2, "n_alice": 1, "matrix": [[1,0],[0,1]]})"),
               DimensionError);
  EXPECT_THROW(cm_from_json(R"({"n_modes": 2, "n_alice": 0,
                                "matrix": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})"),
               DimensionError);
  EXPECT_THROW(cm_from_json(R"({"n_modes": 1, "n_alice": 0, "matrix": [[1,0],[0]]})"),
               DimensionError);
  EXPECT_THROW(cm_from_json(R"({"n_modes": 1, "n_alice": 0, "matrix": [[1,"x"],[0,1]]})"),
               ParseError);
  EXPECT_THROW(cm_from_json(R"({"n_modes": 1, "n_alice": 0, "matrix": [[1,0.5],[0,1]]})"),
               NotSymmetricError);
}

TEST(CmFile, ReadWrite) {
  const auto path = std::filesystem::temp_directory_path() / "cvw_io_test_cm.json";
  write_cm_file(path.string(), tmsv(0.3));
  EXPECT_EQ(read_cm_file(path.string()).matrix(), tmsv(0.3).matrix());
  std::filesystem::remove(path);
  EXPECT_THROW(read_cm_file("/nonexistent/cvw.json"), Error);
}

TEST(VerdictJson, RoundTripIncludingEmptyFields) {
  const CorrelationVerdict v = certify(tmsv(0.5));
  const std::string text = verdict_to_json(v);
  EXPECT_EQ(verdict_from_json(text), v);
  EXPECT_EQ(verdict_to_json(verdict_from_json(text)), text);

  const CorrelationVerdict bad = certify(CovarianceMatrix(0.25 * Eigen::MatrixXd::Identity(4, 4)));
  const std::string bad_text = verdict_to_json(bad);
  EXPECT_NE(bad_text.find("\"ppt\": null"), std::string::npos);
  EXPECT_EQ(verdict_from_json(bad_text), bad);
  EXPECT_THROW(verdict_from_json(R"({"physical": true})"), ParseError);
}

TEST(ReportJson, RoundTrip) {
  Report r;
  r.input_descriptor = "states/tmsv \"0.5\".json";
  r.verdict = certify(tmsv(0.5));
  r.tol = 1e-8;
  r.optimizer.rng_seed = 18446744073709551615ULL;
  const std::string text = report_to_json(r);
  EXPECT_EQ(text.find("timing_ms"), std::string::npos);
  EXPECT_EQ(report_from_json(text), r);
  EXPECT_EQ(report_to_json(report_from_json(text)), text);

  r.timing_ms = 1.25;
  EXPECT_EQ(report_from_json(report_to_json(r)), r);
  EXPECT_THROW(report_from_json("[]"), ParseError);
}

}  // namespace
}  // namespace cvw
