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

#include <benchmark/benchmark.h>

#include "cvw/covariance.hpp"
#include "cvw/criteria.hpp"
#include "cvw/generators.hpp"
#include "cvw/optimizers.hpp"

namespace {

void BM_SymplecticEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const cvw::CovarianceMatrix v = cvw::random_standard(n, n - 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvw::symplectic_eigenvalues(v).min());
  }
}
BENCHMARK(BM_SymplecticEigenvalues)->Arg(2)->Arg(4)->Arg(8);

void BM_TwoModeReduction(benchmark::State& state) {
  const cvw::CovarianceMatrix v = cvw::random_standard(2, 1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvw::standard_form_reduce_two_mode(v).params.c);
  }
}
BENCHMARK(BM_TwoModeReduction);

void BM_MinSigmaPlus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const cvw::StandardFormCM v = cvw::split_standard(cvw::random_standard(n, n - 1, 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvw::min_sigma_pm_numeric(v, cvw::SignVariant::plus).value);
  }
}
BENCHMARK(BM_MinSigmaPlus)->Arg(2)->Arg(3)->Arg(4);

void BM_MinSigmaAb(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const cvw::StandardFormCM v = cvw::split_standard(cvw::random_standard(n, n - 1, 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvw::min_sigma_ab_numeric(v).value);
  }
}
BENCHMARK(BM_MinSigmaAb)->Arg(2)->Arg(4)->Arg(8);

void BM_Certify(benchmark::State& state) {
  const cvw::CovarianceMatrix v = cvw::tmsv(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvw::certify(v).physical);
  }
}
BENCHMARK(BM_Certify);

void BM_BruteForce(benchmark::State& state) {
  const cvw::StandardFormCM v = cvw::split_standard(cvw::tmsv(0.5));
  cvw::GridSpec grid;
  grid.samples = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvw::brute_force_min(v, cvw::Functional::sigma_ab, grid));
  }
}
BENCHMARK(BM_BruteForce)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
