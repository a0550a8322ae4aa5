// Copyright 2026 The qcong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qcong/counting.hpp"
#include "qcong/products.hpp"
#include "qcong/transform.hpp"

namespace {

using qcong::BoxSpec;

BoxSpec box_for(std::int64_t q) {
  return BoxSpec{q / 2 + 1, q / 3 + 1, q};
}

void BM_CountBoxBrute(benchmark::State& state) {
  const auto box = box_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcong::count_box_brute(box, 1));
}
BENCHMARK(BM_CountBoxBrute)->Arg(201)->Arg(999)->Arg(4999);

void BM_CountViaXV(benchmark::State& state) {
  const auto box = box_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcong::count_via_xv(box, 1));
}
BENCHMARK(BM_CountViaXV)->Arg(201)->Arg(999)->Arg(4999);

void BM_CountDistribution(benchmark::State& state) {
  const auto box = box_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcong::count_distribution(box, 1).total());
}
BENCHMARK(BM_CountDistribution)->Arg(999)->Arg(9999)->Arg(29999);

void BM_SecondMoment(benchmark::State& state) {
  const auto box = box_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcong::second_moment(box));
}
BENCHMARK(BM_SecondMoment)->Arg(999)->Arg(9999);

qcong::IntervalFamily family(std::int64_t s) {
  return qcong::IntervalFamily::uniform(s, s, 3, s / 2);
}

void BM_TCountSingle(benchmark::State& state) {
  const auto fam = family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcong::t_count(fam, 1));
}
BENCHMARK(BM_TCountSingle)->Arg(101)->Arg(1999);

void BM_TCountsAll(benchmark::State& state) {
  const auto fam = family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcong::t_counts(fam));
}
BENCHMARK(BM_TCountsAll)->Arg(101)->Arg(1999);

}  // namespace

BENCHMARK_MAIN();
