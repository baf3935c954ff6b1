// SPDX-License-Identifier: Apache-2.0
//
// ssvsp - precoding library for radar/cellular spectrum coexistence
// Copyright (C) 2026 The ssvsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ssvsp/harness.hpp"
#include "support.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ssvsp;

namespace {

Scenario bench_scenario()
{
    std::mt19937_64 rng(2024);
    testing::ScenarioLimits lim;
    lim.max_K = 4;
    lim.max_antennas = 6;
    lim.allow_no_radar = false;
    Scenario s = testing::random_scenario(rng, lim);
    s.solver.outer_iters = 60;
    return s;
}

void BM_trials_serial(benchmark::State& state)
{
    const Scenario s = bench_scenario();
    const int trials = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials_serial(s, 1, trials));
    state.SetItemsProcessed(state.iterations() * trials);
}

void BM_trials_parallel(benchmark::State& state)
{
    const Scenario s = bench_scenario();
    const int trials = static_cast<int>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials_parallel(s, 1, trials, workers));
    state.SetItemsProcessed(state.iterations() * trials);
}

} // namespace

BENCHMARK(BM_trials_serial)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_trials_parallel)->Args({16, 2})->Args({16, 4})->Args({16, 8})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
