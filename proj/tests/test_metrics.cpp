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

#include "ssvsp/metrics.hpp"
#include "ssvsp/solver.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ssvsp;
using testing::Instance;
using testing::make_instance;

namespace {

TrialReport solve_and_report(const Instance& in, std::uint64_t seed)
{
    const SolverState st = run_wsmmse(in.eq, in.s, seed);
    return build_report(in.eq, st, in.s, in.c, in.projs);
}

} // namespace

TEST_CASE("build_report - zero channels give full MSE per stream")
{
    Instance in = testing::fixed_link(ComplexMatrix::Zero(3, 2), 2, 1.0);
    in.s.W = {{2.0, 0.5}};
    const TrialReport r = solve_and_report(in, 1);
    CHECK(r.per_user_mse[0] == Catch::Approx(2.0).margin(1e-12));
    CHECK(r.sum_wmse == Catch::Approx(2.5).margin(1e-12));
    CHECK(r.sum_rate == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("build_report - per-user MSE falls as the budget grows")
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const int n = testing::uniform_int(rng, 1, 4);
        const ComplexMatrix H = complex_gaussian(rng, n, n);
        const int d = testing::uniform_int(rng, 1, n);
        double prev = std::numeric_limits<double>::infinity();
        for (double P : {1.0, 10.0, 100.0}) {
            const Instance in = testing::fixed_link(H, d, P);
            const double mse = solve_and_report(in, 3).per_user_mse[0];
            CHECK(mse < prev);
            CHECK(mse <= d);
            prev = mse;
        }
    }
}

TEST_CASE("build_report - null-space projection leaves no leakage at served users")
{
    std::mt19937_64 rng(3);
    testing::ScenarioLimits lim;
    lim.allow_no_radar = false;
    for (int t = 0; t < 10; ++t) {
        Scenario s = testing::random_scenario(rng, lim);
        s.sigma_th = 0.0;
        const Instance in = make_instance(s, rng());
        const TrialReport r = solve_and_report(in, rng());
        REQUIRE(r.radar_leakage.size() == static_cast<std::size_t>(s.topology.L));
        for (const RadarLeakage& leak : r.radar_leakage) {
            CHECK(leak.served_norm <= 1e-9);
            CHECK(leak.unserved_users.size() + s.serving.users_of_radar[leak.radar].size() ==
                  static_cast<std::size_t>(s.topology.K));
        }
    }
}

TEST_CASE("build_report - totals, budgets and rate agree with independent evaluation")
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 15; ++t) {
        const Instance in = make_instance(testing::random_scenario(rng), rng());
        const SolverState st = run_wsmmse(in.eq, in.s, rng());
        const TrialReport r = build_report(in.eq, st, in.s, in.c, in.projs);
        const Weights W = weights_from(in.s);

        double total = 0.0;
        for (double x : r.per_user_weighted_mse)
            total += x;
        CHECK(r.sum_wmse == Catch::Approx(total).epsilon(1e-14));
        CHECK(r.sum_wmse == Catch::Approx(oracle::weighted_mse(in.eq, st.F, st.G, W)).epsilon(1e-10));
        CHECK(r.sum_wmse == Catch::Approx(st.trace.objective.back()).epsilon(1e-12));
        CHECK(r.iterations_used == st.iteration);

        REQUIRE(r.power.size() == static_cast<std::size_t>(in.eq.num_constraints()));
        const PowerUsage u = audit_power(in.eq, st.F);
        for (int m = 0; m < in.eq.M; ++m) {
            CHECK(r.power[m].station.kind == StationKind::bs);
            CHECK(r.power[m].usage == Catch::Approx(u.bs[m]).epsilon(1e-10).margin(1e-14));
            CHECK(r.power[m].slack == Catch::Approx(r.power[m].budget - r.power[m].usage));
        }
        for (int l = 0; l < in.eq.L; ++l)
            CHECK(r.power[in.eq.M + l].usage == Catch::Approx(u.radar[l]).epsilon(1e-10).margin(1e-14));

        // With MMSE receivers E_k = (I + SINR_k)^-1, so the rate is -sum log2 det E_k.
        const auto mmse = update_equalizers(in.eq, st.F).G;
        double rate = 0.0;
        for (int k = 0; k < in.eq.K; ++k)
            rate -= std::log2(oracle::mse(in.eq, st.F, mmse, k).determinant().real());
        CHECK(r.sum_rate == Catch::Approx(rate).epsilon(1e-9).margin(1e-12));
    }
}

TEST_CASE("build_report - unserved leakage equals received radar power")
{
    Scenario s;
    s.topology = {1, 1, 2, 3, 2, 2};
    s.serving.users_of_bs = {{0, 1}};
    s.serving.users_of_radar = {{0}};
    s.serving.rebuild_index(2);
    s.d = {1, 1};
    s.W = {{1.0}, {1.0}};
    s.P_bs = {1.0};
    s.sigma_th = 0.5;
    s.P_rad = 4.0;
    const Instance in = make_instance(s, 11);
    const SolverState st = run_wsmmse(in.eq, in.s, 2);
    const TrialReport r = build_report(in.eq, st, in.s, in.c, in.projs);
    REQUIRE(r.radar_leakage[0].unserved_users == std::vector<int>{1});

    const PrecoderBlocks b = split_precoders(in.eq, st.F);
    const ComplexMatrix x = in.c.H_radar[1][0] * in.projs[0].P * b.radar[0][0];
    CHECK(r.radar_leakage[0].unserved_power[0] == Catch::Approx(x.squaredNorm()).epsilon(1e-12).margin(1e-15));
}

TEST_CASE("build_report - recomputation is bit stable")
{
    std::mt19937_64 rng(5);
    const Instance in = make_instance(testing::random_scenario(rng), rng());
    const SolverState st = run_wsmmse(in.eq, in.s, 7);
    const TrialReport a = build_report(in.eq, st, in.s, in.c, in.projs);
    const TrialReport b = build_report(in.eq, st, in.s, in.c, in.projs);
    CHECK(a.per_user_mse == b.per_user_mse);
    CHECK(a.sum_wmse == b.sum_wmse);
    CHECK(a.sum_rate == b.sum_rate);
}
