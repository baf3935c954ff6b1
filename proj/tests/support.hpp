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

#pragma once

// Scenario generators shared by the unit, acceptance and benchmark targets.

#include "ssvsp/channel.hpp"
#include "ssvsp/equivalence.hpp"
#include "ssvsp/projection.hpp"
#include "ssvsp/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

namespace ssvsp::testing {

struct ScenarioLimits {
    int max_K = 3;
    int max_M = 3;
    int max_L = 3;
    int max_antennas = 4;
    bool allow_no_radar = true;
    bool allow_zero_threshold = true;  // sigma_th = 0 pins radar blocks to zero
};

inline int uniform_int(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random valid scenario: every radar serves at least one user and every
/// user is served by at least one station.
inline Scenario random_scenario(std::mt19937_64& rng, const ScenarioLimits& lim = {})
{
    Scenario s;
    Topology& t = s.topology;
    t.K = uniform_int(rng, 1, lim.max_K);
    t.L = uniform_int(rng, lim.allow_no_radar ? 0 : 1, lim.max_L);
    t.M = uniform_int(rng, t.L == 0 ? 1 : 0, lim.max_M);
    t.n_rad = uniform_int(rng, 1, lim.max_antennas);
    t.n_t = uniform_int(rng, 1, lim.max_antennas);
    t.n_r = uniform_int(rng, 1, lim.max_antennas);

    s.serving.users_of_bs.assign(t.M, {});
    s.serving.users_of_radar.assign(t.L, {});
    std::bernoulli_distribution coin(0.5);
    for (int m = 0; m < t.M; ++m)
        for (int k = 0; k < t.K; ++k)
            if (coin(rng))
                s.serving.users_of_bs[m].push_back(k);
    for (int l = 0; l < t.L; ++l) {
        for (int k = 0; k < t.K; ++k)
            if (coin(rng))
                s.serving.users_of_radar[l].push_back(k);
        if (s.serving.users_of_radar[l].empty())
            s.serving.users_of_radar[l].push_back(uniform_int(rng, 0, t.K - 1));
    }
    s.serving.rebuild_index(t.K);
    for (int k = 0; k < t.K; ++k) {
        if (s.serving.bs_of_user[k].empty() && s.serving.radars_of_user[k].empty()) {
            const int station = uniform_int(rng, 0, t.M + t.L - 1);
            auto& list = station < t.M ? s.serving.users_of_bs[station] : s.serving.users_of_radar[station - t.M];
            list.push_back(k);
            std::sort(list.begin(), list.end());
        }
    }
    s.serving.rebuild_index(t.K);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < t.K; ++k) {
        const int cap = std::min(s.tx_dim(k), t.n_r);
        s.d.push_back(uniform_int(rng, 1, cap));
        std::vector<double> w;
        for (int i = 0; i < s.d.back(); ++i)
            w.push_back(0.5 + unit(rng));
        s.W.push_back(w);
    }
    for (int m = 0; m < t.M; ++m)
        s.P_bs.push_back(0.5 + 9.5 * unit(rng));
    // Radar budgets land in [1, 10] W whatever threshold is drawn.
    s.sigma_th = std::vector<double>{0.0, 0.05, 0.5, 1.5}[uniform_int(rng, lim.allow_zero_threshold ? 0 : 1, 3)];
    const double radar_budget = 1.0 + 9.0 * unit(rng);
    s.P_rad = s.sigma_th > 0.0 ? radar_budget / s.sigma_th : 1000.0;
    s.seed = rng();
    return s;
}

/// One BS, one user, no radar.
inline Scenario single_link(int n_t, int n_r, int d, double power)
{
    Scenario s;
    s.topology = {0, 1, 1, 1, n_t, n_r};
    s.serving.users_of_bs = {{0}};
    s.serving.rebuild_index(1);
    s.d = {d};
    s.W = {std::vector<double>(static_cast<std::size_t>(d), 1.0)};
    s.P_bs = {power};
    return s;
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("ssvsp_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string operator/(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct Instance {
    Scenario s;
    ChannelSet c;
    std::vector<SsvspProjector> projs;
    EquivalentModel eq;
};

inline Instance make_instance(const Scenario& s, std::uint64_t seed)
{
    Instance in{s, generate_channels(s, seed), {}, {}};
    in.projs = build_all_projectors(in.c, s);
    in.eq = build_equivalent_model(s, in.c, in.projs);
    return in;
}

/// Equivalent model for a hand-written single-BS link with channel H.
inline Instance fixed_link(const ComplexMatrix& H, int d, double power)
{
    Scenario s = single_link(static_cast<int>(H.cols()), static_cast<int>(H.rows()), d, power);
    Instance in{s, generate_channels(s, 1), {}, {}};
    in.c.H_bs[0][0] = H;
    in.eq = build_equivalent_model(s, in.c, in.projs);
    return in;
}

} // namespace ssvsp::testing
