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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ssvsp {

struct Topology {
    int L = 0;      // radar stations
    int M = 0;      // cellular base stations
    int K = 1;      // users
    int n_rad = 1;  // transmit antennas per radar
    int n_t = 1;    // transmit antennas per BS
    int n_r = 1;    // receive antennas per user
};

enum class StationKind { bs, radar };

struct StationRef {
    StationKind kind;
    int index;

    bool operator==(const StationRef&) const = default;
};

/// Which stations carry which user messages.
///
/// `users_of_bs` and `users_of_radar` are the primary data. The per-user
/// inverse (`stations_of_user`) lists BSs in ascending index followed by
/// radars in ascending index; this order fixes the block layout of every
/// augmented precoder and effective channel.
struct ServingMap {
    std::vector<std::vector<int>> users_of_bs;
    std::vector<std::vector<int>> users_of_radar;

    // Derived by rebuild_index().
    std::vector<std::vector<int>> bs_of_user;
    std::vector<std::vector<int>> radars_of_user;

    void rebuild_index(int K);
    std::vector<StationRef> stations_of_user(int k) const;
    bool serves(StationRef s, int k) const;
};

struct SolverParams {
    int outer_iters = 200;
    int dual_iters = 50;
    double power_tol = 1e-6;
    double kkt_tol = 1e-8;
    double epsilon = 1e-9;
    double dual_step = 1.0;
    // Complementary-slackness tolerance relative to each budget.
    double slack_tol = 1e-4;

    bool operator==(const SolverParams&) const = default;
};

struct Scenario {
    Topology topology;
    ServingMap serving;
    std::vector<int> d;                   // streams per user
    std::vector<double> P_bs;             // per-BS budget (W)
    double P_rad = 1.0;                   // radar transmit power (W)
    double sigma_th = 0.0;                // singular value threshold
    std::vector<std::vector<double>> W;   // per-user diagonal weights
    std::uint64_t seed = 0;
    SolverParams solver;
    // Amplitude gains applied to every generated radar / BS link.
    double radar_gain = 1.0;
    double bs_gain = 1.0;

    /// Budget handed to every radar in the coexistence model.
    double radar_budget() const { return sigma_th * P_rad; }
    /// Transmit dimension of user k's serving ensemble.
    int tx_dim(int k) const;
    int num_constraints() const { return topology.M + topology.L; }
};

/// One entry per violated invariant; empty iff the scenario is consistent.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Parses a JSON scenario document. Throws ValidationError on malformed
/// documents or on the first pass of validate_scenario failing (all
/// violations are joined into the message).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

std::string serialize_scenario(const Scenario& s);

} // namespace ssvsp
