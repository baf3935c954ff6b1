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

#include "ssvsp/channel.hpp"
#include "ssvsp/equivalence.hpp"
#include "ssvsp/projection.hpp"
#include "ssvsp/scenario.hpp"
#include "ssvsp/solver.hpp"

#include <vector>

namespace ssvsp {

struct ConstraintReport {
    StationRef station;
    double usage = 0.0;
    double budget = 0.0;
    double slack = 0.0;  // budget - usage
};

struct RadarLeakage {
    int radar = 0;
    double served_norm = 0.0;            // spectral norm of H_aug * P over served users
    std::vector<int> unserved_users;
    std::vector<double> unserved_power;  // received radar power at each unserved user
};

struct TrialReport {
    std::vector<double> per_user_mse;           // tr E_k
    std::vector<double> per_user_weighted_mse;  // tr W_k E_k
    double sum_wmse = 0.0;
    std::vector<ConstraintReport> power;
    std::vector<RadarLeakage> radar_leakage;
    double sum_rate = 0.0;                      // bits/s/Hz, diagnostic only
    int iterations_used = 0;
    bool converged = false;
    double final_kkt_residual = 0.0;
    double final_slackness = 0.0;
};

TrialReport build_report(const EquivalentModel& eq, const SolverState& state, const Scenario& s, const ChannelSet& c,
                         const std::vector<SsvspProjector>& projs);

/// sum_k log2 det(I + F_k^H H_kk^H Omega_k^{-1} H_kk F_k).
double sum_rate(const EquivalentModel& eq, const AugmentedPrecoders& F);

} // namespace ssvsp
