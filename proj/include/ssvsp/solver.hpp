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

#include "ssvsp/equivalence.hpp"
#include "ssvsp/numerics.hpp"
#include "ssvsp/scenario.hpp"

#include <cstdint>
#include <vector>

namespace ssvsp {

using Weights = std::vector<RealVector>;  // diagonal of W_k per user
using Multipliers = std::vector<double>;  // one per constraint, BSs then radars

Weights weights_from(const Scenario& s);

struct IterationTrace {
    std::vector<double> objective;
    std::vector<std::vector<double>> power_usage;  // [iter][constraint]
    std::vector<double> kkt_residual;
    std::vector<double> slackness_residual;        // max_c |mu_c (usage_c - P_c)| / P_c
    std::vector<int> dual_warning;                 // 1 when the dual search missed its contract
    int monotonicity_violations = 0;

    std::size_t size() const { return objective.size(); }
};

struct SolverState {
    AugmentedPrecoders F;
    std::vector<ComplexMatrix> G;      // n_r x d_k; the receiver applies G^H
    Multipliers mu;
    std::vector<ComplexMatrix> Omega;  // interference-plus-noise covariance
    int iteration = 0;
    bool converged = false;
    IterationTrace trace;

    double mu_bs(int m) const { return mu.at(m); }
    double mu_radar(int M, int l) const { return mu.at(M + l); }
};

struct EqualizerUpdate {
    std::vector<ComplexMatrix> G;
    std::vector<ComplexMatrix> Omega;
};

/// Random feasible start: Gaussian blocks, radar blocks projected, then a
/// single global scale so the tightest constraint is met with equality.
AugmentedPrecoders init_precoders(const EquivalentModel& eq, std::uint64_t seed);

/// I + sum_{o != k} H_ko F_o F_o^H H_ko^H.
ComplexMatrix interference_covariance(const EquivalentModel& eq, const AugmentedPrecoders& F, int k);

/// MMSE receivers for fixed precoders.
EqualizerUpdate update_equalizers(const EquivalentModel& eq, const AugmentedPrecoders& F);

/// MSE matrix of user k for the given transceivers (expanded quadratic form).
ComplexMatrix mse_matrix(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                         int k);

double weighted_sum_mse(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                        const Weights& W);

/// Precoder update from the stationarity condition for fixed receivers and
/// multipliers. The linear systems carry a Tikhonov term
/// epsilon * tr(A_k) / dim(A_k); radar blocks are re-projected afterwards.
AugmentedPrecoders update_precoders(const EquivalentModel& eq, const std::vector<ComplexMatrix>& G, const Weights& W,
                                    const Multipliers& mu, double epsilon);

/// Usage per constraint (BSs then radars), Phi-weighted.
std::vector<double> constraint_usage(const EquivalentModel& eq, const AugmentedPrecoders& F);

double lagrangian(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                  const Weights& W, const Multipliers& mu);

/// Gradient of the Lagrangian in F packed as dL/dRe(F) + i dL/dIm(F).
std::vector<ComplexMatrix> lagrangian_gradient(const EquivalentModel& eq, const AugmentedPrecoders& F,
                                               const std::vector<ComplexMatrix>& G, const Weights& W,
                                               const Multipliers& mu);

struct DualResult {
    Multipliers mu;
    AugmentedPrecoders F;
    std::vector<double> usage;
    double slackness = 0.0;   // max_c |mu_c (usage_c - P_c)| / P_c
    bool converged = false;   // feasibility and slackness contracts met
    bool rescaled = false;
    int evaluations = 0;
};

/// Finds multipliers for fixed receivers so the precoders meet every power
/// budget with complementary slackness.
///
/// Starts from the warm start with a semismooth Newton solve of the
/// complementarity conditions. If that misses the inner target, a projected
/// subgradient phase (step dual_step / sqrt(t), on relative violations) runs
/// and Newton is retried. Cyclic exact coordinate ascent then removes any
/// remaining error, and a final uniform rescale restores feasibility if
/// coupling left some usage above budget.
DualResult solve_duals(const EquivalentModel& eq, const std::vector<ComplexMatrix>& G, const Weights& W,
                       const Multipliers& warm_start, const SolverParams& params);

/// Alternating MMSE receiver / KKT precoder iteration.
SolverState run_wsmmse(const EquivalentModel& eq, const Scenario& s, std::uint64_t init_seed);

} // namespace ssvsp
