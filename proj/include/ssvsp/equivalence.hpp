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
#include "ssvsp/numerics.hpp"
#include "ssvsp/projection.hpp"
#include "ssvsp/scenario.hpp"

#include <vector>

namespace ssvsp {

/// Location of one station's block inside a user's augmented precoder.
struct BlockSlot {
    StationRef station;
    int offset = 0;
    int size = 0;
};

/// The coexistence downlink rewritten as an interference channel with
/// general linear (weighted trace) power constraints.
///
/// User k's message is carried by the ensemble `blocks[k]` (BSs ascending,
/// then radars ascending), giving an augmented transmit dimension m_t[k].
/// H_eff[k][o] maps user o's augmented precoder to user k's receiver; its
/// radar blocks already include the projector. Phi_bs[k][m] and
/// Phi_radar[k][l] weight F_k F_k^H in the per-station power constraints.
struct EquivalentModel {
    int K = 0;
    int M = 0;
    int L = 0;
    std::vector<int> m_t;
    int m_r = 0;
    std::vector<int> d;
    std::vector<std::vector<BlockSlot>> blocks;
    std::vector<std::vector<ComplexMatrix>> H_eff;      // [k][o]
    std::vector<std::vector<ComplexMatrix>> Phi_bs;     // [k][m]
    std::vector<std::vector<ComplexMatrix>> Phi_radar;  // [k][l]
    std::vector<ComplexMatrix> P_radar;                 // [l], n_rad x n_rad
    std::vector<double> budget_bs;
    std::vector<double> budget_radar;

    /// Slot of `station` inside user k's ensemble, or nullptr.
    const BlockSlot* slot(int k, StationRef station) const;

    int num_constraints() const { return M + L; }
    /// Constraint ordering: BSs 0..M-1 then radars M..M+L-1.
    const ComplexMatrix& phi(int k, int c) const { return c < M ? Phi_bs[k][c] : Phi_radar[k][c - M]; }
    double budget(int c) const { return c < M ? budget_bs[c] : budget_radar[c - M]; }
};

/// Per-(user, station) precoder blocks of the direct model. Entries for
/// stations that do not serve a user are empty matrices and are ignored.
struct PrecoderBlocks {
    std::vector<std::vector<ComplexMatrix>> bs;     // [k][m], n_t x d_k
    std::vector<std::vector<ComplexMatrix>> radar;  // [k][l], n_rad x d_k
};

using AugmentedPrecoders = std::vector<ComplexMatrix>;  // [k], m_t[k] x d_k

struct SignalSample {
    std::vector<ComplexVector> u;      // d_k
    std::vector<ComplexVector> noise;  // n_r
    std::vector<ComplexVector> y;      // n_r
};

struct PowerUsage {
    std::vector<double> bs;
    std::vector<double> radar;
};

EquivalentModel build_equivalent_model(const Scenario& s, const ChannelSet& c,
                                       const std::vector<SsvspProjector>& projs);

PrecoderBlocks split_precoders(const EquivalentModel& eq, const AugmentedPrecoders& F);
AugmentedPrecoders assemble_precoders(const EquivalentModel& eq, const PrecoderBlocks& blocks);

/// Received signal evaluated on the station-level model: radar outputs are
/// projected sums of per-user precoded streams.
SignalSample simulate_direct(const Scenario& s, const ChannelSet& c, const std::vector<SsvspProjector>& projs,
                             const PrecoderBlocks& F, const SignalSample& inputs);

SignalSample simulate_equivalent(const EquivalentModel& eq, const AugmentedPrecoders& F,
                                 const SignalSample& inputs);

/// Weighted-trace usage per constraint in the equivalent model.
PowerUsage audit_power(const EquivalentModel& eq, const AugmentedPrecoders& F);

/// Transmit power per station computed from the direct model.
PowerUsage direct_power(const Scenario& s, const std::vector<SsvspProjector>& projs, const PrecoderBlocks& F);

/// Random stream and noise vectors for one channel use.
SignalSample draw_signal_inputs(const Scenario& s, std::mt19937_64& rng);

} // namespace ssvsp
