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

#include <algorithm>
#include <cmath>

namespace ssvsp {

double sum_rate(const EquivalentModel& eq, const AugmentedPrecoders& F)
{
    double rate = 0.0;
    for (int k = 0; k < eq.K; ++k) {
        const ComplexMatrix Omega = interference_covariance(eq, F, k);
        const ComplexMatrix HF = eq.H_eff[k][k] * F.at(k);
        ComplexMatrix S = HF.adjoint() * solve_hermitian(Omega, HF, 0.0);
        S = 0.5 * (S + S.adjoint());
        S.diagonal().array() += 1.0;
        // log det via Cholesky; S >= I so the factorization cannot fail.
        const Eigen::LLT<ComplexMatrix> llt(S);
        const RealVector diag = ComplexMatrix(llt.matrixL()).diagonal().real();
        rate += 2.0 * diag.array().log().sum() / std::log(2.0);
    }
    return rate;
}

TrialReport build_report(const EquivalentModel& eq, const SolverState& state, const Scenario& s, const ChannelSet& c,
                         const std::vector<SsvspProjector>& projs)
{
    const Weights W = weights_from(s);
    TrialReport r;
    for (int k = 0; k < eq.K; ++k) {
        const ComplexMatrix E = mse_matrix(eq, state.F, state.G, k);
        r.per_user_mse.push_back(E.trace().real());
        r.per_user_weighted_mse.push_back((W[k].cast<cdouble>().asDiagonal() * E).trace().real());
        r.sum_wmse += r.per_user_weighted_mse.back();
    }

    const auto usage = constraint_usage(eq, state.F);
    for (int cidx = 0; cidx < eq.num_constraints(); ++cidx) {
        ConstraintReport cr;
        cr.station = cidx < eq.M ? StationRef{StationKind::bs, cidx} : StationRef{StationKind::radar, cidx - eq.M};
        cr.usage = usage[cidx];
        cr.budget = eq.budget(cidx);
        cr.slack = cr.budget - cr.usage;
        r.power.push_back(cr);
    }

    // Leakage is measured on the station-level channels so links from a
    // radar to users it does not serve are visible.
    const PrecoderBlocks blocks = split_precoders(eq, state.F);
    for (int l = 0; l < s.topology.L; ++l) {
        RadarLeakage leak;
        leak.radar = l;
        leak.served_norm = leakage_bound(projs[l], augment_radar_channel(c, l, s.serving));

        ComplexMatrix tx_cov = ComplexMatrix::Zero(s.topology.n_rad, s.topology.n_rad);
        for (int k : s.serving.users_of_radar[l]) {
            const ComplexMatrix PF = projs[l].P * blocks.radar[k][l];
            tx_cov += PF * PF.adjoint();
        }
        const auto& served = s.serving.users_of_radar[l];
        for (int k = 0; k < s.topology.K; ++k) {
            if (std::find(served.begin(), served.end(), k) != served.end())
                continue;
            const ComplexMatrix& H = c.H_radar[k][l];
            leak.unserved_users.push_back(k);
            leak.unserved_power.push_back((H * tx_cov * H.adjoint()).trace().real());
        }
        r.radar_leakage.push_back(std::move(leak));
    }

    r.sum_rate = sum_rate(eq, state.F);
    r.iterations_used = state.iteration;
    r.converged = state.converged;
    if (!state.trace.kkt_residual.empty()) {
        r.final_kkt_residual = state.trace.kkt_residual.back();
        r.final_slackness = state.trace.slackness_residual.back();
    }
    return r;
}

} // namespace ssvsp
