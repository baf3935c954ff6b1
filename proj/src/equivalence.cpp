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

#include "ssvsp/equivalence.hpp"

#include "ssvsp/errors.hpp"

#include <string>

namespace ssvsp {

const BlockSlot* EquivalentModel::slot(int k, StationRef station) const
{
    for (const BlockSlot& b : blocks.at(k))
        if (b.station == station)
            return &b;
    return nullptr;
}

EquivalentModel build_equivalent_model(const Scenario& s, const ChannelSet& c,
                                       const std::vector<SsvspProjector>& projs)
{
    const Topology& t = s.topology;
    if (projs.size() != static_cast<std::size_t>(t.L))
        throw ValidationError("build_equivalent_model: expected " + std::to_string(t.L) + " projectors, got " +
                              std::to_string(projs.size()));
    for (int l = 0; l < t.L; ++l)
        if (projs[l].P.rows() != t.n_rad || projs[l].P.cols() != t.n_rad)
            throw ValidationError("build_equivalent_model: projector " + std::to_string(l) + " has wrong shape");
    check_channel_dims(c, s);

    EquivalentModel eq;
    eq.K = t.K;
    eq.M = t.M;
    eq.L = t.L;
    eq.m_r = t.n_r;
    eq.d = s.d;
    eq.budget_bs = s.P_bs;
    eq.budget_radar.assign(static_cast<std::size_t>(t.L), s.radar_budget());
    for (const SsvspProjector& p : projs)
        eq.P_radar.push_back(p.P);

    eq.blocks.resize(t.K);
    eq.m_t.resize(t.K);
    for (int k = 0; k < t.K; ++k) {
        int offset = 0;
        for (StationRef st : s.serving.stations_of_user(k)) {
            const int size = st.kind == StationKind::bs ? t.n_t : t.n_rad;
            eq.blocks[k].push_back({st, offset, size});
            offset += size;
        }
        eq.m_t[k] = offset;
    }

    eq.H_eff.assign(t.K, std::vector<ComplexMatrix>(t.K));
    for (int k = 0; k < t.K; ++k)
        for (int o = 0; o < t.K; ++o) {
            ComplexMatrix& H = eq.H_eff[k][o];
            H.resize(t.n_r, eq.m_t[o]);
            for (const BlockSlot& b : eq.blocks[o]) {
                if (b.station.kind == StationKind::bs)
                    H.middleCols(b.offset, b.size) = c.H_bs[k][b.station.index];
                else
                    H.middleCols(b.offset, b.size) = c.H_radar[k][b.station.index] * projs[b.station.index].P;
            }
        }

    eq.Phi_bs.assign(t.K, std::vector<ComplexMatrix>(t.M));
    eq.Phi_radar.assign(t.K, std::vector<ComplexMatrix>(t.L));
    for (int k = 0; k < t.K; ++k) {
        const int n = eq.m_t[k];
        for (int m = 0; m < t.M; ++m) {
            eq.Phi_bs[k][m] = ComplexMatrix::Zero(n, n);
            if (const BlockSlot* b = eq.slot(k, {StationKind::bs, m}))
                eq.Phi_bs[k][m].block(b->offset, b->offset, b->size, b->size).setIdentity();
        }
        for (int l = 0; l < t.L; ++l) {
            eq.Phi_radar[k][l] = ComplexMatrix::Zero(n, n);
            if (const BlockSlot* b = eq.slot(k, {StationKind::radar, l}))
                eq.Phi_radar[k][l].block(b->offset, b->offset, b->size, b->size) =
                    projs[l].P.adjoint() * projs[l].P;
        }
    }
    return eq;
}

PrecoderBlocks split_precoders(const EquivalentModel& eq, const AugmentedPrecoders& F)
{
    if (F.size() != static_cast<std::size_t>(eq.K))
        throw ValidationError("split_precoders: expected one precoder per user");
    PrecoderBlocks out;
    out.bs.assign(eq.K, std::vector<ComplexMatrix>(eq.M));
    out.radar.assign(eq.K, std::vector<ComplexMatrix>(eq.L));
    for (int k = 0; k < eq.K; ++k) {
        if (F[k].rows() != eq.m_t[k])
            throw ValidationError("split_precoders: precoder " + std::to_string(k) + " has wrong row count");
        for (const BlockSlot& b : eq.blocks[k]) {
            auto& dst = b.station.kind == StationKind::bs ? out.bs[k][b.station.index] : out.radar[k][b.station.index];
            dst = F[k].middleRows(b.offset, b.size);
        }
    }
    return out;
}

AugmentedPrecoders assemble_precoders(const EquivalentModel& eq, const PrecoderBlocks& blocks)
{
    AugmentedPrecoders F(eq.K);
    for (int k = 0; k < eq.K; ++k) {
        F[k] = ComplexMatrix::Zero(eq.m_t[k], eq.d[k]);
        for (const BlockSlot& b : eq.blocks[k]) {
            const auto& src = b.station.kind == StationKind::bs ? blocks.bs.at(k).at(b.station.index)
                                                                : blocks.radar.at(k).at(b.station.index);
            if (src.rows() != b.size || src.cols() != eq.d[k])
                throw ValidationError("assemble_precoders: block shape mismatch for user " + std::to_string(k));
            F[k].middleRows(b.offset, b.size) = src;
        }
    }
    return F;
}

namespace {

void check_inputs(const SignalSample& in, int K)
{
    if (in.u.size() != static_cast<std::size_t>(K) || in.noise.size() != static_cast<std::size_t>(K))
        throw ValidationError("signal inputs must have one stream and one noise vector per user");
}

} // namespace

SignalSample simulate_direct(const Scenario& s, const ChannelSet& c, const std::vector<SsvspProjector>& projs,
                             const PrecoderBlocks& F, const SignalSample& inputs)
{
    const Topology& t = s.topology;
    check_inputs(inputs, t.K);

    std::vector<ComplexVector> x_radar(t.L, ComplexVector::Zero(t.n_rad));
    for (int l = 0; l < t.L; ++l) {
        ComplexVector sum = ComplexVector::Zero(t.n_rad);
        for (int k : s.serving.users_of_radar[l]) {
            const ComplexMatrix& Fkl = F.radar.at(k).at(l);
            if (Fkl.rows() != t.n_rad || Fkl.cols() != inputs.u[k].size())
                throw ValidationError("simulate_direct: radar precoder shape mismatch");
            sum += Fkl * inputs.u[k];
        }
        x_radar[l] = projs.at(l).P * sum;
    }

    std::vector<ComplexVector> x_bs(t.M, ComplexVector::Zero(t.n_t));
    for (int m = 0; m < t.M; ++m)
        for (int k : s.serving.users_of_bs[m]) {
            const ComplexMatrix& Fkm = F.bs.at(k).at(m);
            if (Fkm.rows() != t.n_t || Fkm.cols() != inputs.u[k].size())
                throw ValidationError("simulate_direct: BS precoder shape mismatch");
            x_bs[m] += Fkm * inputs.u[k];
        }

    SignalSample out = inputs;
    out.y.assign(t.K, ComplexVector());
    for (int k = 0; k < t.K; ++k) {
        ComplexVector y = inputs.noise[k];
        for (int l = 0; l < t.L; ++l)
            y += c.H_radar[k][l] * x_radar[l];
        for (int m = 0; m < t.M; ++m)
            y += c.H_bs[k][m] * x_bs[m];
        out.y[k] = std::move(y);
    }
    return out;
}

SignalSample simulate_equivalent(const EquivalentModel& eq, const AugmentedPrecoders& F,
                                 const SignalSample& inputs)
{
    check_inputs(inputs, eq.K);
    if (F.size() != static_cast<std::size_t>(eq.K))
        throw ValidationError("simulate_equivalent: expected one precoder per user");

    std::vector<ComplexVector> x(eq.K);
    for (int o = 0; o < eq.K; ++o) {
        if (F[o].rows() != eq.m_t[o] || F[o].cols() != inputs.u[o].size())
            throw ValidationError("simulate_equivalent: precoder shape mismatch for user " + std::to_string(o));
        x[o] = F[o] * inputs.u[o];
    }

    SignalSample out = inputs;
    out.y.assign(eq.K, ComplexVector());
    for (int k = 0; k < eq.K; ++k) {
        ComplexVector y = eq.H_eff[k][k] * x[k];
        for (int o = 0; o < eq.K; ++o)
            if (o != k)
                y += eq.H_eff[k][o] * x[o];
        out.y[k] = y + inputs.noise[k];
    }
    return out;
}

PowerUsage audit_power(const EquivalentModel& eq, const AugmentedPrecoders& F)
{
    PowerUsage u;
    u.bs.assign(eq.M, 0.0);
    u.radar.assign(eq.L, 0.0);
    for (int k = 0; k < eq.K; ++k) {
        const ComplexMatrix cov = F.at(k) * F[k].adjoint();
        for (int m = 0; m < eq.M; ++m)
            u.bs[m] += (eq.Phi_bs[k][m] * cov).trace().real();
        for (int l = 0; l < eq.L; ++l)
            u.radar[l] += (eq.Phi_radar[k][l] * cov).trace().real();
    }
    return u;
}

PowerUsage direct_power(const Scenario& s, const std::vector<SsvspProjector>& projs, const PrecoderBlocks& F)
{
    PowerUsage u;
    u.bs.assign(s.topology.M, 0.0);
    u.radar.assign(s.topology.L, 0.0);
    for (int m = 0; m < s.topology.M; ++m)
        for (int k : s.serving.users_of_bs[m])
            u.bs[m] += F.bs.at(k).at(m).squaredNorm();
    for (int l = 0; l < s.topology.L; ++l)
        for (int k : s.serving.users_of_radar[l]) {
            const ComplexMatrix PF = projs.at(l).P * F.radar.at(k).at(l);
            u.radar[l] += (PF * PF.adjoint()).trace().real();
        }
    return u;
}

SignalSample draw_signal_inputs(const Scenario& s, std::mt19937_64& rng)
{
    SignalSample in;
    for (int k = 0; k < s.topology.K; ++k) {
        in.u.push_back(complex_gaussian(rng, s.d[k], 1).col(0));
        in.noise.push_back(complex_gaussian(rng, s.topology.n_r, 1).col(0));
    }
    return in;
}

} // namespace ssvsp
