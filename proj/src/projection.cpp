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

#include "ssvsp/projection.hpp"

#include "ssvsp/errors.hpp"

#include <numeric>
#include <string>

namespace ssvsp {

int SsvspProjector::rank() const
{
    return std::accumulate(selected_mask.begin(), selected_mask.end(), 0);
}

SsvspProjector build_projector(const AugmentedRadarChannel& H, double sigma_th)
{
    if (!(sigma_th >= 0.0))
        throw ValidationError("build_projector: sigma_th must be >= 0");

    const SvdResult dec = svd(H.H_aug);
    const Eigen::Index n_rad = H.H_aug.cols();

    SsvspProjector out;
    out.radar_index = H.radar_index;
    out.sigma_th = sigma_th;
    out.singular_values = dec.S;
    out.selected_mask.assign(static_cast<std::size_t>(n_rad), 1);
    for (Eigen::Index u = 0; u < dec.q; ++u)
        out.selected_mask[u] = dec.S(u) <= sigma_th ? 1 : 0;

    ComplexMatrix Vsel(n_rad, out.rank());
    Eigen::Index col = 0;
    for (Eigen::Index u = 0; u < n_rad; ++u)
        if (out.selected_mask[u])
            Vsel.col(col++) = dec.V.col(u);
    out.P = Vsel * Vsel.adjoint();
    // Exact Hermitian symmetry; rounding in the product leaves ~1e-16 skew.
    out.P = 0.5 * (out.P + out.P.adjoint()).eval();
    return out;
}

ComplexMatrix apply_projector(const SsvspProjector& p, const ComplexMatrix& X)
{
    if (X.rows() != p.P.cols())
        throw ValidationError("apply_projector: expected " + std::to_string(p.P.cols()) + " rows, got " +
                              std::to_string(X.rows()));
    return p.P * X;
}

double leakage_bound(const SsvspProjector& p, const AugmentedRadarChannel& H)
{
    return spectral_norm(H.H_aug * p.P);
}

std::vector<SsvspProjector> build_all_projectors(const ChannelSet& c, const Scenario& s)
{
    std::vector<SsvspProjector> out;
    out.reserve(static_cast<std::size_t>(s.topology.L));
    for (int l = 0; l < s.topology.L; ++l)
        out.push_back(build_projector(augment_radar_channel(c, l, s.serving), s.sigma_th));
    return out;
}

void append_projector(MatrixArchive& a, const SsvspProjector& p, double leakage)
{
    const int l = p.radar_index;
    a.matrices[{"projector", -1, l}] = p.P;
    a.vectors[{"mask", -1, l}] = std::vector<double>(p.selected_mask.begin(), p.selected_mask.end());
    a.vectors[{"sigma", -1, l}] = std::vector<double>(p.singular_values.begin(), p.singular_values.end());
    a.vectors[{"sigma_th", -1, l}] = {p.sigma_th};
    a.vectors[{"leakage", -1, l}] = {leakage};
}

} // namespace ssvsp
