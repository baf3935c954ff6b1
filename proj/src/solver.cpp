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

#include "ssvsp/solver.hpp"

#include "ssvsp/channel.hpp"
#include "ssvsp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ssvsp {

Weights weights_from(const Scenario& s)
{
    Weights W;
    for (const auto& w : s.W)
        W.push_back(Eigen::Map<const RealVector>(w.data(), static_cast<Eigen::Index>(w.size())));
    return W;
}

namespace {

int constraint_of(const EquivalentModel& eq, StationRef st)
{
    return st.kind == StationKind::bs ? st.index : eq.M + st.index;
}

bool hard_zero(const EquivalentModel& eq, int c)
{
    return !(eq.budget(c) > 0.0);
}

double block_usage(const EquivalentModel& eq, const BlockSlot& b, const ComplexMatrix& F)
{
    const auto block = F.middleRows(b.offset, b.size);
    if (b.station.kind == StationKind::bs)
        return block.squaredNorm();
    return (eq.P_radar[b.station.index] * block).squaredNorm();
}

void reproject_radar_blocks(const EquivalentModel& eq, ComplexMatrix& F, int k)
{
    for (const BlockSlot& b : eq.blocks[k])
        if (b.station.kind == StationKind::radar)
            F.middleRows(b.offset, b.size) = (eq.P_radar[b.station.index] * F.middleRows(b.offset, b.size)).eval();
}

// Quadratic and linear terms of the Lagrangian in F_k for fixed receivers:
// L = sum_k tr(F_k^H A_k F_k) - 2 Re tr(F_k^H B_k) + const, with
// A_k = C_k + sum_c mu_c Phi_{k,c}.
struct KktTerms {
    std::vector<ComplexMatrix> C;
    std::vector<ComplexMatrix> B;
};

KktTerms kkt_terms(const EquivalentModel& eq, const std::vector<ComplexMatrix>& G, const Weights& W)
{
    KktTerms t;
    for (int k = 0; k < eq.K; ++k) {
        ComplexMatrix C = ComplexMatrix::Zero(eq.m_t[k], eq.m_t[k]);
        for (int o = 0; o < eq.K; ++o) {
            const ComplexMatrix HG = eq.H_eff[o][k].adjoint() * G.at(o);
            C += HG * W.at(o).cast<cdouble>().asDiagonal() * HG.adjoint();
        }
        t.C.push_back(0.5 * (C + C.adjoint()));
        t.B.push_back(eq.H_eff[k][k].adjoint() * G[k] * W[k].cast<cdouble>().asDiagonal());
    }
    return t;
}

ComplexMatrix system_matrix(const EquivalentModel& eq, const KktTerms& t, const Multipliers& mu, int k)
{
    ComplexMatrix A = t.C[k];
    for (const BlockSlot& b : eq.blocks[k]) {
        const double m = mu.at(constraint_of(eq, b.station));
        if (m == 0.0)
            continue;
        if (b.station.kind == StationKind::bs)
            A.block(b.offset, b.offset, b.size, b.size).diagonal().array() += m;
        else
            A.block(b.offset, b.offset, b.size, b.size) += m * eq.Phi_radar[k][b.station.index].block(
                                                                    b.offset, b.offset, b.size, b.size);
    }
    return A;
}

// Rows of user k's precoder that may carry power; blocks of stations with a
// zero budget are pinned to zero.
std::vector<Eigen::Index> free_rows(const EquivalentModel& eq, int k)
{
    std::vector<Eigen::Index> rows;
    for (const BlockSlot& b : eq.blocks[k])
        if (!hard_zero(eq, constraint_of(eq, b.station)))
            for (int i = 0; i < b.size; ++i)
                rows.push_back(b.offset + i);
    return rows;
}

ComplexMatrix solve_user(const EquivalentModel& eq, const KktTerms& t, const Multipliers& mu, double epsilon, int k)
{
    ComplexMatrix F = ComplexMatrix::Zero(eq.m_t[k], eq.d[k]);
    const auto rows = free_rows(eq, k);
    if (rows.empty())
        return F;

    const ComplexMatrix A_full = system_matrix(eq, t, mu, k);
    const ComplexMatrix A = A_full(rows, rows);
    const ComplexMatrix B = t.B[k](rows, Eigen::all);
    const double tr = A.trace().real();
    if (!(tr > 0.0))
        return F; // A == 0 forces B == 0
    const ComplexMatrix X = solve_hermitian(A, B, epsilon * tr / static_cast<double>(A.rows()));
    F(rows, Eigen::all) = X;
    reproject_radar_blocks(eq, F, k);
    return F;
}

std::vector<std::vector<int>> users_of_constraints(const EquivalentModel& eq)
{
    std::vector<std::vector<int>> out(eq.num_constraints());
    for (int k = 0; k < eq.K; ++k)
        for (const BlockSlot& b : eq.blocks[k])
            out[constraint_of(eq, b.station)].push_back(k);
    return out;
}

double slackness_of(const EquivalentModel& eq, const Multipliers& mu, const std::vector<double>& usage)
{
    double worst = 0.0;
    for (int c = 0; c < eq.num_constraints(); ++c)
        if (!hard_zero(eq, c))
            worst = std::max(worst, std::abs(mu[c] * (usage[c] - eq.budget(c))) / eq.budget(c));
    return worst;
}

} // namespace

AugmentedPrecoders init_precoders(const EquivalentModel& eq, std::uint64_t seed)
{
    AugmentedPrecoders F(eq.K);
    for (int k = 0; k < eq.K; ++k) {
        auto rng = make_stream(seed, StreamKind::precoder_init, static_cast<std::uint64_t>(k), 0);
        F[k] = complex_gaussian(rng, eq.m_t[k], eq.d[k]);
        reproject_radar_blocks(eq, F[k], k);
        for (const BlockSlot& b : eq.blocks[k])
            if (hard_zero(eq, constraint_of(eq, b.station)))
                F[k].middleRows(b.offset, b.size).setZero();
    }

    const auto usage = constraint_usage(eq, F);
    double scale2 = std::numeric_limits<double>::infinity();
    for (int c = 0; c < eq.num_constraints(); ++c)
        if (usage[c] > 0.0)
            scale2 = std::min(scale2, eq.budget(c) / usage[c]);
    if (std::isfinite(scale2))
        for (auto& f : F)
            f *= std::sqrt(scale2);
    return F;
}

ComplexMatrix interference_covariance(const EquivalentModel& eq, const AugmentedPrecoders& F, int k)
{
    ComplexMatrix Omega = ComplexMatrix::Identity(eq.m_r, eq.m_r);
    for (int o = 0; o < eq.K; ++o) {
        if (o == k)
            continue;
        const ComplexMatrix HF = eq.H_eff[k][o] * F.at(o);
        Omega += HF * HF.adjoint();
    }
    return 0.5 * (Omega + Omega.adjoint());
}

EqualizerUpdate update_equalizers(const EquivalentModel& eq, const AugmentedPrecoders& F)
{
    EqualizerUpdate out;
    for (int k = 0; k < eq.K; ++k) {
        ComplexMatrix Omega = interference_covariance(eq, F, k);
        const ComplexMatrix HF = eq.H_eff[k][k] * F.at(k);
        const ComplexMatrix R = HF * HF.adjoint() + Omega;
        out.G.push_back(solve_hermitian(0.5 * (R + R.adjoint()), HF, 0.0));
        out.Omega.push_back(std::move(Omega));
    }
    return out;
}

ComplexMatrix mse_matrix(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                         int k)
{
    const ComplexMatrix& Gk = G.at(k);
    const ComplexMatrix HF = eq.H_eff[k][k] * F.at(k);
    if (Gk.rows() != eq.m_r || Gk.cols() != HF.cols())
        throw ValidationError("mse_matrix: equalizer shape mismatch for user " + std::to_string(k));
    const ComplexMatrix Omega = interference_covariance(eq, F, k);
    const ComplexMatrix GHF = Gk.adjoint() * HF;
    ComplexMatrix E = GHF * GHF.adjoint() - GHF - GHF.adjoint() + Gk.adjoint() * Omega * Gk;
    E.diagonal().array() += 1.0;
    return E;
}

double weighted_sum_mse(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                        const Weights& W)
{
    double total = 0.0;
    for (int k = 0; k < eq.K; ++k)
        total += (W.at(k).cast<cdouble>().asDiagonal() * mse_matrix(eq, F, G, k)).trace().real();
    return total;
}

AugmentedPrecoders update_precoders(const EquivalentModel& eq, const std::vector<ComplexMatrix>& G, const Weights& W,
                                    const Multipliers& mu, double epsilon)
{
    if (mu.size() != static_cast<std::size_t>(eq.num_constraints()))
        throw ValidationError("update_precoders: one multiplier per constraint required");
    for (double m : mu)
        if (!(m >= 0.0))
            throw ValidationError("update_precoders: multipliers must be non-negative");
    const KktTerms t = kkt_terms(eq, G, W);
    AugmentedPrecoders F(eq.K);
    for (int k = 0; k < eq.K; ++k)
        F[k] = solve_user(eq, t, mu, epsilon, k);
    return F;
}

std::vector<double> constraint_usage(const EquivalentModel& eq, const AugmentedPrecoders& F)
{
    std::vector<double> usage(eq.num_constraints(), 0.0);
    for (int k = 0; k < eq.K; ++k)
        for (const BlockSlot& b : eq.blocks[k])
            usage[constraint_of(eq, b.station)] += block_usage(eq, b, F.at(k));
    return usage;
}

double lagrangian(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                  const Weights& W, const Multipliers& mu)
{
    double L = weighted_sum_mse(eq, F, G, W);
    const auto usage = constraint_usage(eq, F);
    for (int c = 0; c < eq.num_constraints(); ++c)
        L += mu.at(c) * (usage[c] - eq.budget(c));
    return L;
}

std::vector<ComplexMatrix> lagrangian_gradient(const EquivalentModel& eq, const AugmentedPrecoders& F,
                                               const std::vector<ComplexMatrix>& G, const Weights& W,
                                               const Multipliers& mu)
{
    const KktTerms t = kkt_terms(eq, G, W);
    std::vector<ComplexMatrix> grad;
    for (int k = 0; k < eq.K; ++k)
        grad.push_back(2.0 * (system_matrix(eq, t, mu, k) * F.at(k) - t.B[k]));
    return grad;
}

DualResult solve_duals(const EquivalentModel& eq, const std::vector<ComplexMatrix>& G, const Weights& W,
                       const Multipliers& warm_start, const SolverParams& params)
{
    const int n_c = eq.num_constraints();
    const KktTerms terms = kkt_terms(eq, G, W);
    const auto users_of = users_of_constraints(eq);

    DualResult r;
    r.mu.assign(n_c, 0.0);
    if (warm_start.size() == static_cast<std::size_t>(n_c))
        for (int c = 0; c < n_c; ++c)
            r.mu[c] = hard_zero(eq, c) ? 0.0 : std::max(0.0, warm_start[c]);

    r.F.resize(eq.K);
    for (int k = 0; k < eq.K; ++k)
        r.F[k] = solve_user(eq, terms, r.mu, params.epsilon, k);
    r.usage = constraint_usage(eq, r.F);
    r.evaluations = 1;

    // Convex scale for multiplier moves: average diagonal of the receive terms.
    double ref = 0.0;
    double dims = 0.0;
    for (int k = 0; k < eq.K; ++k) {
        ref += terms.C[k].trace().real();
        dims += eq.m_t[k];
    }
    ref = ref > 0.0 ? ref / dims : 1.0;

    // Internal targets are far tighter than the public contract so that the
    // outer iteration stays monotone to ~1e-8.
    constexpr double inner_slack = 1e-12;
    auto meets = [&](double slack, double feas) {
        for (int c = 0; c < n_c; ++c) {
            if (hard_zero(eq, c))
                continue;
            const double b = eq.budget(c);
            if (r.usage[c] > b * (1.0 + feas))
                return false;
            if (std::abs(r.mu[c] * (r.usage[c] - b)) > slack * b)
                return false;
        }
        return true;
    };
    auto public_contract = [&] { return meets(params.slack_tol, params.power_tol); };
    auto inner_contract = [&] { return meets(inner_slack, inner_slack); };

    auto resolve_users = [&](int c) {
        for (int k : users_of[c])
            r.F[k] = solve_user(eq, terms, r.mu, params.epsilon, k);
        r.usage = constraint_usage(eq, r.F);
        ++r.evaluations;
    };

    // Exact coordinate ascent. For fixed other multipliers, usage_c is
    // non-increasing in mu_c; 1/sqrt(usage_c) is close to affine in mu_c,
    // which makes false position converge quickly.
    auto coordinate = [&](int c) {
        const double b = eq.budget(c);
        auto usage_at = [&](double x) {
            r.mu[c] = x;
            resolve_users(c);
            return r.usage[c];
        };
        auto h = [&](double u) { return u > 0.0 ? 1.0 / std::sqrt(u) - 1.0 / std::sqrt(b) : 1e300; };
        auto settled = [&](double x, double u) { return u <= b && x * (b - u) <= inner_slack * b; };

        const double cur = r.mu[c];
        double u_cur = r.usage[c];
        if (settled(cur, u_cur))
            return;

        double lo = 0.0, hi = 0.0, h_lo = 0.0, h_hi = 0.0;
        if (u_cur > b) {
            lo = cur;
            h_lo = h(u_cur);
            hi = std::max(2.0 * cur, 1e-6 * ref);
            double u_hi = usage_at(hi);
            int guard = 0;
            while (u_hi > b) {
                lo = hi;
                h_lo = h(u_hi);
                hi *= 4.0;
                u_hi = usage_at(hi);
                if (++guard > 200)
                    throw NumericalError("solve_duals: cannot bracket multiplier for constraint " + std::to_string(c));
            }
            h_hi = h(u_hi);
            if (settled(hi, u_hi))
                return;
        } else {
            const double u0 = usage_at(0.0);
            if (u0 <= b)
                return; // inactive constraint
            lo = 0.0;
            h_lo = h(u0);
            hi = cur;
            h_hi = h(u_cur);
        }

        // Illinois false position on h, keeping hi on the feasible side.
        double best = hi;
        int side = 0;
        for (int it = 0; it < 200; ++it) {
            double x = hi - h_hi * (hi - lo) / (h_hi - h_lo);
            if (!(x > lo && x < hi))
                x = 0.5 * (lo + hi);
            const double u = usage_at(x);
            const double hx = h(u);
            if (u <= b) {
                hi = x;
                h_hi = hx;
                best = hi;
                if (side == 1)
                    h_lo *= 0.5;
                side = 1;
                if (settled(x, u))
                    return;
            } else {
                lo = x;
                h_lo = hx;
                if (side == -1)
                    h_hi *= 0.5;
                side = -1;
            }
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
                break;
        }
        usage_at(best);
    };

    // Semismooth Newton on the complementarity system
    //   mu_c >= 0,  phi_c = 1/sqrt(usage_c) - 1/sqrt(P_c) >= 0,  mu_c phi_c = 0,
    // via Psi_c = min(mu_c, phi_c / d_c) with d_c = dphi_c/dmu_c. usage
    // behaves like 1/(lambda + mu)^2, so phi is close to affine in mu, and
    // solving all multipliers jointly avoids the zig-zag of coordinate
    // updates when one user sits under several budgets. The Jacobian uses
    // dF_k/dmu_d = -A_k^{-1} Phi_{k,d} F_k.
    std::vector<int> soft;
    for (int c = 0; c < n_c; ++c)
        if (!hard_zero(eq, c))
            soft.push_back(c);
    const auto n_s = static_cast<Eigen::Index>(soft.size());

    auto phi_times = [&](int k, int c, const ComplexMatrix& X) {
        ComplexMatrix Y = ComplexMatrix::Zero(X.rows(), X.cols());
        for (const BlockSlot& b : eq.blocks[k]) {
            if (constraint_of(eq, b.station) != c)
                continue;
            if (b.station.kind == StationKind::bs)
                Y.middleRows(b.offset, b.size) = X.middleRows(b.offset, b.size);
            else
                Y.middleRows(b.offset, b.size) =
                    eq.Phi_radar[k][b.station.index].block(b.offset, b.offset, b.size, b.size) *
                    X.middleRows(b.offset, b.size);
        }
        return Y;
    };
    // -d usage / d mu over the soft constraints
    auto usage_jacobian = [&] {
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_s, n_s);
        for (int k = 0; k < eq.K; ++k) {
            const auto rows = free_rows(eq, k);
            if (rows.empty())
                continue;
            const ComplexMatrix A = system_matrix(eq, terms, r.mu, k)(rows, rows);
            const double tr = A.trace().real();
            if (!(tr > 0.0))
                continue;
            std::vector<ComplexMatrix> Z(soft.size()), Y(soft.size());
            for (std::size_t i = 0; i < soft.size(); ++i) {
                Z[i] = phi_times(k, soft[i], r.F[k])(rows, Eigen::all);
                if (Z[i].squaredNorm() > 0.0)
                    Y[i] = solve_hermitian(A, Z[i], params.epsilon * tr / static_cast<double>(A.rows()));
            }
            for (std::size_t i = 0; i < soft.size(); ++i)
                for (std::size_t j = 0; j < soft.size(); ++j)
                    if (Y[j].size() > 0 && Z[i].squaredNorm() > 0.0)
                        D(i, j) += 2.0 * (Z[i].adjoint() * Y[j]).trace().real();
        }
        return D;
    };
    auto resolve_all = [&] {
        for (int k = 0; k < eq.K; ++k)
            r.F[k] = solve_user(eq, terms, r.mu, params.epsilon, k);
        r.usage = constraint_usage(eq, r.F);
        ++r.evaluations;
    };
    constexpr double no_power = 1e300;
    auto phi = [&](int c) {
        return r.usage[c] > 0.0 ? 1.0 / std::sqrt(r.usage[c]) - 1.0 / std::sqrt(eq.budget(c)) : no_power;
    };
    auto newton = [&] {
        for (int it = 0; it < 60 && !inner_contract(); ++it) {
            const Eigen::MatrixXd dU = usage_jacobian();
            Eigen::MatrixXd J(n_s, n_s);
            Eigen::VectorXd ph(n_s), d(n_s);
            for (Eigen::Index i = 0; i < n_s; ++i) {
                const int c = soft[i];
                const double u = r.usage[c];
                ph(i) = phi(c);
                J.row(i) = u > 0.0 ? (0.5 * std::pow(u, -1.5) * dU.row(i)).eval() : Eigen::RowVectorXd::Zero(n_s);
                d(i) = J(i, i);
            }
            auto merit = [&] {
                double m = 0.0;
                for (Eigen::Index i = 0; i < n_s; ++i) {
                    const double p = phi(soft[i]);
                    const double scaled = d(i) > 0.0 ? p / d(i) : (p >= 0.0 ? no_power : -no_power);
                    m = std::max(m, std::abs(std::min(r.mu[soft[i]], scaled)));
                }
                return m;
            };
            const double m0 = merit();

            Eigen::VectorXd step = Eigen::VectorXd::Zero(n_s);
            std::vector<Eigen::Index> act;
            for (Eigen::Index i = 0; i < n_s; ++i) {
                const double scaled = d(i) > 0.0 ? ph(i) / d(i) : no_power;
                if (r.mu[soft[i]] <= scaled)
                    step(i) = -r.mu[soft[i]];
                else
                    act.push_back(i);
            }
            if (!act.empty()) {
                const auto na = static_cast<Eigen::Index>(act.size());
                Eigen::MatrixXd Jaa(na, na);
                Eigen::VectorXd rhs(na);
                for (Eigen::Index a = 0; a < na; ++a) {
                    rhs(a) = -ph(act[a]);
                    for (Eigen::Index i = 0; i < n_s; ++i)
                        rhs(a) -= (std::find(act.begin(), act.end(), i) == act.end()) ? J(act[a], i) * step(i) : 0.0;
                    for (Eigen::Index b = 0; b < na; ++b)
                        Jaa(a, b) = J(act[a], act[b]);
                }
                const Eigen::VectorXd da = Jaa.fullPivLu().solve(rhs);
                if (!da.allFinite())
                    return;
                for (Eigen::Index a = 0; a < na; ++a)
                    step(act[a]) = da(a);
            }

            const Multipliers mu0 = r.mu;
            const AugmentedPrecoders F0 = r.F;
            const std::vector<double> u0 = r.usage;
            bool accepted = false;
            for (double alpha = 1.0; alpha > 1e-4; alpha *= 0.5) {
                for (Eigen::Index i = 0; i < n_s; ++i)
                    r.mu[soft[i]] = std::max(0.0, mu0[soft[i]] + alpha * step(i));
                resolve_all();
                if (merit() <= (1.0 - 1e-4 * alpha) * m0) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                r.mu = mu0;
                r.F = F0;
                r.usage = u0;
                return;
            }
        }
    };
    // Projected subgradient with the configured step rule; only used when
    // Newton cannot reach the inner target from the warm start.
    auto subgradient = [&] {
        if (!public_contract()) {
            for (int t = 1; t <= params.dual_iters; ++t) {
                const double step = params.dual_step / std::sqrt(static_cast<double>(t));
                for (int c = 0; c < n_c; ++c) {
                    if (hard_zero(eq, c))
                        continue;
                    const double violation = std::clamp(r.usage[c] / eq.budget(c) - 1.0, -1.0, 10.0);
                    r.mu[c] = std::max(0.0, r.mu[c] + step * std::max(r.mu[c], ref) * violation);
                }
                for (int k = 0; k < eq.K; ++k)
                    r.F[k] = solve_user(eq, terms, r.mu, params.epsilon, k);
                r.usage = constraint_usage(eq, r.F);
                ++r.evaluations;
                if (public_contract())
                    break;
            }
        }
    };

    newton();
    if (!inner_contract()) {
        subgradient();
        newton();
    }

    const int max_sweeps = std::max(50, params.dual_iters);
    for (int sweep = 0; sweep < max_sweeps && !inner_contract(); ++sweep)
        for (int c = 0; c < n_c; ++c)
            if (!hard_zero(eq, c))
                coordinate(c);

    double scale2 = 1.0;
    for (int c = 0; c < n_c; ++c)
        if (!hard_zero(eq, c) && r.usage[c] > eq.budget(c))
            scale2 = std::min(scale2, eq.budget(c) / r.usage[c]);
    if (scale2 < 1.0) {
        for (auto& f : r.F)
            f *= std::sqrt(scale2);
        for (auto& u : r.usage)
            u *= scale2;
        r.rescaled = true;
    }

    r.slackness = slackness_of(eq, r.mu, r.usage);
    r.converged = public_contract();
    return r;
}

namespace {

double stationarity(const EquivalentModel& eq, const AugmentedPrecoders& F, const std::vector<ComplexMatrix>& G,
                    const Weights& W, const Multipliers& mu)
{
    const auto grad = lagrangian_gradient(eq, F, G, W, mu);
    double sq = 0.0;
    for (int k = 0; k < eq.K; ++k) {
        const auto rows = free_rows(eq, k);
        sq += grad[k](rows, Eigen::all).squaredNorm();
    }
    return std::sqrt(sq);
}

} // namespace

SolverState run_wsmmse(const EquivalentModel& eq, const Scenario& s, std::uint64_t init_seed)
{
    const SolverParams& p = s.solver;
    const Weights W = weights_from(s);

    SolverState st;
    st.F = init_precoders(eq, init_seed);
    st.mu.assign(eq.num_constraints(), 0.0);

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int j = 1; j <= p.outer_iters; ++j) {
        EqualizerUpdate eqz = update_equalizers(eq, st.F);
        DualResult dual = solve_duals(eq, eqz.G, W, st.mu, p);
        st.F = std::move(dual.F);
        st.G = std::move(eqz.G);
        st.mu = dual.mu;
        st.iteration = j;

        const double obj = weighted_sum_mse(eq, st.F, st.G, W);
        st.trace.objective.push_back(obj);
        st.trace.power_usage.push_back(dual.usage);
        st.trace.kkt_residual.push_back(stationarity(eq, st.F, st.G, W, st.mu));
        st.trace.slackness_residual.push_back(dual.slackness);
        st.trace.dual_warning.push_back(dual.converged ? 0 : 1);
        if (j > 1 && obj > prev + 1e-8 * std::max(1.0, std::abs(prev)))
            ++st.trace.monotonicity_violations;

        const bool settled = j > 1 && std::abs(obj - prev) <= p.kkt_tol * std::max(1.0, std::abs(obj));
        prev = obj;
        if (settled && dual.converged) {
            st.converged = true;
            break;
        }
    }

    st.Omega.clear();
    for (int k = 0; k < eq.K; ++k)
        st.Omega.push_back(interference_covariance(eq, st.F, k));
    return st;
}

} // namespace ssvsp
