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

#include "ssvsp/scenario.hpp"

#include "ssvsp/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ssvsp {

using nlohmann::json;

void ServingMap::rebuild_index(int K)
{
    bs_of_user.assign(static_cast<std::size_t>(std::max(K, 0)), {});
    radars_of_user.assign(static_cast<std::size_t>(std::max(K, 0)), {});
    for (std::size_t m = 0; m < users_of_bs.size(); ++m)
        for (int k : users_of_bs[m])
            if (k >= 0 && k < K)
                bs_of_user[k].push_back(static_cast<int>(m));
    for (std::size_t l = 0; l < users_of_radar.size(); ++l)
        for (int k : users_of_radar[l])
            if (k >= 0 && k < K)
                radars_of_user[k].push_back(static_cast<int>(l));
}

std::vector<StationRef> ServingMap::stations_of_user(int k) const
{
    std::vector<StationRef> out;
    for (int m : bs_of_user.at(k))
        out.push_back({StationKind::bs, m});
    for (int l : radars_of_user.at(k))
        out.push_back({StationKind::radar, l});
    return out;
}

bool ServingMap::serves(StationRef s, int k) const
{
    const auto& list = s.kind == StationKind::bs ? bs_of_user.at(k) : radars_of_user.at(k);
    return std::find(list.begin(), list.end(), s.index) != list.end();
}

int Scenario::tx_dim(int k) const
{
    return static_cast<int>(serving.bs_of_user.at(k).size()) * topology.n_t +
           static_cast<int>(serving.radars_of_user.at(k).size()) * topology.n_rad;
}

namespace {

template <typename... Args>
std::string cat(const Args&... args)
{
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

void check_serving_list(const std::vector<std::vector<int>>& lists, const char* name, int K,
                        std::vector<std::string>& out)
{
    for (std::size_t s = 0; s < lists.size(); ++s) {
        std::vector<int> seen;
        for (int k : lists[s]) {
            if (k < 0 || k >= K)
                out.push_back(cat(name, "[", s, "] lists user ", k, " outside [0, ", K, ")"));
            else if (std::find(seen.begin(), seen.end(), k) != seen.end())
                out.push_back(cat(name, "[", s, "] lists user ", k, " twice"));
            seen.push_back(k);
        }
    }
}

} // namespace

std::vector<std::string> validate_scenario(const Scenario& s)
{
    std::vector<std::string> out;
    const Topology& t = s.topology;

    if (t.L < 0) out.push_back("L < 0");
    if (t.M < 0) out.push_back("M < 0");
    if (t.L >= 0 && t.M >= 0 && t.L + t.M < 1) out.push_back("L + M < 1: no transmitters");
    if (t.K < 1) out.push_back("K < 1");
    if (t.n_rad < 1) out.push_back("n_rad < 1");
    if (t.n_t < 1) out.push_back("n_t < 1");
    if (t.n_r < 1) out.push_back("n_r < 1");
    if (!out.empty())
        return out; // everything below indexes by these counts

    const auto K = static_cast<std::size_t>(t.K);
    if (s.serving.users_of_bs.size() != static_cast<std::size_t>(t.M))
        out.push_back(cat("users_of_bs has ", s.serving.users_of_bs.size(), " lists, expected M = ", t.M));
    if (s.serving.users_of_radar.size() != static_cast<std::size_t>(t.L))
        out.push_back(cat("users_of_radar has ", s.serving.users_of_radar.size(), " lists, expected L = ", t.L));
    check_serving_list(s.serving.users_of_bs, "users_of_bs", t.K, out);
    check_serving_list(s.serving.users_of_radar, "users_of_radar", t.K, out);
    for (std::size_t l = 0; l < s.serving.users_of_radar.size(); ++l)
        if (s.serving.users_of_radar[l].empty())
            out.push_back(cat("radar ", l, " serves no users; projector undefined"));

    ServingMap index = s.serving;
    index.rebuild_index(t.K);
    for (std::size_t k = 0; k < K; ++k) {
        if (index.bs_of_user[k].empty() && index.radars_of_user[k].empty())
            out.push_back(cat("user ", k, " has no serving station"));
    }

    if (s.d.size() != K) {
        out.push_back(cat("d has ", s.d.size(), " entries, expected K = ", t.K));
    } else {
        for (std::size_t k = 0; k < K; ++k) {
            const int cap = std::min(static_cast<int>(index.radars_of_user[k].size()) * t.n_rad +
                                         static_cast<int>(index.bs_of_user[k].size()) * t.n_t,
                                     t.n_r);
            if (s.d[k] < 1)
                out.push_back(cat("d[", k, "] < 1"));
            else if (s.d[k] > cap && cap > 0) // cap == 0 is already reported as an unserved user
                out.push_back(cat("d_k exceeds min(L_k*n_rad + M_k*n_t, n_r) = ", cap, " for user ", k));
        }
    }

    if (s.W.size() != K) {
        out.push_back(cat("W has ", s.W.size(), " rows, expected K = ", t.K));
    } else {
        for (std::size_t k = 0; k < K; ++k) {
            if (k < s.d.size() && s.W[k].size() != static_cast<std::size_t>(s.d[k]))
                out.push_back(cat("W[", k, "] has ", s.W[k].size(), " weights, expected d[", k, "] = ", s.d[k]));
            for (std::size_t i = 0; i < s.W[k].size(); ++i)
                if (!(s.W[k][i] >= 0.0))
                    out.push_back(cat("W[", k, "][", i, "] < 0"));
        }
    }

    if (s.P_bs.size() != static_cast<std::size_t>(t.M))
        out.push_back(cat("P_bs has ", s.P_bs.size(), " entries, expected M = ", t.M));
    for (std::size_t m = 0; m < s.P_bs.size(); ++m)
        if (!(s.P_bs[m] > 0.0))
            out.push_back(cat("P_bs[", m, "] <= 0"));
    if (!(s.P_rad > 0.0)) out.push_back("P_rad <= 0");
    if (!(s.sigma_th >= 0.0)) out.push_back("sigma_th < 0");
    if (!(s.radar_gain > 0.0)) out.push_back("radar_gain <= 0");
    if (!(s.bs_gain > 0.0)) out.push_back("bs_gain <= 0");

    const SolverParams& p = s.solver;
    if (p.outer_iters < 1) out.push_back("solver.outer_iters < 1");
    if (p.dual_iters < 0) out.push_back("solver.dual_iters < 0");
    if (!(p.power_tol > 0.0)) out.push_back("solver.power_tol <= 0");
    if (!(p.kkt_tol > 0.0)) out.push_back("solver.kkt_tol <= 0");
    if (!(p.epsilon >= 0.0)) out.push_back("solver.epsilon < 0");
    if (!(p.dual_step > 0.0)) out.push_back("solver.dual_step <= 0");
    if (!(p.slack_tol > 0.0)) out.push_back("solver.slack_tol <= 0");
    return out;
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback)
{
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<T>();
}

Scenario from_json(const json& j)
{
    if (!j.is_object())
        throw ValidationError("scenario document must be a JSON object");

    Scenario s;
    s.topology.L = get_or(j, "L", 0);
    s.topology.M = get_or(j, "M", 0);
    s.topology.K = j.at("K").get<int>();
    s.topology.n_rad = get_or(j, "n_rad", 1);
    s.topology.n_t = get_or(j, "n_t", 1);
    s.topology.n_r = j.at("n_r").get<int>();
    s.d = j.at("d").get<std::vector<int>>();
    s.serving.users_of_bs = get_or(j, "users_of_bs", std::vector<std::vector<int>>{});
    s.serving.users_of_radar = get_or(j, "users_of_radar", std::vector<std::vector<int>>{});
    s.P_bs = get_or(j, "P_bs", std::vector<double>{});
    s.P_rad = get_or(j, "P_rad", 1.0);
    s.sigma_th = get_or(j, "sigma_th", 0.0);
    if (j.contains("W")) {
        s.W = j.at("W").get<std::vector<std::vector<double>>>();
    } else {
        for (int dk : s.d)
            s.W.emplace_back(static_cast<std::size_t>(std::max(dk, 0)), 1.0);
    }
    s.seed = get_or<std::uint64_t>(j, "seed", 0);
    s.radar_gain = get_or(j, "radar_gain", 1.0);
    s.bs_gain = get_or(j, "bs_gain", 1.0);

    if (j.contains("solver")) {
        const json& js = j.at("solver");
        SolverParams d;
        s.solver.outer_iters = get_or(js, "outer_iters", d.outer_iters);
        s.solver.dual_iters = get_or(js, "dual_iters", d.dual_iters);
        s.solver.power_tol = get_or(js, "power_tol", d.power_tol);
        s.solver.kkt_tol = get_or(js, "kkt_tol", d.kkt_tol);
        s.solver.epsilon = get_or(js, "epsilon", d.epsilon);
        s.solver.dual_step = get_or(js, "dual_step", d.dual_step);
        s.solver.slack_tol = get_or(js, "slack_tol", d.slack_tol);
    }
    s.serving.rebuild_index(s.topology.K);
    return s;
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("syntax error: ") + e.what());
    }

    Scenario s;
    try {
        s = from_json(j);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed scenario: ") + e.what());
    }

    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "invalid scenario: ";
        for (std::size_t i = 0; i < violations.size(); ++i)
            msg += (i ? "; " : "") + violations[i];
        throw ValidationError(msg);
    }
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s)
{
    json j;
    j["L"] = s.topology.L;
    j["M"] = s.topology.M;
    j["K"] = s.topology.K;
    j["n_rad"] = s.topology.n_rad;
    j["n_t"] = s.topology.n_t;
    j["n_r"] = s.topology.n_r;
    j["d"] = s.d;
    j["users_of_bs"] = s.serving.users_of_bs;
    j["users_of_radar"] = s.serving.users_of_radar;
    j["P_bs"] = s.P_bs;
    j["P_rad"] = s.P_rad;
    j["sigma_th"] = s.sigma_th;
    j["W"] = s.W;
    j["seed"] = s.seed;

    const SolverParams& p = s.solver;
    json js;
    js["outer_iters"] = p.outer_iters;
    js["dual_iters"] = p.dual_iters;
    js["power_tol"] = p.power_tol;
    js["kkt_tol"] = p.kkt_tol;
    js["epsilon"] = p.epsilon;
    js["dual_step"] = p.dual_step;
    // Optional keys are only written when they differ from the defaults,
    // so ordinary scenarios keep the exact documented field set.
    if (p.slack_tol != SolverParams{}.slack_tol)
        js["slack_tol"] = p.slack_tol;
    j["solver"] = js;
    if (s.radar_gain != 1.0) j["radar_gain"] = s.radar_gain;
    if (s.bs_gain != 1.0) j["bs_gain"] = s.bs_gain;
    return j.dump(2) + "\n";
}

} // namespace ssvsp
