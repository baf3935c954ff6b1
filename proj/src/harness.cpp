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

#include "ssvsp/harness.hpp"

#include "ssvsp/errors.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <omp.h>
#include <openssl/evp.h>

namespace ssvsp {

namespace fs = std::filesystem;

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string constraint_name(const Scenario& s, int c)
{
    return c < s.topology.M ? "bs" + std::to_string(c) : "radar" + std::to_string(c - s.topology.M);
}

} // namespace

TrialResult run_trial(const Scenario& s, int trial, std::uint64_t seed)
{
    const ChannelSet c = generate_channels(s, seed);
    const auto projs = build_all_projectors(c, s);
    const EquivalentModel eq = build_equivalent_model(s, c, projs);
    SolverState state = run_wsmmse(eq, s, seed);

    TrialResult r;
    r.trial = trial;
    r.seed = seed;
    r.report = build_report(eq, state, s, c, projs);
    r.trace = std::move(state.trace);
    return r;
}

std::vector<TrialResult> run_trials_serial(const Scenario& s, std::uint64_t seed0, int trials)
{
    std::vector<TrialResult> out;
    for (int t = 0; t < trials; ++t)
        out.push_back(run_trial(s, t, seed0 + static_cast<std::uint64_t>(t)));
    return out;
}

std::vector<TrialResult> run_trials_parallel(const Scenario& s, std::uint64_t seed0, int trials, int workers)
{
    std::vector<TrialResult> out(static_cast<std::size_t>(std::max(trials, 0)));
    std::vector<std::exception_ptr> errors(out.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(workers, 1))
    for (int t = 0; t < trials; ++t) {
        try {
            out[t] = run_trial(s, t, seed0 + static_cast<std::uint64_t>(t));
        } catch (...) {
            errors[t] = std::current_exception();
        }
    }

    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

std::string format_trace_csv(const Scenario& s, const IterationTrace& trace)
{
    std::ostringstream os;
    os << "iter,objective";
    for (int c = 0; c < s.num_constraints(); ++c)
        os << ",usage_" << constraint_name(s, c);
    os << ",kkt_residual,slackness_residual\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        os << i + 1 << ',' << num(trace.objective[i]);
        for (double u : trace.power_usage[i])
            os << ',' << num(u);
        os << ',' << num(trace.kkt_residual[i]) << ',' << num(trace.slackness_residual[i]) << '\n';
    }
    return os.str();
}

std::string format_summary_csv(const Scenario& s, const std::vector<TrialResult>& results)
{
    std::ostringstream os;
    os << "trial,seed,sum_wmse,sum_rate,iterations,converged,kkt_residual,slackness_residual,max_usage_ratio";
    for (int k = 0; k < s.topology.K; ++k)
        os << ",mse_user" << k;
    for (int l = 0; l < s.topology.L; ++l)
        os << ",leakage_radar" << l << ",unserved_power_radar" << l;
    os << '\n';

    for (const TrialResult& r : results) {
        const TrialReport& rep = r.report;
        double ratio = 0.0;
        for (const auto& c : rep.power)
            if (c.budget > 0.0)
                ratio = std::max(ratio, c.usage / c.budget);
        os << r.trial << ',' << r.seed << ',' << num(rep.sum_wmse) << ',' << num(rep.sum_rate) << ','
           << rep.iterations_used << ',' << (rep.converged ? 1 : 0) << ',' << num(rep.final_kkt_residual) << ','
           << num(rep.final_slackness) << ',' << num(ratio);
        for (double m : rep.per_user_mse)
            os << ',' << num(m);
        for (const auto& leak : rep.radar_leakage) {
            double unserved = 0.0;
            for (double p : leak.unserved_power)
                unserved += p;
            os << ',' << num(leak.served_norm) << ',' << num(unserved);
        }
        os << '\n';
    }
    return os.str();
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed");
    static const char* hexdig = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hexdig[digest[i] >> 4];
        out += hexdig[digest[i] & 0xf];
    }
    return out;
}

std::string format_manifest(const RunManifest& m)
{
    nlohmann::ordered_json j;
    j["scenario_path"] = m.scenario_path;
    j["seeds"] = m.seeds;
    j["outputs"] = m.outputs;
    auto files = nlohmann::ordered_json::array();
    for (const auto& f : m.emitted_files)
        files.push_back({{"name", f.name}, {"sha256", f.sha256}});
    j["emitted_files"] = files;
    return j.dump(2) + "\n";
}

bool verify_manifest(const RunManifest& m)
{
    for (const auto& f : m.emitted_files) {
        const fs::path p = fs::path(m.outputs) / f.name;
        if (!fs::exists(p) || sha256_hex(read_text_file(p.string())) != f.sha256)
            return false;
    }
    return true;
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << content;
    out.close();
    if (!out)
        throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunManifest cmd_simulate(const SimulateOptions& opt)
{
    if (opt.trials < 1)
        throw ValidationError("--trials must be >= 1");
    if (opt.out_dir.empty())
        throw ValidationError("no output directory given");
    const Scenario s = load_scenario(opt.scenario_path);

    const auto results = opt.workers > 1 ? run_trials_parallel(s, opt.seed0, opt.trials, opt.workers)
                                         : run_trials_serial(s, opt.seed0, opt.trials);

    RunManifest m;
    m.scenario_path = opt.scenario_path;
    m.outputs = opt.out_dir;
    for (const auto& r : results)
        m.seeds.push_back(r.seed);

    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path p = fs::path(opt.out_dir) / name;
        written.push_back(p);
        write_text_file(p.string(), content);
        m.emitted_files.push_back({name, sha256_hex(content)});
    };

    try {
        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + opt.out_dir + ": " + ec.message());
        for (const auto& r : results) {
            char name[32];
            std::snprintf(name, sizeof name, "trace_%04d.csv", r.trial);
            emit(name, format_trace_csv(s, r.trace));
        }
        emit("summary.csv", format_summary_csv(s, results));
        const fs::path mpath = fs::path(opt.out_dir) / "manifest.json";
        written.push_back(mpath);
        write_text_file(mpath.string(), format_manifest(m));
        if (!verify_manifest(m))
            throw IoError("output verification failed in " + opt.out_dir);
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written)
            fs::remove(p, ec);
        throw;
    }
    return m;
}

ProjectOutcome cmd_project(const std::string& scenario_path, const std::string& channel_dump,
                           const std::string& out_path)
{
    const Scenario s = load_scenario(scenario_path);
    const ChannelSet c = channels_from_archive(read_archive(channel_dump), s);

    ProjectOutcome out;
    MatrixArchive a;
    a.seed = c.seed_used;
    for (int l = 0; l < s.topology.L; ++l) {
        const auto H = augment_radar_channel(c, l, s.serving);
        SsvspProjector p = build_projector(H, s.sigma_th);
        const double leak = leakage_bound(p, H);
        append_projector(a, p, leak);
        out.leakage.push_back(leak);
        out.projectors.push_back(std::move(p));
    }
    try {
        write_archive(a, out_path);
    } catch (...) {
        std::error_code ec;
        fs::remove(out_path, ec);
        throw;
    }
    return out;
}

EquivalenceCheck check_equivalence(const Scenario& s, const ChannelSet& c, const std::vector<SsvspProjector>& projs,
                                   const EquivalentModel& eq, std::uint64_t seed)
{
    auto rng = make_stream(seed, StreamKind::signal, 0, 0);
    AugmentedPrecoders F(eq.K);
    for (int k = 0; k < eq.K; ++k)
        F[k] = complex_gaussian(rng, eq.m_t[k], eq.d[k]);
    const PrecoderBlocks blocks = split_precoders(eq, F);
    const SignalSample in = draw_signal_inputs(s, rng);

    const SignalSample direct = simulate_direct(s, c, projs, blocks, in);
    const SignalSample equiv = simulate_equivalent(eq, F, in);

    EquivalenceCheck out;
    for (int k = 0; k < eq.K; ++k) {
        const double scale = std::max(1.0, direct.y[k].cwiseAbs().maxCoeff());
        out.signal_deviation = std::max(out.signal_deviation, (direct.y[k] - equiv.y[k]).cwiseAbs().maxCoeff() / scale);
    }

    const PowerUsage pe = audit_power(eq, F);
    const PowerUsage pd = direct_power(s, projs, blocks);
    auto cmp = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            out.power_deviation = std::max(out.power_deviation, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    };
    cmp(pe.bs, pd.bs);
    cmp(pe.radar, pd.radar);
    return out;
}

ValidateOutcome cmd_validate(const std::string& scenario_path)
{
    const Scenario s = load_scenario(scenario_path);
    ValidateOutcome out;
    out.problems = validate_scenario(s);
    if (!out.problems.empty())
        return out;

    const ChannelSet c = generate_channels(s, s.seed);
    const auto projs = build_all_projectors(c, s);
    const EquivalentModel eq = build_equivalent_model(s, c, projs);
    out.dry_run = check_equivalence(s, c, projs, eq, s.seed);
    if (out.dry_run.signal_deviation > 1e-10)
        out.problems.push_back("dry run: direct and equivalent received signals differ by " +
                               num(out.dry_run.signal_deviation));
    if (out.dry_run.power_deviation > 1e-10)
        out.problems.push_back("dry run: power audit differs from direct transmit power by " +
                               num(out.dry_run.power_deviation));
    return out;
}

} // namespace ssvsp
