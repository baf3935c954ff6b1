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

#include "ssvsp/archive.hpp"

#include "ssvsp/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ssvsp {

namespace {

std::string hex(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_real(const std::string& tok)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE)
        throw IoError("archive: bad real '" + tok + "'");
    return v;
}

std::string next(std::istringstream& in, const char* what)
{
    std::string tok;
    if (!(in >> tok))
        throw IoError(std::string("archive: unexpected end of data reading ") + what);
    return tok;
}

long next_int(std::istringstream& in, const char* what)
{
    const std::string tok = next(in, what);
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw IoError(std::string("archive: bad integer for ") + what + ": '" + tok + "'");
    return v;
}

} // namespace

std::string format_archive(const MatrixArchive& a)
{
    std::ostringstream os;
    os << "ssvsp-archive 1\n";
    os << "seed " << a.seed << "\n";
    for (const auto& [key, M] : a.matrices) {
        os << "matrix " << key.kind << ' ' << key.k << ' ' << key.station << ' ' << M.rows() << ' ' << M.cols() << '\n';
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            for (Eigen::Index i = 0; i < M.rows(); ++i)
                os << hex(M(i, j).real()) << ' ' << hex(M(i, j).imag()) << '\n';
    }
    for (const auto& [key, v] : a.vectors) {
        os << "vector " << key.kind << ' ' << key.k << ' ' << key.station << ' ' << v.size() << '\n';
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? " " : "") << hex(v[i]);
        os << '\n';
    }
    os << "end\n";
    return os.str();
}

MatrixArchive parse_archive(const std::string& text)
{
    std::istringstream in(text);
    MatrixArchive a;
    if (next(in, "magic") != "ssvsp-archive" || next_int(in, "version") != 1)
        throw IoError("archive: not an ssvsp-archive v1 document");

    for (;;) {
        const std::string tag = next(in, "record tag");
        if (tag == "end")
            return a;
        if (tag == "seed") {
            const std::string tok = next(in, "seed");
            a.seed = std::strtoull(tok.c_str(), nullptr, 10);
        } else if (tag == "matrix") {
            ArchiveKey key;
            key.kind = next(in, "kind");
            key.k = static_cast<int>(next_int(in, "user"));
            key.station = static_cast<int>(next_int(in, "station"));
            const long rows = next_int(in, "rows");
            const long cols = next_int(in, "cols");
            if (rows < 0 || cols < 0)
                throw IoError("archive: negative matrix dimension");
            ComplexMatrix M(rows, cols);
            for (long j = 0; j < cols; ++j)
                for (long i = 0; i < rows; ++i) {
                    const double re = parse_real(next(in, "entry"));
                    const double im = parse_real(next(in, "entry"));
                    M(i, j) = {re, im};
                }
            a.matrices[key] = std::move(M);
        } else if (tag == "vector") {
            ArchiveKey key;
            key.kind = next(in, "kind");
            key.k = static_cast<int>(next_int(in, "user"));
            key.station = static_cast<int>(next_int(in, "station"));
            const long n = next_int(in, "length");
            if (n < 0)
                throw IoError("archive: negative vector length");
            std::vector<double> v(static_cast<std::size_t>(n));
            for (auto& x : v)
                x = parse_real(next(in, "entry"));
            a.vectors[key] = std::move(v);
        } else {
            throw IoError("archive: unknown record '" + tag + "'");
        }
    }
}

void write_archive(const MatrixArchive& a, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << format_archive(a);
    if (!out)
        throw IoError("write failed: " + path);
}

MatrixArchive read_archive(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open archive " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_archive(buf.str());
}

MatrixArchive channels_to_archive(const ChannelSet& c)
{
    MatrixArchive a;
    a.seed = c.seed_used;
    for (std::size_t k = 0; k < c.H_radar.size(); ++k)
        for (std::size_t l = 0; l < c.H_radar[k].size(); ++l)
            a.matrices[{"radar", static_cast<int>(k), static_cast<int>(l)}] = c.H_radar[k][l];
    for (std::size_t k = 0; k < c.H_bs.size(); ++k)
        for (std::size_t m = 0; m < c.H_bs[k].size(); ++m)
            a.matrices[{"bs", static_cast<int>(k), static_cast<int>(m)}] = c.H_bs[k][m];
    return a;
}

ChannelSet channels_from_archive(const MatrixArchive& a, const Scenario& s)
{
    const Topology& t = s.topology;
    ChannelSet c;
    c.seed_used = a.seed;
    c.H_radar.resize(t.K);
    c.H_bs.resize(t.K);
    auto fetch = [&](const char* kind, int k, int st) {
        auto it = a.matrices.find({kind, k, st});
        if (it == a.matrices.end())
            throw ValidationError(std::string("channel dump lacks ") + kind + " link for user " + std::to_string(k) +
                                  ", station " + std::to_string(st));
        return it->second;
    };
    for (int k = 0; k < t.K; ++k) {
        for (int l = 0; l < t.L; ++l)
            c.H_radar[k].push_back(fetch("radar", k, l));
        for (int m = 0; m < t.M; ++m)
            c.H_bs[k].push_back(fetch("bs", k, m));
    }
    check_channel_dims(c, s);
    return c;
}

} // namespace ssvsp
