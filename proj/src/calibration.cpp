// SPDX-License-Identifier: Apache-2.0
//
// wisim: radar sensing channel simulator and micro-Doppler toolkit
// Copyright (C) 2026 The wisim authors
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

#include "wisim/calibration.hpp"
#include "wisim/errors.hpp"
#include "wisim/io.hpp"
#include "wisim/rng.hpp"
#include "wisim/simulate.hpp"

#include <atomic>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace wisim {

namespace {

const char *lut_header = "scenario_id,rho_star,kl,seed,grid_spec,timestamp";

double parse_number(const std::string &s)
{
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size())
        throw std::invalid_argument("trailing characters");
    return v;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s)
    {
        if (c == sep)
        {
            out.push_back(cur);
            cur.clear();
        }
        else
            cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

std::string record_row(const CalibrationRecord &r)
{
    return r.scenario_id + "," + format_double(r.rho_star) + "," + format_double(r.kl_at_optimum) + "," +
           std::to_string(r.seed) + "," + r.grid.spec() + "," + r.timestamp;
}

} // namespace

RhoGrid::RhoGrid(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty())
        throw RangeError("rho grid must not be empty");
    for (std::size_t i = 0; i < values_.size(); ++i)
    {
        if (!(values_[i] >= 0.0 && values_[i] <= 1.0))
            throw RangeError("rho grid values must lie in [0, 1]");
        if (i > 0 && !(values_[i] > values_[i - 1]))
            throw RangeError("rho grid must be strictly increasing");
    }
}

RhoGrid RhoGrid::log_spaced(double lo, double hi, int count)
{
    if (count < 1 || !(lo < 1.0) || !(hi < 1.0) || !(lo <= hi))
        throw RangeError("log-spaced rho grid needs lo <= hi < 1 and count >= 1");
    if (count == 1)
        return RhoGrid({lo});
    const double a = std::log10(1.0 - lo), b = std::log10(1.0 - hi);
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        v[k] = 1.0 - std::pow(10.0, a + (b - a) * k / (count - 1));
    v.front() = lo;
    v.back() = hi;
    return RhoGrid(std::move(v));
}

RhoGrid RhoGrid::parse(const std::string &spec)
{
    try
    {
        if (spec.rfind("log:", 0) == 0)
        {
            auto parts = split(spec.substr(4), ':');
            if (parts.size() != 3)
                throw ParseError("log grid spec must be log:<lo>:<hi>:<count>");
            return log_spaced(parse_number(parts[0]), parse_number(parts[1]), std::stoi(parts[2]));
        }
        std::string s = spec;
        for (char &c : s)
            if (c == ',')
                c = ';';
        std::vector<double> v;
        for (const std::string &p : split(s, ';'))
            if (!p.empty())
                v.push_back(parse_number(p));
        return RhoGrid(std::move(v));
    }
    catch (const std::logic_error &)
    {
        throw ParseError("malformed rho grid spec '" + spec + "'");
    }
}

RhoGrid RhoGrid::default_grid()
{
    return log_spaced(0.9, 0.99999, 13);
}

std::string RhoGrid::spec() const
{
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        out += (i ? ";" : "") + format_double(values_[i]);
    return out;
}

double kl_divergence(const Pmf &reference, const Pmf &candidate, double eps)
{
    if (reference.bins() != candidate.bins())
        throw RangeError("pmfs have different bin counts");
    if (!(eps >= 0.0))
        throw RangeError("smoothing eps must be non-negative");
    const double norm = 1.0 + reference.bins() * eps;
    double kl = 0.0;
    for (int j = 0; j < reference.bins(); ++j)
    {
        const double p = reference.probabilities[j];
        if (p <= 0.0)
            continue;
        const double q = (candidate.probabilities[j] + eps) / norm;
        if (q <= 0.0)
            return std::numeric_limits<double>::infinity();
        kl += p * std::log(p / q);
    }
    return std::max(kl, 0.0);
}

std::uint64_t realization_seed(std::uint64_t seed, int k)
{
    return k == 0 ? seed : derive_seed(seed, "realization", static_cast<std::uint64_t>(k));
}

Pmf simulate_grid_point(const Scenario &scenario, double rho, std::uint64_t seed, int realizations)
{
    if (realizations < 1)
        throw RangeError("at least one realization per grid point is required");
    Scenario s = scenario;
    s.rho = rho;
    s.sensing_uncertainty = true;
    std::vector<Pmf> pmfs;
    for (int k = 0; k < realizations; ++k)
    {
        s.seed = realization_seed(seed, k);
        pmfs.push_back(simulate_pmf(s));
    }
    return average_pmf(pmfs);
}

CalibrationRecord fit_rho(const Pmf &reference, const Scenario &scenario, const RhoGrid &grid, std::uint64_t seed,
                          const FitOptions &options)
{
    scenario.validate();
    if (reference.bins() != scenario.dsp.pmf_bins)
        throw RangeError("reference pmf has " + std::to_string(reference.bins()) + " bins, scenario uses " +
                         std::to_string(scenario.dsp.pmf_bins));

    const std::size_t n = grid.size();
    std::vector<double> kl(n, 0.0);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t j = next++; j < n; j = next++)
        {
            try
            {
                Pmf sim = simulate_grid_point(scenario, grid[j], seed, options.realizations);
                kl[j] = kl_divergence(reference, sim, options.smoothing_eps);
            }
            catch (...)
            {
                failures[j] = std::current_exception();
            }
        }
    };
    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(n)));
    if (workers == 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    for (std::size_t j = 0; j < n; ++j)
    {
        if (!failures[j])
            continue;
        try
        {
            std::rethrow_exception(failures[j]);
        }
        catch (const std::exception &e)
        {
            throw SimulationError("simulation failed at rho = " + format_double(grid[j]) + ": " + e.what());
        }
    }

    CalibrationRecord rec;
    rec.scenario_id = scenario.id;
    rec.grid = grid;
    rec.seed = seed;
    rec.timestamp = utc_timestamp();
    std::size_t best = 0;
    for (std::size_t j = 0; j < n; ++j)
    {
        rec.curve.push_back({grid[j], kl[j]});
        if (kl[j] <= kl[best])
            best = j;
    }
    rec.rho_star = grid[best];
    rec.kl_at_optimum = kl[best];
    return rec;
}

std::vector<CalibrationRecord> lut_read(const std::string &table_path)
{
    std::istringstream in(read_file(table_path));
    std::string line;
    std::size_t line_no = 0;
    std::vector<CalibrationRecord> out;
    bool header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header)
        {
            if (line != lut_header)
                throw ParseError("look-up table " + table_path + " lacks the header '" + lut_header + "'", line_no);
            header = true;
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 6)
            throw ParseError("look-up table row must have 6 fields, found " + std::to_string(f.size()), line_no);
        try
        {
            CalibrationRecord r;
            r.scenario_id = f[0];
            r.rho_star = parse_number(f[1]);
            r.kl_at_optimum = parse_number(f[2]);
            std::size_t used = 0;
            r.seed = std::stoull(f[3], &used);
            if (used != f[3].size() || f[0].empty())
                throw std::invalid_argument("bad field");
            r.grid = RhoGrid::parse(f[4]);
            r.timestamp = f[5];
            out.push_back(std::move(r));
        }
        catch (const std::exception &)
        {
            throw ParseError("malformed look-up table row in " + table_path, line_no);
        }
    }
    if (!header)
        throw ParseError("look-up table " + table_path + " is empty", line_no);
    return out;
}

void lut_store(const std::string &table_path, const CalibrationRecord &record)
{
    if (record.scenario_id.empty() || record.scenario_id.find_first_of(",\n\r") != std::string::npos)
        throw RangeError("scenario id is not storable in the look-up table");
    std::vector<CalibrationRecord> rows;
    if (std::filesystem::exists(table_path))
        rows = lut_read(table_path);
    bool replaced = false;
    for (auto &r : rows)
        if (r.scenario_id == record.scenario_id)
        {
            r = record;
            replaced = true;
        }
    if (!replaced)
        rows.push_back(record);
    std::string out = std::string(lut_header) + "\n";
    for (const auto &r : rows)
        out += record_row(r) + "\n";
    write_file_atomic(table_path, out);
}

std::optional<CalibrationRecord> lut_lookup(const std::string &table_path, const std::string &scenario_id)
{
    if (!std::filesystem::exists(table_path))
        return std::nullopt;
    for (auto &r : lut_read(table_path))
        if (r.scenario_id == scenario_id)
            return r;
    return std::nullopt;
}

void write_curve_csv(const std::string &path, const std::vector<CurvePoint> &curve)
{
    std::string out = "rho,kl\n";
    for (const auto &p : curve)
        out += format_double(p.rho) + "," + format_double(p.kl) + "\n";
    write_file_atomic(path, out);
}

std::string utc_timestamp()
{
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace wisim
