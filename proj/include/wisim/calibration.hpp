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

#pragma once

#include "wisim/dsp.hpp"
#include "wisim/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wisim {

// Candidate channel evolution rates: non-empty, strictly increasing, within [0, 1].
class RhoGrid
{
public:
    explicit RhoGrid(std::vector<double> values);

    // `count` points with 1 - rho log-spaced between 1 - lo and 1 - hi.
    static RhoGrid log_spaced(double lo, double hi, int count);

    // "0.9;0.99;0.999" (also accepts commas) or "log:<lo>:<hi>:<count>".
    static RhoGrid parse(const std::string &spec);

    // Default search grid: 0.9 .. 0.99999 with 13 log-spaced points.
    static RhoGrid default_grid();

    const std::vector<double> &values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    // Semicolon-separated exact listing, parseable by `parse`.
    std::string spec() const;

private:
    std::vector<double> values_;
};

struct CurvePoint
{
    double rho;
    double kl;
};

struct CalibrationRecord
{
    std::string scenario_id;
    double rho_star = 1.0;
    double kl_at_optimum = 0.0;
    RhoGrid grid{{1.0}};
    std::uint64_t seed = 0;
    std::string timestamp;          // ISO-8601 UTC
    std::vector<CurvePoint> curve;  // not persisted in the look-up table
};

inline constexpr double default_smoothing_eps = 1e-9;

// KL(reference || candidate) in nats against the smoothed candidate
// (candidate + eps) / (1 + E eps). Zero-probability reference bins contribute 0.
// Returns +infinity when eps = 0 and the candidate misses reference support.
double kl_divergence(const Pmf &reference, const Pmf &candidate, double smoothing_eps = default_smoothing_eps);

struct FitOptions
{
    double smoothing_eps = default_smoothing_eps;
    int realizations = 1; // simulated images averaged per grid point
    int workers = 1;
};

// Seed of realization k at every grid point; independent of rho so all grid
// points share random numbers and the KL curve is smooth in rho.
std::uint64_t realization_seed(std::uint64_t seed, int k);

// Average pmf of `realizations` simulations of `scenario` at evolution rate `rho`.
Pmf simulate_grid_point(const Scenario &scenario, double rho, std::uint64_t seed, int realizations);

// Brute-force search of rho over `grid` minimizing KL(reference || simulated).
// Ties go to the larger rho. The whole KL-vs-rho curve is kept in the record.
CalibrationRecord fit_rho(const Pmf &reference, const Scenario &scenario, const RhoGrid &grid, std::uint64_t seed,
                          const FitOptions &options = {});

// Look-up table CSV: scenario_id,rho_star,kl,seed,grid_spec,timestamp.
// Storing an existing id replaces that row in place.
void lut_store(const std::string &table_path, const CalibrationRecord &record);
std::optional<CalibrationRecord> lut_lookup(const std::string &table_path, const std::string &scenario_id);
std::vector<CalibrationRecord> lut_read(const std::string &table_path);

// CSV `rho,kl`.
void write_curve_csv(const std::string &path, const std::vector<CurvePoint> &curve);

std::string utc_timestamp();

} // namespace wisim
