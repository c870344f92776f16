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

#include <catch_amalgamated.hpp>

#include "wisim/calibration.hpp"
#include "wisim/errors.hpp"
#include "wisim/rng.hpp"
#include "wisim/simulate.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace wisim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name)
{
    fs::path p = fs::temp_directory_path() / "wisim_calibration_tests" / name;
    fs::create_directories(p.parent_path());
    return p;
}

Pmf random_pmf(int E, Rng &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Pmf p;
    double s = 0.0;
    for (int j = 0; j < E; ++j)
    {
        double v = u(rng);
        v = v * v * v; // skewed, some near-empty bins
        p.probabilities.push_back(v);
        s += v;
    }
    for (double &v : p.probabilities)
        v /= s;
    return p;
}

// Short walker so grid sweeps stay cheap.
Scenario short_walk()
{
    Scenario s = default_scenario();
    s.id = "short";
    s.radar.frames = 300;
    s.subject.trajectory.duration = 0.3;
    return s;
}

} // namespace

TEST_CASE("Calibration - KL divergence")
{
    Pmf a{{0.5, 0.5}}, b{{0.25, 0.75}};
    const double oracle = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
    CHECK(kl_divergence(a, b, 0.0) == Catch::Approx(oracle).margin(1e-15));
    CHECK(std::abs(kl_divergence(a, b, 0.0) - 0.1438) < 1e-4);
    CHECK(kl_divergence(a, a, 0.0) == 0.0);

    Rng rng(99);
    for (int k = 0; k < 1000; ++k)
    {
        Pmf p = random_pmf(16, rng), q = random_pmf(16, rng);
        CHECK_NOFAIL(kl_divergence(p, q) >= 0.0);
        if (kl_divergence(p, q) < 0.0)
            FAIL("negative divergence");
        CHECK(kl_divergence(p, p, 0.0) <= 1e-12);
    }

    // Smoothed candidate (q + eps) / (1 + E eps), terms with p = 0 skipped.
    Pmf p{{0.5, 0.5, 0.0}}, q{{1.0, 0.0, 0.0}};
    CHECK(std::isinf(kl_divergence(p, q, 0.0)));
    const double eps = 1e-3;
    const double expected = 0.5 * std::log(0.5 / ((1.0 + eps) / (1.0 + 3 * eps))) +
                            0.5 * std::log(0.5 / (eps / (1.0 + 3 * eps)));
    CHECK(kl_divergence(p, q, eps) == Catch::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(kl_divergence(a, Pmf{{1.0}}), RangeError);
    CHECK_THROWS_AS(kl_divergence(a, b, -1.0), RangeError);
}

TEST_CASE("Calibration - rho grids")
{
    RhoGrid g = RhoGrid::parse("0.9;0.99;0.999");
    CHECK(g.size() == 3);
    CHECK(g[1] == 0.99);
    CHECK(RhoGrid::parse("0.9,0.99").size() == 2);
    CHECK(RhoGrid::parse(g.spec()).values() == g.values());

    RhoGrid d = RhoGrid::default_grid();
    CHECK(d.size() == 13);
    CHECK(d.values().front() == 0.9);
    CHECK(d.values().back() == 0.99999);
    CHECK(d[3] == Catch::Approx(0.99).margin(1e-12));
    CHECK(d[6] == Catch::Approx(0.999).margin(1e-12));
    CHECK(RhoGrid::parse("log:0.9:0.99999:13").values() == d.values());

    CHECK_THROWS_AS(RhoGrid({0.9, 0.9}), RangeError);
    CHECK_THROWS_AS(RhoGrid({0.99, 0.9}), RangeError);
    CHECK_THROWS_AS(RhoGrid({1.01}), RangeError);
    CHECK_THROWS_AS(RhoGrid({}), RangeError);
    CHECK_THROWS_AS(RhoGrid::parse("0.9;abc"), ParseError);
    CHECK_THROWS_AS(RhoGrid::parse("log:0.9:0.99"), ParseError);
}

TEST_CASE("Calibration - single-candidate grid")
{
    Scenario s = short_walk();
    Pmf ref;
    ref.probabilities.assign(256, 1.0 / 256);
    CalibrationRecord r = fit_rho(ref, s, RhoGrid({0.5}), 1);
    CHECK(r.rho_star == 0.5);
    CHECK(r.kl_at_optimum >= 0.0);
    CHECK(r.curve.size() == 1);

    CHECK_THROWS_AS(fit_rho(Pmf{{1.0}}, s, RhoGrid({0.5}), 1), RangeError);
}

TEST_CASE("Calibration - worker independence and grid refinement")
{
    Scenario s = short_walk();
    const Pmf ref = simulate_grid_point(s, 0.99, 500, 2);
    const RhoGrid coarse({0.9, 0.99, 0.9999});
    FitOptions one, three;
    three.workers = 3;
    CalibrationRecord a = fit_rho(ref, s, coarse, 77, one);
    CalibrationRecord b = fit_rho(ref, s, coarse, 77, three);
    REQUIRE(a.curve.size() == b.curve.size());
    for (std::size_t j = 0; j < a.curve.size(); ++j)
        CHECK(a.curve[j].kl == b.curve[j].kl);
    CHECK(a.rho_star == b.rho_star);

    // Every grid point shares the fit seed, so refining only adds candidates.
    const RhoGrid fine({0.9, 0.95, 0.98, 0.99, 0.995, 0.999, 0.9999});
    CalibrationRecord f = fit_rho(ref, s, fine, 77, three);
    CHECK(f.kl_at_optimum <= a.kl_at_optimum);
    for (const auto &pt : a.curve)
        for (const auto &q : f.curve)
            if (q.rho == pt.rho)
                CHECK(q.kl == pt.kl);
}

TEST_CASE("Calibration - ties go to the larger rho")
{
    // A frozen snapshot makes every fresh draw equal, so rho has no effect and
    // all grid points score the same divergence.
    Scenario s = short_walk();
    s.qd.redraw_rays = false;
    const Pmf ref = simulate_grid_point(short_walk(), 0.9, 3, 1);
    CalibrationRecord r = fit_rho(ref, s, RhoGrid({0.5, 0.9, 0.99}), 1);
    CHECK(r.curve[0].kl == r.curve[1].kl);
    CHECK(r.curve[1].kl == r.curve[2].kl);
    CHECK(r.rho_star == 0.99);

    Scenario live = short_walk();
    const Pmf self = simulate_grid_point(live, 0.99, 1, 1);
    FitOptions strict;
    strict.smoothing_eps = 0.0;
    CalibrationRecord exact = fit_rho(self, live, RhoGrid({0.9, 0.99}), 1, strict);
    CHECK(exact.rho_star == 0.99);
    CHECK(exact.kl_at_optimum == 0.0);
}

TEST_CASE("Calibration - self-consistency on the documented example grid")
{
    Scenario s = default_scenario();
    s.radar.frames = 1000;
    s.subject.trajectory.duration = 1.0;
    const Pmf ref = simulate_grid_point(s, 0.999, 11, 64);
    FitOptions o;
    o.realizations = 32;
    CalibrationRecord r = fit_rho(ref, s, RhoGrid({0.9, 0.99, 0.999, 0.9999}), 2024, o);
    CHECK(r.rho_star == 0.999);
}

TEST_CASE("Calibration - failing grid point is identified")
{
    Scenario s = short_walk();
    s.radar.taps = 2; // the walker sits beyond two taps of range
    Pmf ref;
    ref.probabilities.assign(256, 1.0 / 256);
    try
    {
        fit_rho(ref, s, RhoGrid({0.9, 0.99}), 1);
        FAIL("expected a simulation error");
    }
    catch (const SimulationError &e)
    {
        CHECK(std::string(e.what()).find("rho = 0.9") != std::string::npos);
    }
}

TEST_CASE("Calibration - look-up table")
{
    const std::string table = scratch("lut.csv").string();
    fs::remove(table);
    CHECK(!lut_lookup(table, "walk"));

    CalibrationRecord r;
    r.scenario_id = "walk";
    r.rho_star = 0.9998;
    r.kl_at_optimum = 0.0123456789;
    r.grid = RhoGrid({0.99, 0.999, 0.9998});
    r.seed = 18446744073709551615ULL;
    r.timestamp = "2026-01-01T00:00:00Z";
    lut_store(table, r);
    auto got = lut_lookup(table, "walk");
    REQUIRE(got);
    CHECK(got->scenario_id == r.scenario_id);
    CHECK(got->rho_star == r.rho_star);
    CHECK(got->kl_at_optimum == r.kl_at_optimum);
    CHECK(got->seed == r.seed);
    CHECK(got->grid.values() == r.grid.values());
    CHECK(got->timestamp == r.timestamp);
    CHECK(!lut_lookup(table, "stand"));

    CalibrationRecord other = r;
    other.scenario_id = "stand";
    lut_store(table, other);
    CalibrationRecord newer = r;
    newer.rho_star = 0.999;
    lut_store(table, newer);
    CHECK(lut_read(table).size() == 2);
    CHECK(lut_lookup(table, "walk")->rho_star == 0.999);

    std::ofstream(table, std::ios::app) << "broken,row\n";
    try
    {
        lut_read(table);
        FAIL("expected a parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line() == 4);
    }
    std::ofstream(table) << "id,rho\n";
    CHECK_THROWS_AS(lut_lookup(table, "walk"), ParseError);
}

TEST_CASE("Calibration - curve export")
{
    const std::string path = scratch("curve.csv").string();
    write_curve_csv(path, {{0.9, 1.5}, {0.99, 0.25}});
    std::ifstream in(path);
    std::string l0, l1, l2;
    std::getline(in, l0);
    std::getline(in, l1);
    std::getline(in, l2);
    CHECK(l0 == "rho,kl");
    CHECK(l1 == "0.9,1.5");
    CHECK(l2 == "0.99,0.25");
    CHECK(utc_timestamp().size() == 20);
}
