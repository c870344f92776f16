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

#include "wisim/errors.hpp"
#include "wisim/waveform.hpp"

#include <cmath>
#include <numbers>

using namespace wisim;

TEST_CASE("Waveform - sample count and wavelength")
{
    RadarParams p;
    CHECK(p.samples_per_frame() == 100);
    CHECK(std::abs(p.wavelength() * p.carrier_frequency - speed_of_light) <= 1e-12 * speed_of_light);
    CHECK(std::round(p.wavelength() * 1e4) / 1e4 == Catch::Approx(0.0857).margin(1e-12));
}

TEST_CASE("Waveform - parameter invariants")
{
    RadarParams p;
    p.sample_rate = 99.5e6; // T0 * f_s = 99.5
    CHECK_THROWS_AS(p.samples_per_frame(), RangeError);
    CHECK_THROWS_AS(p.validate(), RangeError);

    p = RadarParams{};
    p.frame_period = 0.5e-6;
    CHECK_THROWS(p.validate());

    p = RadarParams{};
    p.bandwidth = 200e6;
    CHECK_THROWS(p.validate());

    p = RadarParams{};
    p.frames = 0;
    CHECK_THROWS(p.validate());
}

TEST_CASE("Waveform - chirp envelope and sweep")
{
    RadarParams p;
    SampledWaveform s = fmcw_chirp(p);
    REQUIRE(s.size() == 100);
    CHECK(s.sample_rate == p.sample_rate);
    for (int n = 0; n < s.size(); ++n)
        CHECK(std::abs(std::abs(s.samples[n]) - 1.0) < 1e-15);
    CHECK(s.samples[0] == cplx(1.0, 0.0));

    // The phase is quadratic, so the central difference is its exact derivative.
    const int n = p.samples_per_frame() - 1;
    const double dphi = (chirp_phase(p, n + 1.0) - chirp_phase(p, n - 1.0)) / 2.0;
    const double f_inst = dphi / (2.0 * std::numbers::pi / p.sample_rate);
    const double expected = p.bandwidth * (p.samples_per_frame() - 1) / p.samples_per_frame();
    CHECK(std::abs(f_inst - expected) <= 1e-9 * expected);

    // Sample values match the closed form exp(j pi k t^2).
    for (int m : {1, 17, 99})
    {
        const double t = m / p.sample_rate;
        const cplx ref = std::polar(1.0, std::numbers::pi * p.chirp_slope() * t * t);
        CHECK(std::abs(s.samples[m] - ref) < 1e-12);
    }
}

TEST_CASE("Waveform - chirp autocorrelation")
{
    RadarParams p;
    const Eigen::VectorXcd s = fmcw_chirp(p).samples;
    const int L = static_cast<int>(s.size());
    CHECK(std::abs(std::abs(s.dot(s)) - L) < 1e-9);

    // Lag-k product s[n] conj(s[n-k]) is a tone of pi*k_s*2k/f_s^2 rad/sample,
    // so the lag sum has Dirichlet magnitude |sin(q (L-k) / 2) / sin(q / 2)|.
    for (int k = 1; k < 20; ++k)
    {
        cplx acc = 0.0;
        for (int n = k; n < L; ++n)
            acc += s[n] * std::conj(s[n - k]);
        const double q = std::numbers::pi * p.chirp_slope() * 2.0 * k / (p.sample_rate * p.sample_rate);
        const double oracle = std::abs(std::sin(q * (L - k) / 2.0) / std::sin(q / 2.0));
        CHECK(std::abs(std::abs(acc) - oracle) < 1e-9);
        // Lag 1 lies inside the compressed pulse (B_W * T0 = 50, two samples wide).
        if (k >= 2)
            CHECK(std::abs(acc) <= 0.25 * L);
    }
}

TEST_CASE("Waveform - frame concatenation")
{
    std::vector<Eigen::VectorXcd> zero{Eigen::VectorXcd::Zero(100)};
    IQMatrix Z = sample_frames(zero);
    CHECK(Z.rows() == 100);
    CHECK(Z.cols() == 1);
    CHECK(Z.isZero(0.0));

    RadarParams p;
    const Eigen::VectorXcd s = fmcw_chirp(p).samples;
    std::vector<Eigen::VectorXcd> frames;
    for (int i = 0; i < 3000; ++i)
        frames.push_back(s * std::polar(1.0, 0.001 * i));
    IQMatrix X = sample_frames(frames);
    CHECK(X.rows() == 100);
    CHECK(X.cols() == 3000);
    CHECK(X.col(1234) == frames[1234]);

    frames.push_back(Eigen::VectorXcd::Zero(99));
    CHECK_THROWS_AS(sample_frames(frames), RangeError);
}
