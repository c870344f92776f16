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

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace wisim {

using cplx = std::complex<double>;

// Fast time x slow time, column i is frame i.
using IQMatrix = Eigen::MatrixXcd;

inline constexpr double speed_of_light = 3.0e8;

struct RadarParams
{
    double carrier_frequency = 3.5e9;       // f_c, Hz
    double bandwidth = 50e6;                // B_W, Hz
    double sweep_time = 1e-6;               // T0, s
    double frame_period = 1e-3;             // T, s
    double sample_rate = 100e6;             // f_s, Hz
    int frames = 3000;                      // C
    double tx_power = 1.0;                  // P, W
    double antenna_gain_db = 25.0;          // P_t, dB
    std::optional<double> noise_power_dbm = -100.0; // nullopt disables AWGN
    int taps = 100;                         // L_h, channel capacity in samples

    // Samples per sweep L = T0 * f_s. Throws RangeError unless it is a positive integer.
    int samples_per_frame() const;

    double wavelength() const { return speed_of_light / carrier_frequency; }
    double chirp_slope() const { return bandwidth / sweep_time; }

    // Throws ConfigError / RangeError when an invariant is violated.
    void validate() const;

    std::vector<double> frame_times() const;
};

struct SampledWaveform
{
    Eigen::VectorXcd samples;
    double sample_rate = 0.0;

    int size() const { return static_cast<int>(samples.size()); }
};

// Continuous chirp phase pi * (B_W / T0) * t^2 at fractional sample index n.
double chirp_phase(const RadarParams &params, double n);

// Complex baseband up-chirp s[n] = exp(j pi (B_W/T0) t_n^2), t_n = n / f_s, n in [0, L).
SampledWaveform fmcw_chirp(const RadarParams &params);

// Stack L-sample frames as the columns of an L x C matrix. Ragged input throws RangeError.
IQMatrix sample_frames(std::span<const Eigen::VectorXcd> frames);

} // namespace wisim
