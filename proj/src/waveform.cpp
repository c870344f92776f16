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

#include "wisim/waveform.hpp"
#include "wisim/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wisim {

int RadarParams::samples_per_frame() const
{
    double l = sweep_time * sample_rate;
    double r = std::round(l);
    if (!(r >= 1.0) || std::abs(l - r) > 1e-9 * r)
        throw RangeError("T0 * f_s must be a positive integer, got " + std::to_string(l));
    return static_cast<int>(r);
}

void RadarParams::validate() const
{
    if (!(carrier_frequency > 0.0) || !(bandwidth > 0.0) || !(sweep_time > 0.0) || !(sample_rate > 0.0))
        throw ConfigError("radar frequencies and times must be positive");
    const int L = samples_per_frame();
    if (frame_period < sweep_time)
        throw ConfigError("frame period T must be at least the sweep time T0");
    if (frames < 1)
        throw ConfigError("frame count C must be at least 1");
    if (bandwidth > sample_rate)
        throw ConfigError("sweep bandwidth exceeds the complex sampling rate");
    if (!(tx_power > 0.0))
        throw ConfigError("transmit power must be positive");
    if (taps < 1 || taps > L)
        throw ConfigError("channel tap capacity must be in [1, L]");
}

std::vector<double> RadarParams::frame_times() const
{
    std::vector<double> t(static_cast<std::size_t>(frames));
    for (int i = 0; i < frames; ++i)
        t[i] = i * frame_period;
    return t;
}

double chirp_phase(const RadarParams &params, double n)
{
    double t = n / params.sample_rate;
    return std::numbers::pi * params.chirp_slope() * t * t;
}

SampledWaveform fmcw_chirp(const RadarParams &params)
{
    const int L = params.samples_per_frame();
    SampledWaveform w;
    w.sample_rate = params.sample_rate;
    w.samples.resize(L);
    for (int n = 0; n < L; ++n)
        w.samples[n] = std::polar(1.0, chirp_phase(params, n));
    return w;
}

IQMatrix sample_frames(std::span<const Eigen::VectorXcd> frames)
{
    if (frames.empty())
        throw RangeError("at least one frame is required");
    const auto L = frames.front().size();
    IQMatrix X(L, static_cast<Eigen::Index>(frames.size()));
    for (std::size_t i = 0; i < frames.size(); ++i)
    {
        if (frames[i].size() != L)
            throw RangeError("ragged frame lengths: frame " + std::to_string(i) + " has " +
                             std::to_string(frames[i].size()) + " samples, expected " + std::to_string(L));
        X.col(static_cast<Eigen::Index>(i)) = frames[i];
    }
    return X;
}

} // namespace wisim
