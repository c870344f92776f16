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
#include "wisim/kinematics.hpp"
#include "wisim/scenario.hpp"

namespace wisim {

struct SampleResult
{
    IQMatrix iq;
    Spectrogram spectrogram;
    GrayImage image;
};

// Random streams derived from Scenario::seed. Keeping them separate means two
// scenarios that differ only in rho share phases, snapshots and noise.
namespace stream {
inline constexpr const char *phases = "primitive-phases";
inline constexpr const char *interference = "interference";
inline constexpr const char *noise = "noise";
} // namespace stream

PrimitiveTrack build_track(const Scenario &s);

// Received frames r_i = (u_i + v_i) * s + n_i for i = 1..C, stacked as an L x C matrix.
IQMatrix simulate_iq(const Scenario &s);
IQMatrix simulate_iq(const Scenario &s, const PrimitiveTrack &track);

Spectrogram spectrogram_of(const Scenario &s, const IQMatrix &X);

// Track -> channel -> frames -> dechirp/SVD/STFT -> gray image. Fully determined by the scenario.
SampleResult simulate_sample(const Scenario &s);

Pmf simulate_pmf(const Scenario &s);

} // namespace wisim
