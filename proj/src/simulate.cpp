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

#include "wisim/simulate.hpp"
#include "wisim/channel.hpp"
#include "wisim/errors.hpp"

namespace wisim {

namespace {

template <typename F>
auto with_context(const Scenario &s, F &&f)
{
    try
    {
        return f();
    }
    catch (const Error &e)
    {
        throw Error(e.category(), "scenario '" + s.id + "': " + e.what());
    }
}

} // namespace

PrimitiveTrack build_track(const Scenario &s)
{
    return with_context(s, [&] {
        auto times = s.radar.frame_times();
        return build_walker(s.subject, s.room, s.radar_position, times);
    });
}

IQMatrix simulate_iq(const Scenario &s, const PrimitiveTrack &track)
{
    return with_context(s, [&] {
        s.validate();
        const RadarParams &radar = s.radar;
        if (track.frame_count() != radar.frames)
            throw RangeError("track has " + std::to_string(track.frame_count()) + " frames, radar expects " +
                             std::to_string(radar.frames));

        const SampledWaveform chirp = fmcw_chirp(radar);
        const QdChannel qd(s.qd_config(), radar);
        Rng phase_rng = make_rng(s.seed, stream::phases);
        Rng noise_rng = make_rng(s.seed, stream::noise);
        const std::vector<double> phases = draw_primitive_phases(track.primitive_count(), phase_rng);

        const double rho = s.effective_rho();
        const bool frozen = rho == 1.0 || !s.qd.redraw_rays;
        EvolutionState state(rho, derive_seed(s.seed, stream::interference));

        IQMatrix X(radar.samples_per_frame(), radar.frames);
        for (int i = 0; i < radar.frames; ++i)
        {
            TapVector u = primitive_channel(track, i, radar, phases);
            const TapVector &v = (frozen && state.started) ? state.current
                                                           : evolve_interference(state, qd.snapshot(state.rng));
            X.col(i) = apply_channel(chirp, compose(u, v), radar.noise_power_dbm, noise_rng);
        }
        return X;
    });
}

IQMatrix simulate_iq(const Scenario &s)
{
    return simulate_iq(s, build_track(s));
}

Spectrogram spectrogram_of(const Scenario &s, const IQMatrix &X)
{
    return with_context(s, [&] { return process_frames(X, fmcw_chirp(s.radar), s.dsp, s.radar.frame_period); });
}

SampleResult simulate_sample(const Scenario &s)
{
    SampleResult out;
    out.iq = simulate_iq(s);
    out.spectrogram = spectrogram_of(s, out.iq);
    out.image = to_grayscale(out.spectrogram, s.dsp.dynamic_range_db);
    return out;
}

Pmf simulate_pmf(const Scenario &s)
{
    IQMatrix X = simulate_iq(s);
    GrayImage img = to_grayscale(spectrogram_of(s, X), s.dsp.dynamic_range_db);
    return gray_pmf(img, s.dsp.pmf_bins);
}

} // namespace wisim
