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

#include "wisim/channel.hpp"
#include "wisim/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wisim {

namespace {

constexpr double pi = std::numbers::pi;

int face_axis(Face f) { return static_cast<int>(f) / 2; }

double face_coordinate(Face f, const Room &room)
{
    return static_cast<int>(f) % 2 == 0 ? 0.0 : room.size[face_axis(f)];
}

Vec3 mirror(const Vec3 &p, Face f, const Room &room)
{
    Vec3 q = p;
    const int a = face_axis(f);
    q[a] = 2.0 * face_coordinate(f, room) - p[a];
    return q;
}

// Intersect the segment from -> to with the plane of face f; the hit must lie on the face.
std::optional<Vec3> hit_face(const Vec3 &from, const Vec3 &to, Face f, const Room &room)
{
    constexpr double tol = 1e-9;
    const int a = face_axis(f);
    double denom = to[a] - from[a];
    if (std::abs(denom) < 1e-15)
        return std::nullopt;
    double t = (face_coordinate(f, room) - from[a]) / denom;
    if (t <= tol || t >= 1.0 - tol)
        return std::nullopt;
    Vec3 q = from + t * (to - from);
    for (int k = 0; k < 3; ++k)
        if (k != a && (q[k] < -tol || q[k] > room.size[k] + tol))
            return std::nullopt;
    return q;
}

Cluster make_cluster(double path_length, double loss, std::vector<Face> faces, const QdConfig &cfg, double wavelength)
{
    Cluster c;
    c.delay = path_length / speed_of_light;
    c.amplitude = std::sqrt(loss) * wavelength / (4.0 * pi * (cfg.reference_length + path_length));
    c.faces = std::move(faces);
    return c;
}

} // namespace

void QdConfig::validate() const
{
    room.validate();
    if (!room.contains(radar_position))
        throw ConfigError("radar position lies outside the room");
    for (double h : reflection_loss)
        if (!(h > 0.0 && h <= 1.0))
            throw ConfigError("reflection losses must lie in (0, 1]");
    if (!(ray_rate > 0.0))
        throw ConfigError("intra-cluster ray rate must be positive");
    if (!(ray_decay > 0.0))
        throw ConfigError("intra-cluster decay must be positive");
    if (!(ray_window >= 0.0))
        throw ConfigError("intra-cluster window must be non-negative");
    if (max_rays < 1)
        throw ConfigError("rays per cluster cap must be at least 1");
    if (!(reference_length >= 0.0))
        throw ConfigError("reference length D_0 must be non-negative");
    if (max_order < 1 || max_order > 2)
        throw ConfigError("image-method order must be 1 or 2");
}

std::vector<Cluster> image_clusters(const QdConfig &cfg, double wavelength)
{
    cfg.validate();
    const Vec3 &r = cfg.radar_position;
    std::vector<Cluster> out;

    for (int fi = 0; fi < 6; ++fi)
    {
        Face f = static_cast<Face>(fi);
        Vec3 img = mirror(r, f, cfg.room);
        if (!hit_face(r, img, f, cfg.room))
            continue;
        out.push_back(make_cluster((img - r).norm(), cfg.reflection_loss[fi], {f}, cfg, wavelength));
    }
    if (cfg.max_order < 2)
        return out;

    // radar -> f -> g -> radar. Back-trace from the receiver through the image chain.
    for (int fi = 0; fi < 6; ++fi)
    {
        for (int gi = 0; gi < 6; ++gi)
        {
            if (fi == gi)
                continue;
            Face f = static_cast<Face>(fi), g = static_cast<Face>(gi);
            Vec3 img_f = mirror(r, f, cfg.room);
            Vec3 img_fg = mirror(img_f, g, cfg.room);
            auto on_g = hit_face(r, img_fg, g, cfg.room);
            if (!on_g)
                continue;
            if (!hit_face(*on_g, img_f, f, cfg.room))
                continue;
            double loss = cfg.reflection_loss[fi] * cfg.reflection_loss[gi];
            out.push_back(make_cluster((img_fg - r).norm(), loss, {f, g}, cfg, wavelength));
        }
    }
    return out;
}

std::vector<Ray> draw_rays(const QdConfig &cfg, Rng &rng)
{
    std::exponential_distribution<double> gap(cfg.ray_rate);
    std::vector<Ray> rays;
    rays.reserve(static_cast<std::size_t>(cfg.max_rays));
    auto add = [&](double offset) {
        double sigma = std::sqrt(0.5 * std::exp(-offset / cfg.ray_decay));
        double a = rayleigh(sigma, rng);
        rays.push_back({offset, a, uniform_phase(rng)});
    };
    add(0.0);
    double offset = 0.0;
    while (static_cast<int>(rays.size()) < cfg.max_rays)
    {
        offset += gap(rng);
        if (offset > cfg.ray_window)
            break;
        add(offset);
    }
    return rays;
}

void accumulate_cluster(TapVector &taps, const Cluster &cluster, std::span<const Ray> rays, double sample_rate)
{
    for (const Ray &ray : rays)
    {
        long k = std::lround((cluster.delay + ray.offset) * sample_rate);
        if (k < 0 || k >= taps.size())
            throw BoundsError("ray delay falls outside the tap capacity (tap " + std::to_string(k) + ")");
        taps[k] += cluster.amplitude * std::polar(ray.amplitude, ray.phase);
    }
}

QdChannel::QdChannel(const QdConfig &config, const RadarParams &params)
    : config_(config), sample_rate_(params.sample_rate), taps_(params.taps)
{
    clusters_ = image_clusters(config_, params.wavelength());
    for (const Cluster &c : clusters_)
    {
        long last = std::lround((c.delay + config_.ray_window) * sample_rate_);
        if (last >= taps_)
            throw BoundsError("room too large for the channel tap capacity: path of " +
                              std::to_string(c.delay * speed_of_light) + " m needs tap " + std::to_string(last) +
                              " but only " + std::to_string(taps_) + " taps are available");
    }
}

TapVector QdChannel::snapshot(Rng &rng) const
{
    TapVector taps = TapVector::Zero(taps_);
    for (const Cluster &c : clusters_)
    {
        auto rays = draw_rays(config_, rng);
        accumulate_cluster(taps, c, rays, sample_rate_);
    }
    return taps;
}

TapVector qd_snapshot(const QdConfig &config, const RadarParams &params, Rng &rng)
{
    return QdChannel(config, params).snapshot(rng);
}

double antenna_constant(const RadarParams &params)
{
    return std::sqrt(params.tx_power * std::pow(10.0, params.antenna_gain_db / 10.0)) * params.wavelength() / (4.0 * pi);
}

TapVector primitive_channel(const PrimitiveTrack &track, int frame_index, const RadarParams &params,
                            std::span<const double> phases)
{
    if (frame_index < 0 || frame_index >= track.frame_count())
        throw RangeError("frame index out of range");
    if (static_cast<int>(phases.size()) != track.primitive_count())
        throw RangeError("one phase per primitive is required");

    const double scale = antenna_constant(params) / std::sqrt(4.0 * pi);
    const double k_wave = 2.0 * pi * params.carrier_frequency / speed_of_light;
    TapVector u = TapVector::Zero(params.taps);
    for (int b = 0; b < track.primitive_count(); ++b)
    {
        const double d = track.distances(b, frame_index);
        const double g = track.gains(b, frame_index);
        long k = std::lround(2.0 * d * params.sample_rate / speed_of_light);
        if (k >= params.taps)
            throw BoundsError("primitive " + std::to_string(b) + " at " + std::to_string(d) +
                              " m is outside the unambiguous range");
        u[k] += std::polar(scale * std::sqrt(g) / (d * d), -k_wave * 2.0 * d + phases[b]);
    }
    return u;
}

std::vector<double> draw_primitive_phases(int count, Rng &rng)
{
    std::vector<double> phi(static_cast<std::size_t>(count));
    for (double &p : phi)
        p = uniform_phase(rng);
    return phi;
}

EvolutionState::EvolutionState(double rho_, std::uint64_t seed) : rho(rho_), rng(seed)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw RangeError("channel evolution rate must lie in [0, 1]");
}

const TapVector &evolve_interference(EvolutionState &state, const TapVector &fresh)
{
    if (!state.started)
    {
        state.current = fresh;
        state.started = true;
        return state.current;
    }
    if (fresh.size() != state.current.size())
        throw RangeError("interference snapshot length differs from the evolving state");
    state.current = state.rho * state.current + (1.0 - state.rho) * fresh;
    return state.current;
}

TapVector compose(const TapVector &u, const TapVector &v)
{
    if (u.size() != v.size())
        throw RangeError("useful and interference channels have different tap counts");
    return u + v;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

Eigen::VectorXcd apply_channel(const SampledWaveform &s, const TapVector &h,
                               std::optional<double> noise_power_dbm, Rng &rng)
{
    const Eigen::Index L = s.samples.size();
    if (h.size() > L)
        throw RangeError("channel is longer than the frame");
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(L);
    for (Eigen::Index k = 0; k < h.size(); ++k)
    {
        if (h[k] == cplx(0.0, 0.0))
            continue;
        r.segment(k, L - k) += h[k] * s.samples.head(L - k);
    }
    if (noise_power_dbm)
    {
        const double p = dbm_to_watts(*noise_power_dbm);
        for (Eigen::Index n = 0; n < L; ++n)
            r[n] += complex_gaussian(p, rng);
    }
    return r;
}

} // namespace wisim
