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

#include "wisim/kinematics.hpp"
#include "wisim/rng.hpp"
#include "wisim/waveform.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace wisim {

// Delay-domain impulse response at sample period 1/f_s.
using TapVector = Eigen::VectorXcd;

// Room faces in image-method order.
enum class Face : int
{
    x_min = 0,
    x_max,
    y_min,
    y_max,
    z_min,
    z_max
};

struct QdConfig
{
    Room room;
    Vec3 radar_position{1.0, 1.5, 1.0};
    std::array<double, 6> reflection_loss{0.1, 0.1, 0.1, 0.1, 0.1, 0.1}; // H per face, linear power
    double ray_rate = 2e8;      // intra-cluster Poisson arrivals, rays/s
    double ray_decay = 10e-9;   // intra-cluster power decay constant, s
    double ray_window = 50e-9;  // post-cursor window after the cluster delay, s
    int max_rays = 16;          // rays per cluster cap (M)
    double reference_length = 0.0; // D_0, m
    int max_order = 2;          // image-method reflection order, 1 or 2
    bool redraw_rays = true;    // false freezes the whole snapshot for the scenario

    void validate() const;
};

// Specular cluster from the image method. `delay` is the full path length over c.
struct Cluster
{
    double delay = 0.0;
    double amplitude = 0.0; // sqrt(prod H) * lambda / (4 pi (D_0 + delay c))
    std::vector<Face> faces;
};

struct Ray
{
    double offset = 0.0; // delay after the cluster delay, s
    double amplitude = 0.0;
    double phase = 0.0;
};

// First- and second-order specular paths for a monostatic radar in a box room,
// pruned to those whose reflection points lie on the faces.
std::vector<Cluster> image_clusters(const QdConfig &config, double wavelength);

// One cluster's rays: a main ray at zero offset followed by Poisson arrivals inside
// `ray_window`, capped at `max_rays` in total. Amplitudes are Rayleigh with
// E[a^2] = exp(-offset / ray_decay); phases uniform.
std::vector<Ray> draw_rays(const QdConfig &config, Rng &rng);

// Add a cluster's rays to `taps` at round((delay + offset) * f_s).
void accumulate_cluster(TapVector &taps, const Cluster &cluster, std::span<const Ray> rays, double sample_rate);

// Quasi-deterministic interference snapshot: frozen image-method geometry dressed
// with random rays.
class QdChannel
{
public:
    // Throws BoundsError when the cluster delays plus ray window exceed the tap capacity.
    QdChannel(const QdConfig &config, const RadarParams &params);

    TapVector snapshot(Rng &rng) const;

    const std::vector<Cluster> &clusters() const { return clusters_; }
    int taps() const { return taps_; }

private:
    QdConfig config_;
    std::vector<Cluster> clusters_;
    double sample_rate_;
    int taps_;
};

// Convenience form building the geometry on every call.
TapVector qd_snapshot(const QdConfig &config, const RadarParams &params, Rng &rng);

// A of the primitive channel: sqrt(P 10^(P_t/10)) * lambda / (4 pi).
double antenna_constant(const RadarParams &params);

// Useful channel u_i: each primitive contributes (A / sqrt(4 pi)) sqrt(G_b) / D_b^2
// with phase exp(-j 4 pi f_c D_b / c + j phi_b) at tap round(2 D_b f_s / c).
// The phase uses the exact distance; only the delay is quantized.
TapVector primitive_channel(const PrimitiveTrack &track, int frame_index, const RadarParams &params,
                            std::span<const double> phases);

// Draw fixed per-primitive phases phi_b ~ U[-pi, pi).
std::vector<double> draw_primitive_phases(int count, Rng &rng);

// AR(1) evolution state of the interference channel.
struct EvolutionState
{
    double rho = 1.0;
    TapVector current;
    bool started = false;
    Rng rng; // stream for fresh snapshots

    explicit EvolutionState(double rho_ = 1.0, std::uint64_t seed = 0);
};

// First call returns `fresh`; later calls return rho * v_prev + (1 - rho) * fresh.
const TapVector &evolve_interference(EvolutionState &state, const TapVector &fresh);

// h = u + v.
TapVector compose(const TapVector &u, const TapVector &v);

// r = (h * s) truncated to L samples, plus circular complex AWGN of
// 10^((dBm - 30) / 10) W per sample when `noise_power_dbm` is set.
Eigen::VectorXcd apply_channel(const SampledWaveform &s, const TapVector &h,
                               std::optional<double> noise_power_dbm, Rng &rng);

double dbm_to_watts(double dbm);

} // namespace wisim
