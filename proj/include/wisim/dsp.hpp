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

#include "wisim/waveform.hpp"

#include <cstdint>
#include <vector>

namespace wisim {

// Time-frequency magnitudes in dB, rows ascending in frequency (DC at row W/2).
struct Spectrogram
{
    Eigen::MatrixXd magnitudes_db; // W x steps
    std::vector<double> freq_axis; // Hz
    std::vector<double> time_axis; // s, window centers
    int window = 0;
    int hop = 0;

    int bins() const { return static_cast<int>(magnitudes_db.rows()); }
    int steps() const { return static_cast<int>(magnitudes_db.cols()); }
    int zero_doppler_bin() const { return window / 2; }
};

// 8-bit quantized spectrogram, same grid as the source (row = frequency bin).
struct GrayImage
{
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels; // row-major
    double dynamic_range_db = 60.0;

    std::uint8_t at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

struct Pmf
{
    std::vector<double> probabilities;

    int bins() const { return static_cast<int>(probabilities.size()); }
};

struct DspConfig
{
    int svd_rank_start = 2; // r: components 1..r-1 are removed
    int window = 128;
    int hop = 1;
    double kaiser_beta = 0.5;
    double dynamic_range_db = 60.0;
    int pmf_bins = 256;

    void validate() const;
};

inline constexpr double log_floor = 1e-12;

// conj(X .* conj(s)) column by column.
IQMatrix dechirp_conj(const IQMatrix &X, const SampledWaveform &reference);

// Remove the r-1 strongest singular components: Y = sum_{j >= r} a_j b_j c_j^H.
IQMatrix svd_denoise(const IQMatrix &X, int r);

// y[i] = sum over fast time of column i.
Eigen::VectorXcd slow_time(const IQMatrix &Y);

// Symmetric Kaiser window of length W.
std::vector<double> kaiser_window(int W, double beta);

// Sliding W-point DFT with a Kaiser window, 20 log10(|z| + 1e-12), frequency
// axis centered over +-1/(2 period).
Spectrogram stft_spectrogram(const Eigen::VectorXcd &y, int W, int hop, double kaiser_beta, double period);

// Per-image max -> 255, max - dynamic range -> 0, linear in dB, rounded half up.
// A constant spectrogram maps to all 255.
GrayImage to_grayscale(const Spectrogram &S, double dynamic_range_db = 60.0);

// Histogram of pixel values into E equal-width bins (E divides 256), normalized.
Pmf gray_pmf(const GrayImage &img, int E = 256);

// Element-wise mean of pmfs with equal bin counts.
Pmf average_pmf(const std::vector<Pmf> &pmfs);

// Dechirp -> SVD denoise -> slow-time collapse -> STFT.
Spectrogram process_frames(const IQMatrix &X, const SampledWaveform &reference, const DspConfig &dsp, double period);

} // namespace wisim
