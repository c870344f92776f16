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

#include "wisim/dsp.hpp"
#include "wisim/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <string>

namespace wisim {

void DspConfig::validate() const
{
    if (svd_rank_start < 1)
        throw ConfigError("SVD threshold r must be at least 1");
    if (window < 2)
        throw ConfigError("STFT window must have at least 2 samples");
    if (hop < 1)
        throw ConfigError("STFT hop must be at least 1");
    if (!(kaiser_beta >= 0.0))
        throw ConfigError("Kaiser beta must be non-negative");
    if (!(dynamic_range_db > 0.0))
        throw ConfigError("dynamic range must be positive");
    if (pmf_bins < 1 || 256 % pmf_bins != 0)
        throw ConfigError("pmf bin count must divide 256");
}

IQMatrix dechirp_conj(const IQMatrix &X, const SampledWaveform &reference)
{
    if (X.rows() != reference.samples.size())
        throw RangeError("reference length " + std::to_string(reference.samples.size()) +
                         " does not match frame length " + std::to_string(X.rows()));
    IQMatrix out(X.rows(), X.cols());
    const Eigen::VectorXcd ref = reference.samples.conjugate();
    for (Eigen::Index i = 0; i < X.cols(); ++i)
        out.col(i) = X.col(i).cwiseProduct(ref).conjugate();
    return out;
}

IQMatrix svd_denoise(const IQMatrix &X, int r)
{
    if (r < 1)
        throw RangeError("SVD threshold r must be at least 1");
    const Eigen::Index n = std::min(X.rows(), X.cols());
    if (r > n + 1)
        throw RangeError("SVD threshold r exceeds rank + 1");
    if (r == 1)
        return X;
    if (r == n + 1)
        return IQMatrix::Zero(X.rows(), X.cols());

    // Dropping the leading r-1 terms of the SVD is the projection of X off its
    // leading singular subspace, so only that subspace is needed. It comes from
    // the Hermitian eigenproblem of the smaller Gram matrix, which on a 100 x C
    // frame matrix is several times cheaper than a full decomposition.
    const Eigen::Index drop = r - 1;
    if (X.rows() <= X.cols())
    {
        const IQMatrix gram = X * X.adjoint();
        Eigen::SelfAdjointEigenSolver<IQMatrix> eig(gram);
        const IQMatrix B = eig.eigenvectors().rightCols(drop);
        return X - B * (B.adjoint() * X);
    }
    const IQMatrix gram = X.adjoint() * X;
    Eigen::SelfAdjointEigenSolver<IQMatrix> eig(gram);
    const IQMatrix Cv = eig.eigenvectors().rightCols(drop);
    return X - (X * Cv) * Cv.adjoint();
}

Eigen::VectorXcd slow_time(const IQMatrix &Y)
{
    return Y.colwise().sum().transpose();
}

std::vector<double> kaiser_window(int W, double beta)
{
    std::vector<double> w(static_cast<std::size_t>(W));
    const double norm = std::cyl_bessel_i(0.0, beta);
    for (int n = 0; n < W; ++n)
    {
        double x = W == 1 ? 0.0 : 2.0 * n / (W - 1) - 1.0;
        w[n] = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - x * x))) / norm;
    }
    return w;
}

Spectrogram stft_spectrogram(const Eigen::VectorXcd &y, int W, int hop, double kaiser_beta, double period)
{
    if (W < 1 || W > y.size())
        throw RangeError("STFT window of " + std::to_string(W) + " samples exceeds the sequence length " +
                         std::to_string(y.size()));
    if (hop < 1)
        throw RangeError("STFT hop must be at least 1");
    if (!(period > 0.0))
        throw RangeError("slow-time period must be positive");

    const int steps = static_cast<int>((y.size() - W) / hop) + 1;
    const std::vector<double> w = kaiser_window(W, kaiser_beta);
    const int half = W / 2;

    Spectrogram S;
    S.window = W;
    S.hop = hop;
    S.magnitudes_db.resize(W, steps);
    S.freq_axis.resize(static_cast<std::size_t>(W));
    for (int k = 0; k < W; ++k)
        S.freq_axis[k] = (k - half) / (W * period);
    S.time_axis.resize(static_cast<std::size_t>(steps));

    Eigen::FFT<double> fft;
    std::vector<cplx> in(static_cast<std::size_t>(W)), out;
    for (int l = 0; l < steps; ++l)
    {
        const Eigen::Index start = static_cast<Eigen::Index>(l) * hop;
        for (int n = 0; n < W; ++n)
            in[n] = y[start + n] * w[n];
        fft.fwd(out, in);
        for (int k = 0; k < W; ++k)
        {
            // fftshift: row k holds DFT bin (k - half) mod W
            const int src = (k - half + W) % W;
            S.magnitudes_db(k, l) = 20.0 * std::log10(std::abs(out[src]) + log_floor);
        }
        S.time_axis[l] = (start + 0.5 * (W - 1)) * period;
    }
    return S;
}

GrayImage to_grayscale(const Spectrogram &S, double dynamic_range_db)
{
    if (!(dynamic_range_db > 0.0))
        throw RangeError("dynamic range must be positive");
    GrayImage img;
    img.rows = S.bins();
    img.cols = S.steps();
    img.dynamic_range_db = dynamic_range_db;
    img.pixels.resize(static_cast<std::size_t>(img.rows) * img.cols);

    const double top = S.magnitudes_db.maxCoeff();
    const double bottom = S.magnitudes_db.minCoeff();
    for (int r = 0; r < img.rows; ++r)
    {
        for (int c = 0; c < img.cols; ++c)
        {
            std::uint8_t px = 255;
            if (top != bottom)
            {
                double frac = (S.magnitudes_db(r, c) - top) / dynamic_range_db + 1.0;
                double v = std::floor(255.0 * frac + 0.5);
                px = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
            }
            img.pixels[static_cast<std::size_t>(r) * img.cols + c] = px;
        }
    }
    return img;
}

Pmf gray_pmf(const GrayImage &img, int E)
{
    if (E < 1 || 256 % E != 0)
        throw RangeError("pmf bin count must divide 256");
    if (img.pixels.empty())
        throw RangeError("cannot build a pmf from an empty image");
    const int width = 256 / E;
    std::vector<std::size_t> counts(static_cast<std::size_t>(E), 0);
    for (std::uint8_t p : img.pixels)
        ++counts[p / width];
    Pmf pmf;
    pmf.probabilities.resize(static_cast<std::size_t>(E));
    const double total = static_cast<double>(img.pixels.size());
    for (int j = 0; j < E; ++j)
        pmf.probabilities[j] = static_cast<double>(counts[j]) / total;
    return pmf;
}

Pmf average_pmf(const std::vector<Pmf> &pmfs)
{
    if (pmfs.empty())
        throw RangeError("no pmfs to average");
    Pmf out;
    out.probabilities.assign(pmfs.front().probabilities.size(), 0.0);
    for (const Pmf &p : pmfs)
    {
        if (p.probabilities.size() != out.probabilities.size())
            throw RangeError("pmfs have different bin counts");
        for (std::size_t j = 0; j < p.probabilities.size(); ++j)
            out.probabilities[j] += p.probabilities[j];
    }
    for (double &v : out.probabilities)
        v /= static_cast<double>(pmfs.size());
    return out;
}

Spectrogram process_frames(const IQMatrix &X, const SampledWaveform &reference, const DspConfig &dsp, double period)
{
    dsp.validate();
    IQMatrix mixed = dechirp_conj(X, reference);
    IQMatrix Y = svd_denoise(mixed, dsp.svd_rank_start);
    return stft_spectrogram(slow_time(Y), dsp.window, dsp.hop, dsp.kaiser_beta, period);
}

} // namespace wisim
