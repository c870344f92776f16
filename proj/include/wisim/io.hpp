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
#include "wisim/waveform.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace wisim {

// Sidecar of an `.iq` file (`<file>.iq.json`). For tap dumps L holds L_h.
struct IqHeader
{
    int L = 0;
    int C = 0;
    double f_s = 0.0;
    double f_c = 0.0;
    double T = 0.0;
    double T0 = 0.0;
    std::optional<double> bandwidth; // B_W, needed to rebuild the reference chirp
    std::string scenario_id;
    std::uint64_t seed = 0;
};

struct IqFile
{
    IQMatrix samples;
    IqHeader header;
};

// Raw little-endian float32 (re, im) pairs, column-major, plus the JSON sidecar.
void write_iq(const std::string &path, const IQMatrix &X, const IqHeader &header);
IqFile read_iq(const std::string &path);

// Binary PGM (P5, maxval 255). The top image row is the highest frequency bin.
std::string encode_pgm(const GrayImage &img);
void write_pgm(const std::string &path, const GrayImage &img);
GrayImage read_pgm(const std::string &path);

// CSV `bin_index,probability`.
void write_pmf_csv(const std::string &path, const Pmf &pmf);
Pmf read_pmf_csv(const std::string &path);

// CSV grid: header row of window-center times, one row per frequency bin.
void write_spectrogram_csv(const std::string &path, const Spectrogram &S);

std::string read_file(const std::string &path);
void write_file_atomic(const std::string &path, const std::string &bytes);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

} // namespace wisim
