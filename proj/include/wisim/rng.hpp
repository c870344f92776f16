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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace wisim {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// 64-bit FNV-1a; used for stream tags and content hashes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

// Splittable seed derivation: a pure function of (base, stream tag, index).
// Every random stream in the simulator is seeded this way, so results never
// depend on evaluation order or worker count.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t base, std::string_view stream, std::uint64_t index = 0)
{
    return Rng(derive_seed(base, stream, index));
}

// Uniform phase on [-pi, pi).
double uniform_phase(Rng &rng);

// Rayleigh variate with scale sigma (mean sigma*sqrt(pi/2)).
double rayleigh(double sigma, Rng &rng);

// Circularly-symmetric complex Gaussian with E|z|^2 = power.
std::complex<double> complex_gaussian(double power, Rng &rng);

} // namespace wisim
