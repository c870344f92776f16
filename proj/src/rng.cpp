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

#include "wisim/rng.hpp"

#include <cmath>
#include <numbers>

namespace wisim {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h)
{
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index)
{
    std::uint64_t s = splitmix64(base ^ fnv1a64(stream));
    return splitmix64(s + splitmix64(index));
}

double uniform_phase(Rng &rng)
{
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    return u(rng);
}

double rayleigh(double sigma, Rng &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = 1.0 - u(rng); // (0, 1]
    return sigma * std::sqrt(-2.0 * std::log(x));
}

std::complex<double> complex_gaussian(double power, Rng &rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5 * power));
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

} // namespace wisim
