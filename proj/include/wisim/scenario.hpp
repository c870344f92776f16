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

#include "wisim/channel.hpp"
#include "wisim/dsp.hpp"
#include "wisim/kinematics.hpp"
#include "wisim/waveform.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace wisim {

inline constexpr int scenario_schema_version = 1;

// Full input to one simulation. Defaults reproduce the conference-room
// walking-adult baseline: 4.5 x 3 x 3 m room, radar at (1, 1.5, 1), 3.5 GHz,
// 50 MHz sweep over 1 us, 1 ms frames, 100 MHz sampling, -100 dBm noise.
struct Scenario
{
    std::string id = "walk";
    Room room;
    Vec3 radar_position{1.0, 1.5, 1.0};
    RadarParams radar;
    SubjectSpec subject;
    QdConfig qd; // room and radar position come from the fields above
    double rho = 0.9998;
    bool sensing_uncertainty = true; // off: rho = 1 and a single frozen snapshot
    DspConfig dsp;
    std::uint64_t seed = 1;

    QdConfig qd_config() const;
    double effective_rho() const { return sensing_uncertainty ? rho : 1.0; }
    void validate() const;
};

Scenario default_scenario();

// Strict parsing: unknown keys, bad types and a wrong schema_version throw ConfigError.
// Absent keys keep their defaults.
Scenario scenario_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Scenario &s);

Scenario load_scenario(const std::string &path);

// Reject keys outside `allowed`; `where` names the JSON object in the message.
void check_keys(const nlohmann::json &j, std::initializer_list<const char *> allowed, const std::string &where);

} // namespace wisim
