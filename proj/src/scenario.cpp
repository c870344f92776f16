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

#include "wisim/scenario.hpp"
#include "wisim/errors.hpp"
#include "wisim/io.hpp"

#include <algorithm>

namespace wisim {

using nlohmann::json;

namespace {

Vec3 vec3_from(const json &j, const std::string &where)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(where + " must be an array of 3 numbers");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json vec3_to(const Vec3 &v) { return json::array({v.x(), v.y(), v.z()}); }

template <typename T>
void read_opt(const json &j, const char *key, T &out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

void read_radar(const json &j, RadarParams &r)
{
    check_keys(j, {"carrier_frequency", "bandwidth", "sweep_time", "frame_period", "sample_rate", "frames",
                   "tx_power", "antenna_gain_db", "noise_power_dbm", "taps"},
               "radar");
    read_opt(j, "carrier_frequency", r.carrier_frequency);
    read_opt(j, "bandwidth", r.bandwidth);
    read_opt(j, "sweep_time", r.sweep_time);
    read_opt(j, "frame_period", r.frame_period);
    read_opt(j, "sample_rate", r.sample_rate);
    read_opt(j, "frames", r.frames);
    read_opt(j, "tx_power", r.tx_power);
    read_opt(j, "antenna_gain_db", r.antenna_gain_db);
    read_opt(j, "taps", r.taps);
    if (j.contains("noise_power_dbm"))
    {
        const json &n = j.at("noise_power_dbm");
        r.noise_power_dbm = n.is_null() ? std::nullopt : std::optional<double>(n.get<double>());
    }
}

void read_gait(const json &j, GaitParams &g)
{
    check_keys(j, {"stride_factor", "speed_clip_min", "speed_clip_max", "hip_swing", "knee_flex", "arm_swing",
                   "elbow_flex", "elbow_bias", "bob_fraction", "sway", "sway_amplitude", "sway_frequency"},
               "subject.gait");
    read_opt(j, "stride_factor", g.stride_factor);
    read_opt(j, "speed_clip_min", g.speed_clip_min);
    read_opt(j, "speed_clip_max", g.speed_clip_max);
    read_opt(j, "hip_swing", g.hip_swing);
    read_opt(j, "knee_flex", g.knee_flex);
    read_opt(j, "arm_swing", g.arm_swing);
    read_opt(j, "elbow_flex", g.elbow_flex);
    read_opt(j, "elbow_bias", g.elbow_bias);
    read_opt(j, "bob_fraction", g.bob_fraction);
    read_opt(j, "sway", g.sway);
    read_opt(j, "sway_amplitude", g.sway_amplitude);
    read_opt(j, "sway_frequency", g.sway_frequency);
}

json gait_to(const GaitParams &g)
{
    return {{"stride_factor", g.stride_factor}, {"speed_clip_min", g.speed_clip_min},
            {"speed_clip_max", g.speed_clip_max}, {"hip_swing", g.hip_swing}, {"knee_flex", g.knee_flex},
            {"arm_swing", g.arm_swing}, {"elbow_flex", g.elbow_flex}, {"elbow_bias", g.elbow_bias},
            {"bob_fraction", g.bob_fraction}, {"sway", g.sway}, {"sway_amplitude", g.sway_amplitude},
            {"sway_frequency", g.sway_frequency}};
}

void read_subject(const json &j, SubjectSpec &s, bool &duration_given)
{
    check_keys(j, {"height", "label", "speed", "start", "direction", "duration", "gait"}, "subject");
    read_opt(j, "height", s.height);
    read_opt(j, "label", s.class_label);
    read_opt(j, "speed", s.speed);
    if (j.contains("start"))
        s.trajectory.start = vec3_from(j.at("start"), "subject.start");
    if (j.contains("direction"))
        s.trajectory.direction = vec3_from(j.at("direction"), "subject.direction");
    duration_given = j.contains("duration");
    read_opt(j, "duration", s.trajectory.duration);
    if (j.contains("gait"))
        read_gait(j.at("gait"), s.gait);
}

void read_qd(const json &j, QdConfig &q)
{
    check_keys(j, {"reflection_loss_db", "ray_rate", "ray_decay", "ray_window", "max_rays", "reference_length",
                   "max_order", "redraw_rays"},
               "qd");
    if (j.contains("reflection_loss_db"))
    {
        const json &l = j.at("reflection_loss_db");
        if (l.is_number())
            q.reflection_loss.fill(std::pow(10.0, l.get<double>() / 10.0));
        else if (l.is_array() && l.size() == 6)
            for (int k = 0; k < 6; ++k)
                q.reflection_loss[k] = std::pow(10.0, l[k].get<double>() / 10.0);
        else
            throw ConfigError("qd.reflection_loss_db must be a number or an array of 6 numbers");
    }
    read_opt(j, "ray_rate", q.ray_rate);
    read_opt(j, "ray_decay", q.ray_decay);
    read_opt(j, "ray_window", q.ray_window);
    read_opt(j, "max_rays", q.max_rays);
    read_opt(j, "reference_length", q.reference_length);
    read_opt(j, "max_order", q.max_order);
    read_opt(j, "redraw_rays", q.redraw_rays);
}

void read_dsp(const json &j, DspConfig &d)
{
    check_keys(j, {"svd_rank_start", "window", "hop", "kaiser_beta", "dynamic_range_db", "pmf_bins"}, "dsp");
    read_opt(j, "svd_rank_start", d.svd_rank_start);
    read_opt(j, "window", d.window);
    read_opt(j, "hop", d.hop);
    read_opt(j, "kaiser_beta", d.kaiser_beta);
    read_opt(j, "dynamic_range_db", d.dynamic_range_db);
    read_opt(j, "pmf_bins", d.pmf_bins);
}

} // namespace

void check_keys(const json &j, std::initializer_list<const char *> allowed, const std::string &where)
{
    if (!j.is_object())
        throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *k) { return it.key() == k; }))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

QdConfig Scenario::qd_config() const
{
    QdConfig q = qd;
    q.room = room;
    q.radar_position = radar_position;
    return q;
}

void Scenario::validate() const
{
    if (id.empty() || id.find_first_of(",\n\r\"") != std::string::npos)
        throw ConfigError("scenario id must be non-empty and free of commas, quotes and newlines");
    room.validate();
    if (!room.contains(radar_position))
        throw ConfigError("radar position lies outside the room");
    radar.validate();
    subject.validate(room);
    qd_config().validate();
    dsp.validate();
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ConfigError("channel evolution rate rho must lie in [0, 1]");
    if (dsp.window > radar.frames)
        throw ConfigError("STFT window is longer than the frame count");
    if ((radar.frames - 1) * radar.frame_period > subject.trajectory.duration + 1e-9)
        throw ConfigError("frames extend beyond the trajectory duration");
}

Scenario default_scenario()
{
    return Scenario{};
}

Scenario scenario_from_json(const json &j)
{
    Scenario s;
    try
    {
        check_keys(j, {"schema_version", "scenario_id", "seed", "room", "radar_position", "radar", "subject", "qd",
                       "rho", "sensing_uncertainty", "dsp"},
                   "scenario");
        if (!j.contains("schema_version") || j.at("schema_version").get<int>() != scenario_schema_version)
            throw ConfigError("scenario schema_version must be " + std::to_string(scenario_schema_version));
        read_opt(j, "scenario_id", s.id);
        read_opt(j, "seed", s.seed);
        if (j.contains("room"))
            s.room.size = vec3_from(j.at("room"), "room");
        if (j.contains("radar_position"))
            s.radar_position = vec3_from(j.at("radar_position"), "radar_position");
        if (j.contains("radar"))
            read_radar(j.at("radar"), s.radar);
        bool duration_given = false;
        if (j.contains("subject"))
            read_subject(j.at("subject"), s.subject, duration_given);
        if (!duration_given)
            s.subject.trajectory.duration = s.radar.frames * s.radar.frame_period;
        if (j.contains("qd"))
            read_qd(j.at("qd"), s.qd);
        read_opt(j, "rho", s.rho);
        read_opt(j, "sensing_uncertainty", s.sensing_uncertainty);
        if (j.contains("dsp"))
            read_dsp(j.at("dsp"), s.dsp);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    s.validate();
    return s;
}

json to_json(const Scenario &s)
{
    json loss = json::array();
    for (double h : s.qd.reflection_loss)
        loss.push_back(10.0 * std::log10(h));
    json radar = {{"carrier_frequency", s.radar.carrier_frequency}, {"bandwidth", s.radar.bandwidth},
                  {"sweep_time", s.radar.sweep_time}, {"frame_period", s.radar.frame_period},
                  {"sample_rate", s.radar.sample_rate}, {"frames", s.radar.frames},
                  {"tx_power", s.radar.tx_power}, {"antenna_gain_db", s.radar.antenna_gain_db},
                  {"taps", s.radar.taps}};
    radar["noise_power_dbm"] = s.radar.noise_power_dbm ? json(*s.radar.noise_power_dbm) : json(nullptr);
    return {
        {"schema_version", scenario_schema_version},
        {"scenario_id", s.id},
        {"seed", s.seed},
        {"room", vec3_to(s.room.size)},
        {"radar_position", vec3_to(s.radar_position)},
        {"radar", radar},
        {"subject",
         {{"height", s.subject.height}, {"label", s.subject.class_label}, {"speed", s.subject.speed},
          {"start", vec3_to(s.subject.trajectory.start)}, {"direction", vec3_to(s.subject.trajectory.direction)},
          {"duration", s.subject.trajectory.duration}, {"gait", gait_to(s.subject.gait)}}},
        {"qd",
         {{"reflection_loss_db", loss}, {"ray_rate", s.qd.ray_rate}, {"ray_decay", s.qd.ray_decay},
          {"ray_window", s.qd.ray_window}, {"max_rays", s.qd.max_rays},
          {"reference_length", s.qd.reference_length}, {"max_order", s.qd.max_order},
          {"redraw_rays", s.qd.redraw_rays}}},
        {"rho", s.rho},
        {"sensing_uncertainty", s.sensing_uncertainty},
        {"dsp",
         {{"svd_rank_start", s.dsp.svd_rank_start}, {"window", s.dsp.window}, {"hop", s.dsp.hop},
          {"kaiser_beta", s.dsp.kaiser_beta}, {"dynamic_range_db", s.dsp.dynamic_range_db},
          {"pmf_bins", s.dsp.pmf_bins}}},
    };
}

Scenario load_scenario(const std::string &path)
{
    json j;
    try
    {
        j = json::parse(read_file(path));
    }
    catch (const json::parse_error &e)
    {
        throw ParseError("cannot parse scenario " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace wisim
