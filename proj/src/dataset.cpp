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

#include "wisim/dataset.hpp"
#include "wisim/errors.hpp"
#include "wisim/io.hpp"
#include "wisim/rng.hpp"
#include "wisim/simulate.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace wisim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char *manifest_header = "image_path,label,class_name,scenario_hash,seed";

Vec3 vec3_from(const json &j, const std::string &where)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(where + " must be an array of 3 numbers");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

std::string entry_line(const ManifestEntry &e)
{
    return e.image_path + "," + std::to_string(e.label) + "," + e.class_name + "," + e.scenario_hash + "," +
           std::to_string(e.seed);
}

void append_line(const std::string &path, const std::string &line)
{
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw IoError("cannot append to " + path);
    out << line << '\n';
}

} // namespace

void DatasetConfig::validate() const
{
    base.validate();
    if (classes.empty())
        throw ConfigError("dataset needs at least one class");
    if (samples_per_class < 1)
        throw ConfigError("samples_per_class must be at least 1");
    for (std::size_t c = 0; c < classes.size(); ++c)
    {
        const ClassSpec &k = classes[c];
        if (k.name.empty() || k.name.find_first_of(",/\\\n ") != std::string::npos)
            throw ConfigError("class names must be non-empty and free of commas, slashes and spaces");
        if (k.label != static_cast<int>(c) + 1)
            throw ConfigError("class labels must be 1..M in listing order");
        if (k.heights.empty())
            throw ConfigError("class '" + k.name + "' needs at least one height");
        if (!(k.speed >= 0.0))
            throw ConfigError("class '" + k.name + "' has a negative speed");
    }
    if (!(jitter.heading_deg >= 0.0) || !(jitter.start_min.array() <= jitter.start_max.array()).all())
        throw ConfigError("invalid jitter ranges");
}

DatasetConfig default_dataset_config()
{
    DatasetConfig cfg;
    cfg.base.radar.frames = 1000;
    cfg.base.subject.trajectory.duration = cfg.base.radar.frames * cfg.base.radar.frame_period;
    cfg.base.id = "dataset";
    cfg.classes = {
        {"standing", 1, {1.0, 1.75}, 0.0, false},
        {"child_walking", 2, {1.0}, 1.0, false},
        {"child_pacing", 3, {1.0}, 0.5, false},
        {"adult_walking", 4, {1.75}, 1.0, false},
        {"adult_pacing", 5, {1.75}, 0.5, false},
    };
    return cfg;
}

DatasetConfig dataset_config_from_json(const json &j)
{
    DatasetConfig cfg = default_dataset_config();
    try
    {
        check_keys(j, {"schema_version", "base", "samples_per_class", "classes", "jitter"}, "dataset");
        if (!j.contains("schema_version") || j.at("schema_version").get<int>() != scenario_schema_version)
            throw ConfigError("dataset schema_version must be " + std::to_string(scenario_schema_version));
        if (j.contains("base"))
        {
            json base = j.at("base");
            if (!base.is_object())
                throw ConfigError("dataset.base must be an object");
            if (!base.contains("schema_version"))
                base["schema_version"] = scenario_schema_version;
            if (!base.contains("radar") || !base["radar"].contains("frames"))
                base["radar"]["frames"] = cfg.base.radar.frames;
            cfg.base = scenario_from_json(base);
        }
        if (j.contains("samples_per_class"))
            cfg.samples_per_class = j.at("samples_per_class").get<int>();
        if (j.contains("classes"))
        {
            cfg.classes.clear();
            for (const json &c : j.at("classes"))
            {
                check_keys(c, {"name", "label", "heights", "speed", "sway"}, "dataset.classes[]");
                ClassSpec k;
                k.name = c.at("name").get<std::string>();
                k.label = c.at("label").get<int>();
                k.heights = c.at("heights").get<std::vector<double>>();
                k.speed = c.at("speed").get<double>();
                if (c.contains("sway"))
                    k.sway = c.at("sway").get<bool>();
                cfg.classes.push_back(std::move(k));
            }
        }
        if (j.contains("jitter"))
        {
            const json &t = j.at("jitter");
            check_keys(t, {"start_min", "start_max", "direction", "heading_deg"}, "dataset.jitter");
            if (t.contains("start_min"))
                cfg.jitter.start_min = vec3_from(t.at("start_min"), "jitter.start_min");
            if (t.contains("start_max"))
                cfg.jitter.start_max = vec3_from(t.at("start_max"), "jitter.start_max");
            if (t.contains("direction"))
                cfg.jitter.direction = vec3_from(t.at("direction"), "jitter.direction");
            if (t.contains("heading_deg"))
                cfg.jitter.heading_deg = t.at("heading_deg").get<double>();
        }
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("invalid dataset config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

DatasetConfig load_dataset_config(const std::string &path)
{
    json j;
    try
    {
        j = json::parse(read_file(path));
    }
    catch (const json::parse_error &e)
    {
        throw ParseError("cannot parse dataset config " + path + ": " + e.what());
    }
    return dataset_config_from_json(j);
}

std::string content_hash(const std::string &bytes)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::uint64_t sample_seed(std::uint64_t base_seed, int entry_index)
{
    return derive_seed(base_seed, "sample", static_cast<std::uint64_t>(entry_index));
}

Scenario sample_scenario(const DatasetConfig &cfg, int entry_index, std::uint64_t base_seed)
{
    const int total = static_cast<int>(cfg.classes.size()) * cfg.samples_per_class;
    if (entry_index < 0 || entry_index >= total)
        throw RangeError("dataset entry index out of range");
    const int class_index = entry_index / cfg.samples_per_class;
    const int within = entry_index % cfg.samples_per_class;
    const ClassSpec &k = cfg.classes[static_cast<std::size_t>(class_index)];

    Scenario s = cfg.base;
    s.seed = sample_seed(base_seed, entry_index);
    char id[64];
    std::snprintf(id, sizeof id, "%s-%05d", k.name.c_str(), entry_index);
    s.id = id;

    Rng rng = make_rng(s.seed, "jitter");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec3 start;
    for (int a = 0; a < 3; ++a)
        start[a] = cfg.jitter.start_min[a] + unit(rng) * (cfg.jitter.start_max[a] - cfg.jitter.start_min[a]);
    const double heading = (2.0 * unit(rng) - 1.0) * cfg.jitter.heading_deg * std::numbers::pi / 180.0;
    Vec3 d = cfg.jitter.direction;
    d.z() = 0.0;
    d.normalize();
    Vec3 dir(d.x() * std::cos(heading) - d.y() * std::sin(heading), d.x() * std::sin(heading) + d.y() * std::cos(heading),
             0.0);

    s.subject.height = k.heights[static_cast<std::size_t>(within) % k.heights.size()];
    s.subject.class_label = k.label;
    s.subject.speed = k.speed;
    s.subject.gait.sway = k.sway;
    s.subject.trajectory.start = start;
    s.subject.trajectory.direction = dir;
    s.subject.trajectory.duration = s.radar.frames * s.radar.frame_period;
    return s;
}

std::string sample_image_path(const DatasetConfig &cfg, int entry_index)
{
    const int class_index = entry_index / cfg.samples_per_class;
    char name[64];
    std::snprintf(name, sizeof name, "%05d.pgm", entry_index);
    return cfg.classes[static_cast<std::size_t>(class_index)].name + "/" + name;
}

void write_manifest_csv(const std::string &path, const std::vector<ManifestEntry> &entries)
{
    std::string out = std::string(manifest_header) + "\n";
    for (const auto &e : entries)
        out += entry_line(e) + "\n";
    write_file_atomic(path, out);
}

std::vector<ManifestEntry> read_manifest_csv(const std::string &path)
{
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t line_no = 0;
    std::vector<ManifestEntry> out;
    bool header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header)
        {
            if (line != manifest_header)
                throw ParseError("manifest " + path + " lacks the header '" + manifest_header + "'", line_no);
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 5)
            throw ParseError("manifest row must have 5 fields", line_no);
        try
        {
            std::size_t used = 0;
            ManifestEntry e{f[0], std::stoi(f[1]), f[2], f[3], std::stoull(f[4], &used)};
            if (used != f[4].size())
                throw std::invalid_argument("seed");
            out.push_back(std::move(e));
        }
        catch (const std::logic_error &)
        {
            throw ParseError("malformed manifest row in " + path, line_no);
        }
    }
    return out;
}

DatasetReport generate_dataset(const DatasetConfig &cfg, std::uint64_t base_seed, const std::string &out_dir,
                               int workers)
{
    cfg.validate();
    const int total = static_cast<int>(cfg.classes.size()) * cfg.samples_per_class;
    const fs::path root(out_dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec)
        throw IoError("cannot create dataset directory " + out_dir + ": " + ec.message());
    const std::string manifest_path = (root / "manifest.csv").string();

    // Entries from a previous run that still verify against their images.
    std::map<std::string, ManifestEntry> previous;
    if (fs::exists(manifest_path))
        for (auto &e : read_manifest_csv(manifest_path))
            previous[e.image_path] = e;

    std::vector<std::optional<ManifestEntry>> done(static_cast<std::size_t>(total));
    std::vector<std::string> errors(static_cast<std::size_t>(total));
    DatasetReport report;

    for (int e = 0; e < total; ++e)
    {
        auto it = previous.find(sample_image_path(cfg, e));
        if (it == previous.end() || it->second.seed != sample_seed(base_seed, e))
            continue;
        const fs::path img = root / it->second.image_path;
        std::error_code exists_ec;
        if (!fs::exists(img, exists_ec))
            continue;
        try
        {
            if (content_hash(read_file(img.string())) == it->second.scenario_hash)
                done[static_cast<std::size_t>(e)] = it->second;
        }
        catch (const Error &)
        {
        }
    }

    std::vector<ManifestEntry> kept;
    for (const auto &d : done)
        if (d)
            kept.push_back(*d);
    report.skipped = static_cast<int>(kept.size());
    write_manifest_csv(manifest_path, kept);

    std::mutex writer;
    std::atomic<int> next{0};
    std::atomic<int> generated{0};
    auto work = [&] {
        for (int e = next++; e < total; e = next++)
        {
            if (done[static_cast<std::size_t>(e)])
                continue;
            try
            {
                const Scenario s = sample_scenario(cfg, e, base_seed);
                const SampleResult r = simulate_sample(s);
                const std::string bytes = encode_pgm(r.image);
                const std::string rel = sample_image_path(cfg, e);
                write_file_atomic((root / rel).string(), bytes);
                const ClassSpec &k = cfg.classes[static_cast<std::size_t>(e / cfg.samples_per_class)];
                ManifestEntry entry{rel, k.label, k.name, content_hash(bytes), s.seed};
                std::lock_guard lock(writer);
                append_line(manifest_path, entry_line(entry));
                done[static_cast<std::size_t>(e)] = std::move(entry);
                ++generated;
            }
            catch (const std::exception &ex)
            {
                std::lock_guard lock(writer);
                errors[static_cast<std::size_t>(e)] = "entry " + std::to_string(e) + ": " + ex.what();
            }
        }
    };
    const int n_workers = std::max(1, workers);
    if (n_workers == 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back(work);
    }

    for (int e = 0; e < total; ++e)
    {
        if (done[static_cast<std::size_t>(e)])
            report.manifest.entries.push_back(*done[static_cast<std::size_t>(e)]);
        else if (!errors[static_cast<std::size_t>(e)].empty())
            report.failures.push_back(errors[static_cast<std::size_t>(e)]);
    }
    for (const auto &k : cfg.classes)
        report.manifest.class_names.push_back(k.name);
    report.generated = generated;

    write_manifest_csv(manifest_path, report.manifest.entries);
    json meta = {{"generator_version", report.manifest.generator_version},
                 {"class_names", report.manifest.class_names},
                 {"samples_per_class", cfg.samples_per_class},
                 {"base_seed", base_seed},
                 {"base_scenario", to_json(cfg.base)}};
    write_file_atomic((root / "manifest.json").string(), meta.dump(2) + "\n");
    return report;
}

} // namespace wisim
