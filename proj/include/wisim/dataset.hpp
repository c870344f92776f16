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

#include "wisim/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wisim {

inline constexpr const char *generator_version = "wisim-dataset/1";

struct ClassSpec
{
    std::string name;
    int label = 1;
    std::vector<double> heights{1.75}; // cycled through by within-class sample index
    double speed = 0.0;
    bool sway = false;
};

// Per-sample trajectory variability: start uniform in [start_min, start_max],
// heading rotated uniformly within +-heading_deg about `direction`.
struct JitterSpec
{
    Vec3 start_min{3.0, 0.3, 0.0};
    Vec3 start_max{4.2, 0.8, 0.0};
    Vec3 direction{0.0, 1.0, 0.0};
    double heading_deg = 15.0;
};

struct DatasetConfig
{
    Scenario base;
    std::vector<ClassSpec> classes;
    int samples_per_class = 100;
    JitterSpec jitter;

    void validate() const;
};

// Five classes (standing child/adult, child walking, child pacing, adult walking,
// adult pacing) at 0 / 1 / 0.5 m/s, 1000 frames per sample.
DatasetConfig default_dataset_config();

DatasetConfig dataset_config_from_json(const nlohmann::json &j);
DatasetConfig load_dataset_config(const std::string &path);

struct ManifestEntry
{
    std::string image_path; // relative to the dataset directory
    int label = 0;
    std::string class_name;
    std::string scenario_hash; // FNV-1a 64 of the PGM bytes, 16 hex digits
    std::uint64_t seed = 0;

    bool operator==(const ManifestEntry &) const = default;
};

struct DatasetManifest
{
    std::vector<ManifestEntry> entries;
    std::vector<std::string> class_names;
    std::string generator_version = wisim::generator_version;
};

struct DatasetReport
{
    DatasetManifest manifest;
    int generated = 0;
    int skipped = 0;
    std::vector<std::string> failures; // one message per failed entry
};

std::string content_hash(const std::string &bytes);

// Entry e belongs to class e / samples_per_class. Its seed and jitter are pure
// functions of (base_seed, e).
std::uint64_t sample_seed(std::uint64_t base_seed, int entry_index);
Scenario sample_scenario(const DatasetConfig &config, int entry_index, std::uint64_t base_seed);
std::string sample_image_path(const DatasetConfig &config, int entry_index);

// Writes <out_dir>/<class>/<id>.pgm per entry plus manifest.csv and manifest.json.
// Entries already listed in an existing manifest whose image re-hashes to the
// recorded hash are skipped. Failed entries are reported, not fatal; the manifest
// lists the completed ones.
DatasetReport generate_dataset(const DatasetConfig &config, std::uint64_t base_seed, const std::string &out_dir,
                               int workers = 1);

void write_manifest_csv(const std::string &path, const std::vector<ManifestEntry> &entries);
std::vector<ManifestEntry> read_manifest_csv(const std::string &path);

} // namespace wisim
