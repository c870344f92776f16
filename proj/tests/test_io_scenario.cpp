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

#include <catch_amalgamated.hpp>

#include "wisim/errors.hpp"
#include "wisim/io.hpp"
#include "wisim/rng.hpp"
#include "wisim/scenario.hpp"

#include <filesystem>
#include <fstream>

using namespace wisim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name)
{
    fs::path p = fs::temp_directory_path() / "wisim_io_tests" / name;
    fs::create_directories(p.parent_path());
    return p;
}

void write_text(const fs::path &p, const std::string &s)
{
    std::ofstream(p) << s;
}

json minimal()
{
    return json{{"schema_version", 1}};
}

} // namespace

TEST_CASE("IO - IQ file round trip")
{
    Rng rng(3);
    IQMatrix X(100, 12);
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            X(i, j) = complex_gaussian(1.0, rng);
    IqHeader h{100, 12, 100e6, 3.5e9, 1e-3, 1e-6, 50e6, "walk", 7};
    const std::string path = scratch("round.iq").string();
    write_iq(path, X, h);
    CHECK(fs::file_size(path) == 100u * 12u * 8u);
    REQUIRE(fs::exists(path + ".json"));

    IqFile f = read_iq(path);
    CHECK(f.header.L == 100);
    CHECK(f.header.C == 12);
    CHECK(f.header.f_s == 100e6);
    CHECK(f.header.f_c == 3.5e9);
    CHECK(f.header.T == 1e-3);
    CHECK(f.header.T0 == 1e-6);
    CHECK(f.header.bandwidth == 50e6);
    CHECK(f.header.scenario_id == "walk");
    CHECK(f.header.seed == 7u);
    // float32 body
    CHECK((f.samples - X).cwiseAbs().maxCoeff() <= 1e-6 * X.cwiseAbs().maxCoeff());
    CHECK(f.samples.cast<std::complex<float>>() == X.cast<std::complex<float>>());

    // Column-major, little-endian float pairs.
    std::ifstream raw(path, std::ios::binary);
    float first[4];
    raw.read(reinterpret_cast<char *>(first), sizeof first);
    CHECK(first[0] == static_cast<float>(X(0, 0).real()));
    CHECK(first[1] == static_cast<float>(X(0, 0).imag()));
    CHECK(first[2] == static_cast<float>(X(1, 0).real()));

    fs::resize_file(path, 100);
    CHECK_THROWS_AS(read_iq(path), ParseError);
    CHECK_THROWS_AS(read_iq(scratch("missing.iq").string()), IoError);
}

TEST_CASE("IO - PGM round trip")
{
    GrayImage img{3, 4, {0, 1, 2, 3, 10, 20, 30, 40, 250, 251, 254, 255}, 60.0};
    const std::string path = scratch("img.pgm").string();
    write_pgm(path, img);
    const std::string bytes = read_file(path);
    CHECK(bytes.rfind("P5\n4 3\n255\n", 0) == 0);
    // Highest-frequency row first in the file.
    CHECK(static_cast<unsigned char>(bytes[11]) == 250);
    CHECK(encode_pgm(img) == bytes);

    GrayImage back = read_pgm(path);
    CHECK(back.rows == 3);
    CHECK(back.cols == 4);
    CHECK(back.pixels == img.pixels);

    write_text(scratch("bad.pgm"), "P2\n1 1\n255\n0");
    CHECK_THROWS_AS(read_pgm(scratch("bad.pgm").string()), ParseError);
    write_text(scratch("short.pgm"), "P5\n4 4\n255\nabc");
    CHECK_THROWS_AS(read_pgm(scratch("short.pgm").string()), ParseError);
}

TEST_CASE("IO - pmf CSV")
{
    Pmf p{{0.25, 0.5, 0.0, 0.25}};
    const std::string path = scratch("p.csv").string();
    write_pmf_csv(path, p);
    CHECK(read_file(path).rfind("bin_index,probability\n0,0.25\n", 0) == 0);
    CHECK(read_pmf_csv(path).probabilities == p.probabilities);

    Pmf odd{{0.1, 0.2, 0.7000000000000001}};
    write_pmf_csv(path, odd);
    CHECK(read_pmf_csv(path).probabilities == odd.probabilities);

    auto parse_line = [](const std::string &text) -> std::size_t {
        write_text(scratch("bad.csv"), text);
        try
        {
            read_pmf_csv(scratch("bad.csv").string());
        }
        catch (const ParseError &e)
        {
            return e.line();
        }
        return 0;
    };
    CHECK(parse_line("bin,prob\n0,1\n") == 1);
    CHECK(parse_line("bin_index,probability\n0,0.5\nx,0.5\n") == 3);
    CHECK(parse_line("bin_index,probability\n0,0.5\n2,0.5\n") == 3);
    CHECK(parse_line("bin_index,probability\n0,1.5\n1,-0.5\n") == 3);
    CHECK(parse_line("bin_index,probability\n0,0.5\n1,0.5,7\n") == 3);

    write_text(scratch("sum.csv"), "bin_index,probability\n0,0.5\n1,0.4\n");
    CHECK_THROWS_AS(read_pmf_csv(scratch("sum.csv").string()), ParseError);
    CHECK_THROWS_AS(read_pmf_csv(scratch("nope.csv").string()), IoError);
}

TEST_CASE("IO - number formatting and atomic writes")
{
    CHECK(format_double(0.0) == "0.0");
    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(0.9998) == "0.9998");
    CHECK(format_double(1e-13) == "1e-13");
    CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);

    const fs::path nested = scratch("deep") / "a" / "b" / "out.txt";
    fs::remove_all(scratch("deep"));
    write_file_atomic(nested.string(), "hello");
    CHECK(read_file(nested.string()) == "hello");
    write_file_atomic(nested.string(), "again");
    CHECK(read_file(nested.string()) == "again");
}

TEST_CASE("Scenario - documented baseline")
{
    Scenario s = default_scenario();
    CHECK(s.room.size == Vec3(4.5, 3.0, 3.0));
    CHECK(s.radar_position == Vec3(1.0, 1.5, 1.0));
    CHECK(s.radar.carrier_frequency == 3.5e9);
    CHECK(s.radar.bandwidth == 50e6);
    CHECK(s.radar.tx_power == 1.0);
    CHECK(s.radar.antenna_gain_db == 25.0);
    CHECK(s.radar.frame_period == 1e-3);
    CHECK(s.radar.sweep_time == 1e-6);
    CHECK(s.radar.sample_rate == 100e6);
    CHECK(s.radar.noise_power_dbm == -100.0);
    CHECK(s.radar.frames == 3000);
    CHECK(s.subject.height == 1.75);
    CHECK(s.subject.speed == 1.0);
    CHECK(s.rho == 0.9998);
    CHECK_NOTHROW(s.validate());

    Scenario off = s;
    off.sensing_uncertainty = false;
    CHECK(off.effective_rho() == 1.0);
}

TEST_CASE("Scenario - JSON parsing")
{
    Scenario s = scenario_from_json(minimal());
    CHECK(s.radar.frames == 3000);
    CHECK(s.subject.trajectory.duration == Catch::Approx(3.0));

    json j = minimal();
    j["radar"] = {{"frames", 1000}};
    CHECK(scenario_from_json(j).subject.trajectory.duration == Catch::Approx(1.0));

    j = minimal();
    j["radar"] = {{"noise_power_dbm", nullptr}};
    CHECK(!scenario_from_json(j).radar.noise_power_dbm);

    j = minimal();
    j["qd"] = {{"reflection_loss_db", -6.0}};
    for (double h : scenario_from_json(j).qd.reflection_loss)
        CHECK(h == Catch::Approx(std::pow(10.0, -0.6)));
    j["qd"] = {{"reflection_loss_db", {-10, -10, -3, -3, -20, -20}}};
    CHECK(scenario_from_json(j).qd.reflection_loss[2] == Catch::Approx(std::pow(10.0, -0.3)));
    j["qd"] = {{"reflection_loss_db", {-10, -10}}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    j = minimal();
    j["subject"] = {{"speed", 0.0}, {"gait", {{"sway", true}}}};
    Scenario standing = scenario_from_json(j);
    CHECK(standing.subject.standing());
    CHECK(standing.subject.gait.sway);
}

TEST_CASE("Scenario - strict schema")
{
    json j = minimal();
    j["colour"] = "blue";
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    j = minimal();
    j["radar"] = {{"frame", 10}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    j = minimal();
    j["subject"] = {{"gait", {{"stride", 0.7}}}};
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    CHECK_THROWS_AS(scenario_from_json(json::object()), ConfigError);
    j = minimal();
    j["schema_version"] = 2;
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    j = minimal();
    j["rho"] = 1.5;
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    j = minimal();
    j["radar"] = {{"sample_rate", 99.5e6}};
    CHECK_THROWS_AS(scenario_from_json(j), RangeError);

    j = minimal();
    j["subject"] = {{"start", {4.2, 1.0, 0.0}}};
    CHECK_THROWS_AS(scenario_from_json(j), BoundsError);

    j = minimal();
    j["radar"] = "fast";
    CHECK_THROWS_AS(scenario_from_json(j), ConfigError);

    write_text(scratch("broken.json"), "{ \"schema_version\": 1, ");
    CHECK_THROWS_AS(load_scenario(scratch("broken.json").string()), ParseError);
}

TEST_CASE("Scenario - JSON round trip")
{
    Scenario s = default_scenario();
    s.id = "roundtrip";
    s.seed = 123456789012345ULL;
    s.rho = 0.999;
    s.sensing_uncertainty = false;
    s.subject.height = 1.0;
    s.subject.speed = 0.5;
    s.qd.reflection_loss[3] = 0.25;
    s.radar.noise_power_dbm.reset();
    s.dsp.kaiser_beta = 2.0;
    Scenario b = scenario_from_json(to_json(s));
    CHECK(to_json(b) == to_json(s));
    CHECK(b.seed == s.seed);
    CHECK(b.qd.reflection_loss[3] == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(!b.radar.noise_power_dbm);

    const fs::path repo_walk = fs::path(WISIM_SOURCE_DIR) / "configs" / "walk.json";
    Scenario walk = load_scenario(repo_walk.string());
    CHECK(walk.id == "walk");
    CHECK(to_json(walk)["radar"] == to_json(default_scenario())["radar"]);
}
