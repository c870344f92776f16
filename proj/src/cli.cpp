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

#include "wisim/cli.hpp"
#include "wisim/calibration.hpp"
#include "wisim/dataset.hpp"
#include "wisim/errors.hpp"
#include "wisim/io.hpp"
#include "wisim/simulate.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>

namespace wisim {

namespace {

std::string one_line(std::string s)
{
    for (char &c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    return s;
}

struct Options
{
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string input;
    std::string second;
    std::string reference;
    std::string grid;
    std::string table;
    std::string csv;
    int bins = 256;
    int workers = 1;
    int realizations = 1;
    double eps = -1.0;
};

Scenario scenario_with_seed(const Options &o)
{
    Scenario s = load_scenario(o.config);
    if (o.seed)
        s.seed = *o.seed;
    return s;
}

int cmd_simulate(const Options &o, std::ostream &out)
{
    const Scenario s = scenario_with_seed(o);
    const SampleResult r = simulate_sample(s);
    const std::filesystem::path dir(o.out.empty() ? "." : o.out);
    IqHeader h;
    h.L = s.radar.samples_per_frame();
    h.C = s.radar.frames;
    h.f_s = s.radar.sample_rate;
    h.f_c = s.radar.carrier_frequency;
    h.T = s.radar.frame_period;
    h.T0 = s.radar.sweep_time;
    h.bandwidth = s.radar.bandwidth;
    h.scenario_id = s.id;
    h.seed = s.seed;
    const std::string iq_path = (dir / (s.id + ".iq")).string();
    const std::string pgm_path = (dir / (s.id + ".pgm")).string();
    write_iq(iq_path, r.iq, h);
    write_pgm(pgm_path, r.image);
    out << iq_path << '\n' << pgm_path << '\n';
    return 0;
}

int cmd_spectrogram(const Options &o, std::ostream &out)
{
    const IqFile f = read_iq(o.input);
    if (!f.header.bandwidth)
        throw ConfigError("IQ header of " + o.input + " lacks B_W; cannot rebuild the reference chirp");
    RadarParams p;
    p.carrier_frequency = f.header.f_c;
    p.bandwidth = *f.header.bandwidth;
    p.sweep_time = f.header.T0;
    p.frame_period = f.header.T;
    p.sample_rate = f.header.f_s;
    p.frames = f.header.C;
    p.validate();
    if (p.samples_per_frame() != f.header.L)
        throw ConfigError("IQ header L disagrees with T0 * f_s");
    const DspConfig dsp = o.config.empty() ? DspConfig{} : load_scenario(o.config).dsp;
    const Spectrogram S = process_frames(f.samples, fmcw_chirp(p), dsp, p.frame_period);
    write_pgm(o.out, to_grayscale(S, dsp.dynamic_range_db));
    if (!o.csv.empty())
        write_spectrogram_csv(o.csv, S);
    out << o.out << '\n';
    return 0;
}

int cmd_pmf(const Options &o, std::ostream &out)
{
    const Pmf p = gray_pmf(read_pgm(o.input), o.bins);
    if (o.out.empty())
    {
        out << "bin_index,probability\n";
        for (int b = 0; b < p.bins(); ++b)
            out << b << ',' << format_double(p.probabilities[static_cast<std::size_t>(b)]) << '\n';
    }
    else
    {
        write_pmf_csv(o.out, p);
        out << o.out << '\n';
    }
    return 0;
}

int cmd_calibrate(const Options &o, std::ostream &out)
{
    const Scenario s = scenario_with_seed(o);
    const Pmf ref = read_pmf_csv(o.reference);
    const RhoGrid grid = o.grid.empty() ? RhoGrid::default_grid() : RhoGrid::parse(o.grid);
    FitOptions fo;
    if (o.eps >= 0.0)
        fo.smoothing_eps = o.eps;
    fo.workers = o.workers;
    fo.realizations = o.realizations;
    const CalibrationRecord rec = fit_rho(ref, s, grid, s.seed, fo);
    if (!o.out.empty())
        write_curve_csv(o.out, rec.curve);
    if (!o.table.empty())
        lut_store(o.table, rec);
    out << "rho_star = " << format_double(rec.rho_star) << '\n';
    out << "kl = " << format_double(rec.kl_at_optimum) << '\n';
    return 0;
}

int cmd_dataset(const Options &o, std::ostream &out, std::ostream &err)
{
    const DatasetConfig cfg = o.config.empty() ? default_dataset_config() : load_dataset_config(o.config);
    const DatasetReport rep = generate_dataset(cfg, o.seed.value_or(1), o.out, o.workers);
    out << "entries " << rep.manifest.entries.size() << " generated " << rep.generated << " skipped " << rep.skipped
        << " failed " << rep.failures.size() << '\n';
    if (!rep.failures.empty())
    {
        for (const auto &f : rep.failures)
            err << "failed: " << one_line(f) << '\n';
        throw SimulationError(std::to_string(rep.failures.size()) + " dataset entries failed");
    }
    return 0;
}

int cmd_compare(const Options &o, std::ostream &out)
{
    const double kl = kl_divergence(read_pmf_csv(o.input), read_pmf_csv(o.second), o.eps < 0.0 ? 0.0 : o.eps);
    out << (std::isinf(kl) ? std::string("inf") : format_double(kl)) << '\n';
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"wisim: sensing channel simulator", "wisim"};
    app.set_version_flag("--version", std::string(WISIM_VERSION));
    app.require_subcommand(1);
    Options o;

    auto *sim = app.add_subcommand("simulate", "scenario file -> <id>.iq + <id>.pgm");
    sim->add_option("--config", o.config, "scenario JSON")->required();
    sim->add_option("--seed", o.seed, "override the scenario seed");
    sim->add_option("--out", o.out, "output directory (default .)");

    auto *spec = app.add_subcommand("spectrogram", ".iq -> .pgm");
    spec->add_option("input", o.input, ".iq file")->required();
    spec->add_option("--out", o.out, "output .pgm")->required();
    spec->add_option("--config", o.config, "scenario JSON supplying the dsp block");
    spec->add_option("--csv", o.csv, "also write the dB spectrogram as CSV");

    auto *pmf = app.add_subcommand("pmf", ".pgm -> pmf CSV");
    pmf->add_option("input", o.input, ".pgm file")->required();
    pmf->add_option("--out", o.out, "output CSV (default stdout)");
    pmf->add_option("--bins", o.bins, "gray bins E")->check(CLI::Range(1, 256));

    auto *cal = app.add_subcommand("calibrate", "fit rho to a reference pmf");
    cal->add_option("--config", o.config, "scenario JSON")->required();
    cal->add_option("--reference", o.reference, "reference pmf CSV")->required();
    cal->add_option("--grid", o.grid, "rho grid: 'a;b;c' or 'log:lo:hi:n'");
    cal->add_option("--seed", o.seed, "override the scenario seed");
    cal->add_option("--out", o.out, "write the KL curve CSV");
    cal->add_option("--table", o.table, "store the result in this look-up table");
    cal->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
    cal->add_option("--realizations", o.realizations)->check(CLI::PositiveNumber);
    cal->add_option("--eps", o.eps, "KL smoothing (default 1e-9)")->check(CLI::NonNegativeNumber);

    auto *ds = app.add_subcommand("dataset", "generate a labeled image dataset");
    ds->add_option("--config", o.config, "dataset JSON (default: five-class benchmark)");
    ds->add_option("--seed", o.seed, "base seed (default 1)");
    ds->add_option("--out", o.out, "dataset directory")->required();
    ds->add_option("--workers", o.workers)->check(CLI::PositiveNumber);

    auto *cmp = app.add_subcommand("compare-pmf", "print KL(a || b)");
    cmp->add_option("a", o.input, "reference pmf CSV")->required();
    cmp->add_option("b", o.second, "candidate pmf CSV")->required();
    cmp->add_option("--eps", o.eps, "KL smoothing (default 0)")->check(CLI::NonNegativeNumber);

    std::vector<std::string> argv_store{"wisim"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForVersion &)
    {
        out << WISIM_VERSION << '\n';
        return 0;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: usage: " << one_line(e.what()) << '\n' << app.help();
        return 2;
    }

    try
    {
        if (*sim)
            return cmd_simulate(o, out);
        if (*spec)
            return cmd_spectrogram(o, out);
        if (*pmf)
            return cmd_pmf(o, out);
        if (*cal)
            return cmd_calibrate(o, out);
        if (*ds)
            return cmd_dataset(o, out, err);
        if (*cmp)
            return cmd_compare(o, out);
    }
    catch (const Error &e)
    {
        err << "error: " << to_string(e.category()) << ": " << one_line(e.what()) << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
    err << app.help();
    return 2;
}

} // namespace wisim
