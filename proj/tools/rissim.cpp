// SPDX-License-Identifier: Apache-2.0
//
// rissim - two-path RIS-assisted propagation simulator
// Copyright (C) 2026 The rissim authors
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


#include "rissim/config.hpp"
#include "rissim/errors.hpp"
#include "rissim/output.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <random>
#include <fmt/format.h>

namespace
{
    using namespace rissim;

    struct SimulateOptions
    {
        std::string preset;
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> out;
        std::vector<std::string> formats;
        std::vector<std::string> strategies;
        std::optional<std::size_t> iterations;
        std::optional<double> grid_step_deg;
        std::optional<std::size_t> max_sweeps;
        std::optional<double> calibration_offset_db;
        unsigned threads = 0;
        int verbose = 0;
        bool quiet = false;
    };

    // Command-line flags override the matching config fields
    RunConfig merge(const SimulateOptions &opt)
    {
        RunConfig cfg = opt.config.empty() ? RunConfig::from_preset(opt.preset) : load_config(opt.config);
        if (opt.seed)
            cfg.seed = opt.seed;
        if (opt.out)
            cfg.output.directory = *opt.out;
        if (!opt.formats.empty())
        {
            cfg.output.formats.clear();
            for (const std::string &f : opt.formats)
            {
                const auto id = parse_output_format(f);
                if (!id)
                    throw ConfigError(fmt::format("--format: unknown format \"{}\" (expected csv or svg)", f));
                if (std::find(cfg.output.formats.begin(), cfg.output.formats.end(), *id) == cfg.output.formats.end())
                    cfg.output.formats.push_back(*id);
            }
        }
        if (!opt.strategies.empty())
        {
            std::vector<StrategyId> ids;
            for (const std::string &s : opt.strategies)
            {
                const auto id = parse_strategy(s);
                if (!id)
                    throw ConfigError(fmt::format("--strategy: unknown strategy \"{}\"", s));
                ids.push_back(*id);
            }
            cfg.strategies = std::move(ids);
        }
        if (opt.iterations)
            cfg.iterations = opt.iterations;
        if (opt.grid_step_deg)
            cfg.grid_step = deg_to_rad(*opt.grid_step_deg);
        if (opt.max_sweeps)
            cfg.max_sweeps = opt.max_sweeps;
        if (opt.calibration_offset_db)
            cfg.calibration_offset_db = opt.calibration_offset_db;
        if (opt.quiet)
            cfg.output.verbosity = 0;
        else if (opt.verbose > 0)
            cfg.output.verbosity = std::min(3, 1 + opt.verbose);
        return cfg;
    }

    int simulate(const SimulateOptions &opt)
    {
        const RunConfig cfg = merge(opt);
        const SweepSpec spec = cfg.resolve();
        const int verbosity = cfg.output.verbosity;

        if (verbosity >= 2)
            fmt::print(stderr, "running {}: {}x{} cells, {} distances, {} strategies, seed {}\n", spec.name,
                       spec.scenario.geometry.rows, spec.scenario.geometry.cols, spec.d2.values().size(),
                       spec.strategies.size(), spec.seed);

        const auto t0 = std::chrono::steady_clock::now();
        const SweepResult result = run_sweep(spec, opt.threads);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        // Render everything before touching the file system
        std::vector<std::pair<std::filesystem::path, std::string>> files;
        const std::filesystem::path dir = cfg.output.directory;
        for (OutputFormat f : cfg.output.formats)
        {
            if (f == OutputFormat::csv)
                files.emplace_back(dir / (spec.name + ".csv"), format_csv(result));
            else
                files.emplace_back(dir / (spec.name + ".svg"), format_svg(result));
        }

        std::error_code ec;
        const bool created_dir = std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));

        std::vector<std::filesystem::path> written;
        try
        {
            for (const auto &[path, text] : files)
            {
                write_file_atomic(path, text);
                written.push_back(path);
            }
        }
        catch (...)
        {
            for (const auto &path : written)
                std::filesystem::remove(path, ec);
            if (created_dir)
                std::filesystem::remove(dir, ec);
            throw;
        }

        if (verbosity >= 1)
        {
            for (const auto &[path, text] : files)
                fmt::print("wrote {} ({} bytes)\n", path.string(), text.size());
        }
        if (verbosity >= 2)
        {
            for (StrategyId id : result.strategies)
            {
                const std::vector<double> dbm = result.series_dbm(id);
                double mean = 0.0;
                for (double v : dbm)
                    mean += v;
                mean /= static_cast<double>(dbm.size());
                fmt::print(stderr, "  {:<14} mean {:9.3f} dBm\n", display_name(id), mean);
            }
            fmt::print(stderr, "sweep finished in {:.2f} s\n", seconds);
        }
        if (verbosity >= 3)
        {
            for (const SweepRow &row : result.rows)
            {
                fmt::print(stderr, "  d2 = {:.5e} m", row.d2);
                for (std::size_t s = 0; s < row.outcomes.size(); ++s)
                    fmt::print(stderr, "  {} {:.3f}", column_name(result.strategies[s]), row.outcomes[s].reported_dbm);
                fmt::print(stderr, "\n");
            }
        }
        return 0;
    }

    int validate(const std::string &path, bool render)
    {
        const RunConfig cfg = load_config(path);
        const SweepSpec spec = cfg.resolve();
        if (render)
            fmt::print("{}", render_config(cfg));
        else
            fmt::print("ok: {} ({}x{} cells, {} distances, {} strategies)\n", spec.name, spec.scenario.geometry.rows,
                       spec.scenario.geometry.cols, spec.d2.values().size(), spec.strategies.size());
        return 0;
    }

    double unit_draw(std::mt19937_64 &rng)
    {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    std::pair<std::size_t, std::size_t> parse_grid(const std::string &text)
    {
        const auto x = text.find_first_of("xX");
        std::size_t rows = 0, cols = 0;
        try
        {
            if (x == std::string::npos)
                throw std::invalid_argument(text);
            std::size_t used = 0;
            rows = std::stoul(text.substr(0, x), &used);
            if (used != x)
                throw std::invalid_argument(text);
            cols = std::stoul(text.substr(x + 1), &used);
            if (used != text.size() - x - 1)
                throw std::invalid_argument(text);
        }
        catch (const std::logic_error &)
        {
            throw ConfigError(fmt::format("--grid: expected ROWSxCOLS (got \"{}\")", text));
        }
        if (rows == 0 || cols == 0)
            throw ConfigError("--grid: rows and cols must be >= 1");
        if (rows * cols > exhaustive_cell_limit)
            throw CapacityError(fmt::format("--grid: {} cells exceed the exhaustive limit of {}", rows * cols,
                                            exhaustive_cell_limit));
        return {rows, cols};
    }

    int oracle(const std::string &grid, std::uint64_t seed, std::size_t iterations)
    {
        const auto [rows, cols] = parse_grid(grid);

        // Random small scenario around the simulation parameters
        std::mt19937_64 rng(seed);
        Scenario s = preset_fig3a().scenario;
        s.geometry.rows = rows;
        s.geometry.cols = cols;
        s.geometry.theta_t = deg_to_rad(80.0 * unit_draw(rng));
        s.geometry.theta_r = deg_to_rad(80.0 * unit_draw(rng));
        s.geometry.d1 = 0.2 + 1.8 * unit_draw(rng);
        s.geometry.d2 = 0.2 + 1.8 * unit_draw(rng);
        const LinkModel model(s);

        fmt::print("scenario: {}x{} cells, theta_t {:.4f} deg, theta_r {:.4f} deg, d1 {:.6f} m, d2 {:.6f} m\n", rows,
                   cols, rad_to_deg(s.geometry.theta_t), rad_to_deg(s.geometry.theta_r), s.geometry.d1,
                   s.geometry.d2);
        fmt::print("P_LOS {:.6f} dBm\n", watts_to_dbm(model.los_power()));

        const OptimizationResult best = exhaustive_binary_oracle(model);
        std::string pattern;
        for (std::size_t n = 1; n <= rows; ++n)
        {
            pattern += n == 1 ? "" : "/";
            for (std::size_t m = 1; m <= cols; ++m)
                pattern += std::abs(best.config.phase(CellIndex{n, m})) > 1.0 ? '1' : '0';
        }
        fmt::print("{:<18} {:12.6f} dBm  pattern {} ({} evaluations)\n", display_name(StrategyId::exhaustive_binary),
                   watts_to_dbm(best.power), pattern, best.evaluations);

        StrategyParams params;
        params.iterations = iterations;
        for (StrategyId id : {StrategyId::ris0, StrategyId::ris1, StrategyId::ris3_random, StrategyId::ris3_greedy,
                              StrategyId::ris4})
        {
            const OptimizationResult r = run_strategy(model, id, params, seed);
            fmt::print("{:<18} {:12.6f} dBm  gap {:+.3e} dB\n", display_name(id), watts_to_dbm(r.power),
                       watts_to_dbm(r.power) - watts_to_dbm(best.power));
        }
        fmt::print("{:<18} {:12.6f} dBm\n", "UPPER_BOUND",
                   watts_to_dbm(upper_bound_power(model, s.reflection_amplitude)));
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"rissim: two-path RIS-assisted propagation simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "rissim 1.0.0");

    SimulateOptions sim;
    auto *simulate_cmd = app.add_subcommand("simulate", "Run a distance sweep and write CSV/SVG results");
    simulate_cmd->footer("Precedence: command-line flags > config file > preset defaults.\n"
                         "Presets: fig3a, fig3b, fig5. Strategies: ris0, ris1, ris2-grid, ris2-analytic,\n"
                         "ris3-random, ris3-greedy, ris4, exhaustive-binary.");
    auto *preset_opt = simulate_cmd->add_option("--preset", sim.preset, "Named preset")
                           ->check(CLI::IsMember({"fig3a", "fig3b", "fig5"}));
    auto *config_opt = simulate_cmd->add_option("--config", sim.config, "TOML run configuration")
                           ->check(CLI::ExistingFile);
    preset_opt->excludes(config_opt);
    simulate_cmd->add_option("--seed", sim.seed, "Master seed (preset default 42, custom default 0)");
    simulate_cmd->add_option("--out", sim.out, "Output directory (default: results)");
    simulate_cmd->add_option("--format", sim.formats, "Output formats, comma separated (default: csv)")
        ->delimiter(',');
    simulate_cmd->add_option("--strategy", sim.strategies, "Strategies to run, comma separated (default: preset list)")
        ->delimiter(',');
    simulate_cmd->add_option("--iterations", sim.iterations, "RIS3_RANDOM draws (default 1000)")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--grid-step-deg", sim.grid_step_deg, "RIS2_GRID phase step in degrees (default 1)")
        ->check(CLI::Range(0.0, 180.0));
    simulate_cmd->add_option("--max-sweeps", sim.max_sweeps, "RIS3_GREEDY sweep cap (default 100)")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--calibration-offset-db", sim.calibration_offset_db,
                             "Added to every reported dBm value (default 0)");
    simulate_cmd->add_option("--threads", sim.threads, "Worker threads, 0 = hardware concurrency (default 0)");
    simulate_cmd->add_flag("-v,--verbose", sim.verbose, "More diagnostics on stderr (repeatable)");
    simulate_cmd->add_flag("-q,--quiet", sim.quiet, "No output besides errors");

    std::string validate_path;
    bool render = false;
    auto *validate_cmd = app.add_subcommand("validate", "Parse and validate a configuration without running it");
    validate_cmd->add_option("--config", validate_path, "TOML run configuration")->required();
    validate_cmd->add_flag("--render", render, "Print the canonical form of the configuration");

    std::string grid;
    std::uint64_t oracle_seed = 0;
    std::size_t oracle_iterations = 1000;
    auto *oracle_cmd = app.add_subcommand("oracle", "Exhaustive binary search on a small random scenario");
    oracle_cmd->add_option("--grid", grid, "Surface size ROWSxCOLS, at most 20 cells")->required();
    oracle_cmd->add_option("--seed", oracle_seed, "Scenario and RIS3_RANDOM seed (default 0)");
    oracle_cmd->add_option("--iterations", oracle_iterations, "RIS3_RANDOM draws (default 1000)")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*simulate_cmd)
        {
            if (sim.preset.empty() && sim.config.empty())
                throw ConfigError("simulate: one of --preset or --config is required");
            return simulate(sim);
        }
        if (*validate_cmd)
            return validate(validate_path, render);
        return oracle(grid, oracle_seed, oracle_iterations);
    }
    catch (const std::exception &e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
