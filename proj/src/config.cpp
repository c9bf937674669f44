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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <toml.hpp>

namespace rissim
{
    namespace
    {
        [[noreturn]] void fail(std::string_view path, std::string_view message)
        {
            throw ConfigError(fmt::format("{}: {}", path, message));
        }

        // Tracks which keys of one TOML table were consumed so leftovers can be reported
        class TableReader
        {
        public:
            TableReader(const toml::table *table, std::string path) : table_(table), path_(std::move(path)) {}

            bool present() const { return table_ != nullptr; }
            bool has(std::string_view key) const { return table_ && table_->contains(key); }
            std::string key_path(std::string_view key) const
            {
                return path_.empty() ? std::string(key) : fmt::format("{}.{}", path_, key);
            }

            std::optional<double> number(std::string_view key)
            {
                const toml::node *node = take(key);
                if (!node)
                    return std::nullopt;
                if (const auto v = node->value_exact<double>())
                    return *v;
                if (const auto v = node->value_exact<std::int64_t>())
                    return static_cast<double>(*v);
                fail(key_path(key), "expected a number");
            }

            std::optional<std::int64_t> integer(std::string_view key)
            {
                const toml::node *node = take(key);
                if (!node)
                    return std::nullopt;
                if (const auto v = node->value_exact<std::int64_t>())
                    return *v;
                fail(key_path(key), "expected an integer");
            }

            std::optional<std::string> string(std::string_view key)
            {
                const toml::node *node = take(key);
                if (!node)
                    return std::nullopt;
                if (const auto v = node->value_exact<std::string>())
                    return *v;
                fail(key_path(key), "expected a string");
            }

            std::optional<std::vector<double>> number_array(std::string_view key)
            {
                const toml::node *node = take(key);
                if (!node)
                    return std::nullopt;
                const toml::array *arr = node->as_array();
                if (!arr)
                    fail(key_path(key), "expected an array of numbers");
                std::vector<double> out;
                for (const toml::node &el : *arr)
                {
                    if (const auto v = el.value_exact<double>())
                        out.push_back(*v);
                    else if (const auto i = el.value_exact<std::int64_t>())
                        out.push_back(static_cast<double>(*i));
                    else
                        fail(key_path(key), "expected an array of numbers");
                }
                return out;
            }

            std::optional<std::vector<std::string>> string_array(std::string_view key)
            {
                const toml::node *node = take(key);
                if (!node)
                    return std::nullopt;
                const toml::array *arr = node->as_array();
                if (!arr)
                    fail(key_path(key), "expected an array of strings");
                std::vector<std::string> out;
                for (const toml::node &el : *arr)
                {
                    const auto v = el.value_exact<std::string>();
                    if (!v)
                        fail(key_path(key), "expected an array of strings");
                    out.push_back(*v);
                }
                return out;
            }

            void mark(std::string_view key)
            {
                take(key);
            }

            template <typename T>
            T require(std::optional<T> value, std::string_view key) const
            {
                if (!value)
                    fail(key_path(key), "missing required key");
                return *value;
            }

            void reject(std::string_view key, std::string_view why) const
            {
                if (has(key))
                    fail(key_path(key), why);
            }

            // Every key not consumed is an error
            void finish() const
            {
                if (!table_)
                    return;
                for (const auto &[key, node] : *table_)
                    if (!used_.contains(std::string(key.str())))
                        fail(key_path(key.str()), node.is_table() ? "unknown section" : "unknown key");
            }

        private:
            const toml::node *take(std::string_view key)
            {
                if (!table_)
                    return nullptr;
                const toml::node *node = table_->get(key);
                if (node)
                    used_.insert(std::string(key));
                return node;
            }

            const toml::table *table_;
            std::string path_;
            std::set<std::string> used_;
        };

        TableReader section(const toml::table &root, std::string_view name)
        {
            const toml::node *node = root.get(name);
            if (node && !node->is_table())
                fail(name, "expected a section");
            return TableReader(node ? node->as_table() : nullptr, std::string(name));
        }

        double positive(std::optional<double> v, const TableReader &t, std::string_view key)
        {
            const double x = t.require(v, key);
            if (!std::isfinite(x) || x <= 0.0)
                fail(t.key_path(key), fmt::format("must be > 0 (got {})", x));
            return x;
        }

        double finite(std::optional<double> v, const TableReader &t, std::string_view key)
        {
            const double x = t.require(v, key);
            if (!std::isfinite(x))
                fail(t.key_path(key), "must be finite");
            return x;
        }

        double elevation_deg(std::optional<double> v, const TableReader &t, std::string_view key)
        {
            const double x = t.require(v, key);
            if (!(x >= 0.0 && x < 90.0))
                fail(t.key_path(key), fmt::format("must be in [0, 90) deg (got {})", x));
            return deg_to_rad(x);
        }

        std::size_t count(std::optional<std::int64_t> v, const TableReader &t, std::string_view key)
        {
            const std::int64_t x = t.require(v, key);
            if (x < 1)
                fail(t.key_path(key), fmt::format("must be >= 1 (got {})", x));
            return static_cast<std::size_t>(x);
        }

        PatternModel pattern(std::optional<std::string> v, const TableReader &t, std::string_view key)
        {
            try
            {
                return PatternModel::parse(t.require(v, key));
            }
            catch (const ConfigError &e)
            {
                fail(t.key_path(key), e.what());
            }
        }

        void parse_geometry(TableReader &t, GeometryConfig &g)
        {
            g.rows = count(t.integer("rows"), t, "rows");
            g.cols = count(t.integer("cols"), t, "cols");
            g.cell_dx = positive(t.number("dx_m"), t, "dx_m");
            g.cell_dy = positive(t.number("dy_m"), t, "dy_m");
            g.d1 = positive(t.number("d1_m"), t, "d1_m");
            g.theta_t = elevation_deg(t.number("theta_t_deg"), t, "theta_t_deg");
            g.theta_r = elevation_deg(t.number("theta_r_deg"), t, "theta_r_deg");
            g.frequency = positive(t.number("frequency_hz"), t, "frequency_hz");
        }

        void parse_antennas(TableReader &t, Scenario &s)
        {
            s.tx_antenna.gain_ris_path = positive(t.number("gt"), t, "gt");
            s.rx_antenna.gain_ris_path = positive(t.number("gr"), t, "gr");
            s.tx_antenna.gain_direct_path = positive(t.number("gt_direct"), t, "gt_direct");
            s.rx_antenna.gain_direct_path = positive(t.number("gr_direct"), t, "gr_direct");
            s.tx_antenna.pattern = pattern(t.string("tx_pattern"), t, "tx_pattern");
            s.rx_antenna.pattern = pattern(t.string("rx_pattern"), t, "rx_pattern");
            s.cell_pattern = pattern(t.string("cell_pattern"), t, "cell_pattern");
        }

        DistanceAxis parse_sweep(TableReader &t)
        {
            DistanceAxis axis;
            if (auto list = t.number_array("d2_values_m"))
            {
                for (const char *k : {"d2_start_m", "d2_stop_m", "d2_step_m", "d2_points", "d2_spacing"})
                    t.reject(k, "not allowed together with d2_values_m");
                axis.spec = DistanceAxis::List{std::move(*list)};
            }
            else
            {
                const std::string spacing = t.string("d2_spacing").value_or("linear");
                const double start = positive(t.number("d2_start_m"), t, "d2_start_m");
                const double stop = positive(t.number("d2_stop_m"), t, "d2_stop_m");
                if (spacing == "linear")
                {
                    t.reject("d2_points", "only valid with d2_spacing = \"log\"");
                    axis.spec = DistanceAxis::Linear{start, stop, positive(t.number("d2_step_m"), t, "d2_step_m")};
                }
                else if (spacing == "log")
                {
                    t.reject("d2_step_m", "only valid with d2_spacing = \"linear\"");
                    axis.spec = DistanceAxis::Log{start, stop, count(t.integer("d2_points"), t, "d2_points")};
                }
                else
                    fail(t.key_path("d2_spacing"), fmt::format("expected \"linear\" or \"log\" (got \"{}\")", spacing));
            }
            try
            {
                axis.values();
            }
            catch (const ConfigError &e)
            {
                fail("sweep", e.what());
            }
            return axis;
        }

        void parse_strategies(TableReader &t, RunConfig &cfg)
        {
            if (auto list = t.string_array("list"))
            {
                if (list->empty())
                    fail(t.key_path("list"), "must name at least one strategy");
                std::vector<StrategyId> ids;
                for (const std::string &name : *list)
                {
                    const auto id = parse_strategy(name);
                    if (!id)
                        fail(t.key_path("list"), fmt::format("unknown strategy \"{}\"", name));
                    ids.push_back(*id);
                }
                cfg.strategies = std::move(ids);
            }
            if (auto v = t.integer("iterations"))
                cfg.iterations = count(v, t, "iterations");
            if (auto v = t.number("grid_step_deg"))
            {
                if (!(*v > 0.0 && *v <= 180.0))
                    fail(t.key_path("grid_step_deg"), fmt::format("must be in (0, 180] (got {})", *v));
                cfg.grid_step = deg_to_rad(*v);
            }
            if (auto v = t.integer("max_sweeps"))
                cfg.max_sweeps = count(v, t, "max_sweeps");
            if (auto v = t.number("ris0_phase_deg"))
                cfg.ris0_phase = deg_to_rad(finite(v, t, "ris0_phase_deg"));
        }

        void parse_output(TableReader &t, OutputSettings &out)
        {
            if (auto dir = t.string("dir"))
            {
                if (dir->empty())
                    fail(t.key_path("dir"), "must not be empty");
                out.directory = *dir;
            }
            if (auto formats = t.string_array("formats"))
            {
                if (formats->empty())
                    fail(t.key_path("formats"), "must list at least one format");
                out.formats.clear();
                for (const std::string &f : *formats)
                {
                    const auto fmt_id = parse_output_format(f);
                    if (!fmt_id)
                        fail(t.key_path("formats"), fmt::format("unknown format \"{}\" (expected csv or svg)", f));
                    out.formats.push_back(*fmt_id);
                }
            }
            if (auto v = t.integer("verbosity"))
            {
                if (*v < 0 || *v > 3)
                    fail(t.key_path("verbosity"), fmt::format("must be in [0, 3] (got {})", *v));
                out.verbosity = static_cast<int>(*v);
            }
        }

        // ------------------------------------------------------------ rendering

        std::string number(double v) { return fmt::format("{}", v); }

        // Shortest decimal of to_external(internal) that maps back to exactly `internal`
        template <typename To, typename From>
        std::string exact_number(double internal, To to_external, From to_internal)
        {
            const double guess = to_external(internal);
            double lo = guess, hi = guess;
            for (int i = 0; i < 8; ++i)
            {
                if (to_internal(hi) == internal)
                    return number(hi);
                if (to_internal(lo) == internal)
                    return number(lo);
                hi = std::nextafter(hi, HUGE_VAL);
                lo = std::nextafter(lo, -HUGE_VAL);
            }
            return number(guess);
        }

        std::string degrees(double rad)
        {
            return exact_number(rad, rad_to_deg, deg_to_rad);
        }

        std::string toml_string(std::string_view s)
        {
            std::string out = "\"";
            for (char ch : s)
            {
                switch (ch)
                {
                case '"':
                    out += "\\\"";
                    break;
                case '\\':
                    out += "\\\\";
                    break;
                case '\n':
                    out += "\\n";
                    break;
                case '\t':
                    out += "\\t";
                    break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20)
                        out += fmt::format("\\u{:04X}", static_cast<unsigned>(ch));
                    else
                        out += ch;
                }
            }
            return out + "\"";
        }

        template <typename Range, typename F>
        std::string array(const Range &items, F render)
        {
            std::vector<std::string> parts;
            for (const auto &item : items)
                parts.push_back(render(item));
            return fmt::format("[{}]", fmt::join(parts, ", "));
        }
    }

    std::string_view to_string(OutputFormat f)
    {
        return f == OutputFormat::csv ? "csv" : "svg";
    }

    std::optional<OutputFormat> parse_output_format(std::string_view text)
    {
        if (text == "csv")
            return OutputFormat::csv;
        if (text == "svg")
            return OutputFormat::svg;
        return std::nullopt;
    }

    void RunConfig::validate() const
    {
        if (preset.has_value() == custom.has_value())
            throw ConfigError("exactly one of preset or an explicit scenario must be given");
        if (preset && !preset_by_name(*preset))
            throw ConfigError(fmt::format("preset: unknown preset \"{}\" (expected fig3a, fig3b or fig5)", *preset));
        if (output.formats.empty())
            throw ConfigError("output.formats: must list at least one format");
    }

    SweepSpec RunConfig::resolve() const
    {
        validate();
        SweepSpec spec;
        if (preset)
        {
            spec = *preset_by_name(*preset);
        }
        else
        {
            spec.name = "custom";
            spec.scenario = custom->scenario;
            spec.d2 = custom->d2;
            spec.scenario.geometry.d2 = custom->d2.values().front();
            spec.strategies = {StrategyId::ris0, StrategyId::ris1, StrategyId::ris2_analytic,
                               StrategyId::ris3_random, StrategyId::ris4};
        }
        if (name)
            spec.name = *name;
        if (seed)
            spec.seed = *seed;
        if (strategies)
            spec.strategies = *strategies;
        if (iterations)
            spec.params.iterations = *iterations;
        if (grid_step)
            spec.params.grid_step = *grid_step;
        if (max_sweeps)
            spec.params.max_sweeps = *max_sweeps;
        if (ris0_phase)
            spec.params.ris0_phase = *ris0_phase;
        if (calibration_offset_db)
            spec.scenario.calibration_offset_db = *calibration_offset_db;
        spec.validate();
        return spec;
    }

    RunConfig RunConfig::from_preset(std::string_view preset_name)
    {
        RunConfig cfg;
        cfg.preset = std::string(preset_name);
        cfg.validate();
        return cfg;
    }

    RunConfig RunConfig::from_spec(const SweepSpec &spec)
    {
        RunConfig cfg;
        cfg.name = spec.name;
        CustomSweep custom{spec.scenario, spec.d2};
        custom.scenario.calibration_offset_db = 0.0;
        cfg.custom = std::move(custom);
        cfg.seed = spec.seed;
        cfg.strategies = spec.strategies;
        cfg.iterations = spec.params.iterations;
        cfg.grid_step = spec.params.grid_step;
        cfg.max_sweeps = spec.params.max_sweeps;
        cfg.ris0_phase = spec.params.ris0_phase;
        cfg.calibration_offset_db = spec.scenario.calibration_offset_db;
        return cfg;
    }

    RunConfig parse_config(std::string_view text)
    {
        toml::table root;
        try
        {
            root = toml::parse(text);
        }
        catch (const toml::parse_error &e)
        {
            const auto &at = e.source().begin;
            throw ConfigError(fmt::format("malformed document (line {}, column {}): {}", at.line, at.column,
                                          e.description()));
        }

        RunConfig cfg;
        TableReader top(&root, "");
        cfg.name = top.string("name");
        if (cfg.name && cfg.name->empty())
            fail("name", "must not be empty");
        cfg.preset = top.string("preset");
        if (auto seed = top.integer("seed"))
        {
            if (*seed < 0)
                fail("seed", fmt::format("must be >= 0 (got {})", *seed));
            cfg.seed = static_cast<std::uint64_t>(*seed);
        }

        TableReader geometry = section(root, "geometry");
        TableReader antennas = section(root, "antennas");
        TableReader link = section(root, "link");
        TableReader sweep = section(root, "sweep");
        TableReader strategies = section(root, "strategies");
        TableReader output = section(root, "output");
        for (const char *name : {"geometry", "antennas", "link", "sweep", "strategies", "output"})
            top.mark(name);

        if (cfg.preset)
        {
            if (!preset_by_name(*cfg.preset))
                fail("preset", fmt::format("unknown preset \"{}\" (expected fig3a, fig3b or fig5)", *cfg.preset));
            for (const char *name : {"geometry", "antennas", "sweep"})
                if (root.contains(name))
                    fail(name, "not allowed together with preset");
            for (const char *key : {"pt_dbm", "gamma_amplitude"})
                link.reject(key, "not allowed together with preset");
        }
        else
        {
            if (!geometry.present())
                fail("geometry", "missing required section (or set preset)");
            if (!antennas.present())
                fail("antennas", "missing required section");
            if (!link.present())
                fail("link", "missing required section");
            if (!sweep.present())
                fail("sweep", "missing required section");

            CustomSweep custom;
            Scenario &s = custom.scenario;
            parse_geometry(geometry, s.geometry);
            parse_antennas(antennas, s);
            s.tx_power = dbm_to_watts(finite(link.number("pt_dbm"), link, "pt_dbm"));
            const double amplitude = link.require(link.number("gamma_amplitude"), "gamma_amplitude");
            if (!(amplitude >= 0.0 && amplitude <= 1.0))
                fail(link.key_path("gamma_amplitude"), fmt::format("must be in [0, 1] (got {})", amplitude));
            s.reflection_amplitude = amplitude;
            s.calibration_offset_db = 0.0;
            custom.d2 = parse_sweep(sweep);
            s.geometry.d2 = custom.d2.values().front();
            cfg.custom = std::move(custom);
        }

        if (auto offset = link.number("calibration_offset_db"))
            cfg.calibration_offset_db = finite(offset, link, "calibration_offset_db");
        parse_strategies(strategies, cfg);
        parse_output(output, cfg.output);

        for (const TableReader *t : {&top, &geometry, &antennas, &link, &sweep, &strategies, &output})
            t->finish();

        cfg.resolve(); // cross-field validation
        return cfg;
    }

    RunConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError(fmt::format("cannot read config file {}", path.string()));
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }

    std::string render_config(const RunConfig &cfg)
    {
        cfg.validate();
        std::string out;
        auto line = [&out](std::string_view key, const std::string &value) {
            out += fmt::format("{} = {}\n", key, value);
        };

        if (cfg.name)
            line("name", toml_string(*cfg.name));
        if (cfg.preset)
            line("preset", toml_string(*cfg.preset));
        if (cfg.seed)
            line("seed", fmt::format("{}", *cfg.seed));

        if (cfg.custom)
        {
            const Scenario &s = cfg.custom->scenario;
            const GeometryConfig &g = s.geometry;
            out += "\n[geometry]\n";
            line("rows", fmt::format("{}", g.rows));
            line("cols", fmt::format("{}", g.cols));
            line("dx_m", number(g.cell_dx));
            line("dy_m", number(g.cell_dy));
            line("d1_m", number(g.d1));
            line("theta_t_deg", degrees(g.theta_t));
            line("theta_r_deg", degrees(g.theta_r));
            line("frequency_hz", number(g.frequency));

            out += "\n[antennas]\n";
            line("gt", number(s.tx_antenna.gain_ris_path));
            line("gr", number(s.rx_antenna.gain_ris_path));
            line("gt_direct", number(s.tx_antenna.gain_direct_path));
            line("gr_direct", number(s.rx_antenna.gain_direct_path));
            line("tx_pattern", toml_string(s.tx_antenna.pattern.to_string()));
            line("rx_pattern", toml_string(s.rx_antenna.pattern.to_string()));
            line("cell_pattern", toml_string(s.cell_pattern.to_string()));
        }

        if (cfg.custom || cfg.calibration_offset_db)
        {
            out += "\n[link]\n";
            if (cfg.custom)
            {
                const Scenario &s = cfg.custom->scenario;
                line("pt_dbm", exact_number(s.tx_power, watts_to_dbm, dbm_to_watts));
                line("gamma_amplitude", number(s.reflection_amplitude));
            }
            if (cfg.calibration_offset_db)
                line("calibration_offset_db", number(*cfg.calibration_offset_db));
        }

        if (cfg.custom)
        {
            out += "\n[sweep]\n";
            const auto &spec = cfg.custom->d2.spec;
            if (const auto *list = std::get_if<DistanceAxis::List>(&spec))
            {
                line("d2_values_m", array(list->values, [](double v) { return number(v); }));
            }
            else if (const auto *lin = std::get_if<DistanceAxis::Linear>(&spec))
            {
                line("d2_spacing", toml_string("linear"));
                line("d2_start_m", number(lin->start));
                line("d2_stop_m", number(lin->stop));
                line("d2_step_m", number(lin->step));
            }
            else
            {
                const auto &lg = std::get<DistanceAxis::Log>(spec);
                line("d2_spacing", toml_string("log"));
                line("d2_start_m", number(lg.start));
                line("d2_stop_m", number(lg.stop));
                line("d2_points", fmt::format("{}", lg.points));
            }
        }

        if (cfg.strategies || cfg.iterations || cfg.grid_step || cfg.max_sweeps || cfg.ris0_phase)
        {
            out += "\n[strategies]\n";
            if (cfg.strategies)
                line("list", array(*cfg.strategies, [](StrategyId id) { return toml_string(cli_name(id)); }));
            if (cfg.iterations)
                line("iterations", fmt::format("{}", *cfg.iterations));
            if (cfg.grid_step)
                line("grid_step_deg", degrees(*cfg.grid_step));
            if (cfg.max_sweeps)
                line("max_sweeps", fmt::format("{}", *cfg.max_sweeps));
            if (cfg.ris0_phase)
                line("ris0_phase_deg", degrees(*cfg.ris0_phase));
        }

        out += "\n[output]\n";
        line("dir", toml_string(cfg.output.directory));
        line("formats", array(cfg.output.formats, [](OutputFormat f) { return toml_string(to_string(f)); }));
        line("verbosity", fmt::format("{}", cfg.output.verbosity));
        return out;
    }
}
