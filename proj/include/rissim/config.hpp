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

#ifndef RISSIM_CONFIG_HPP
#define RISSIM_CONFIG_HPP

#include "rissim/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rissim
{
    enum class OutputFormat
    {
        csv,
        svg,
    };

    std::string_view to_string(OutputFormat f);
    std::optional<OutputFormat> parse_output_format(std::string_view text);

    struct OutputSettings
    {
        std::string directory = "results";
        std::vector<OutputFormat> formats{OutputFormat::csv};
        int verbosity = 1;

        friend bool operator==(const OutputSettings &, const OutputSettings &) = default;
    };

    // Fully specified scenario and distance axis (no preset)
    struct CustomSweep
    {
        Scenario scenario; // calibration offset lives in RunConfig; geometry.d2 is the first distance
        DistanceAxis d2;

        friend bool operator==(const CustomSweep &, const CustomSweep &) = default;
    };

    // One simulation run: either a named preset or a custom sweep, plus optional overrides.
    // Overrides (seed, strategies, iterations, grid step, sweeps, calibration) apply to both forms.
    struct RunConfig
    {
        std::optional<std::string> name;
        std::optional<std::string> preset;
        std::optional<CustomSweep> custom;

        std::optional<std::uint64_t> seed;
        std::optional<std::vector<StrategyId>> strategies;
        std::optional<std::size_t> iterations;
        std::optional<double> grid_step; // [rad]
        std::optional<std::size_t> max_sweeps;
        std::optional<double> ris0_phase; // [rad]
        std::optional<double> calibration_offset_db;

        OutputSettings output;

        // Throws ConfigError unless exactly one of preset/custom is set and the output list is non-empty
        void validate() const;

        // Preset (or custom sweep) with every override applied, validated
        SweepSpec resolve() const;

        static RunConfig from_preset(std::string_view preset_name);

        // Custom-sweep config that resolves back to exactly `spec`
        static RunConfig from_spec(const SweepSpec &spec);

        friend bool operator==(const RunConfig &, const RunConfig &) = default;
    };

    // TOML document -> validated RunConfig. Unknown keys are errors; every message names the key path.
    //
    //   name, preset, seed                          (top level)
    //   [geometry]   rows, cols, dx_m, dy_m, d1_m, theta_t_deg, theta_r_deg, frequency_hz
    //   [antennas]   gt, gr, gt_direct, gr_direct, tx_pattern, rx_pattern, cell_pattern
    //   [link]       pt_dbm, gamma_amplitude, calibration_offset_db
    //   [sweep]      d2_values_m | d2_start_m + d2_stop_m + (d2_step_m | d2_points), d2_spacing
    //   [strategies] list, iterations, grid_step_deg, max_sweeps, ris0_phase_deg
    //   [output]     dir, formats, verbosity
    //
    // With `preset`, only the override keys (seed, name, [strategies], [output],
    // link.calibration_offset_db) are accepted.
    RunConfig parse_config(std::string_view text);
    RunConfig load_config(const std::filesystem::path &path);

    // Canonical TOML. parse_config(render_config(c)) == c whenever the angles and transmit power of c are
    // images of decimal degree and dBm values, which holds for every parsed or preset config.
    std::string render_config(const RunConfig &config);
}

#endif
