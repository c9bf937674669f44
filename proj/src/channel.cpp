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

#include "rissim/channel.hpp"
#include "rissim/errors.hpp"
#include "rissim/summation.hpp"

#include <fmt/format.h>

namespace rissim
{
    double wrap_phase(double phase)
    {
        if (!std::isfinite(phase))
            throw DomainError("phase must be finite");
        double p = std::fmod(phase, two_pi);
        if (p < 0.0)
            p += two_pi;
        if (p >= two_pi) // -tiny + 2*pi rounds up to 2*pi
            p = 0.0;
        return p;
    }

    complex unit_phasor(double phase)
    {
        if (phase == 0.0)
            return {1.0, 0.0};
        if (phase == pi)
            return {-1.0, 0.0};
        if (phase == pi / 2.0)
            return {0.0, 1.0};
        if (phase == 1.5 * pi)
            return {0.0, -1.0};
        return {std::cos(phase), std::sin(phase)};
    }

    // ---------------------------------------------------------------- PhaseConfiguration

    PhaseConfiguration::PhaseConfiguration(std::size_t rows, std::size_t cols, double amplitude, double phase)
        : rows_(rows), cols_(cols)
    {
        if (rows == 0 || cols == 0)
            throw ConfigError("phase configuration needs at least one cell");
        if (!(amplitude >= 0.0 && amplitude <= 1.0))
            throw ConfigError(fmt::format("reflection amplitude must be in [0, 1] (got {})", amplitude));
        amplitude_.assign(rows * cols, amplitude);
        phase_.assign(rows * cols, wrap_phase(phase));
    }

    void PhaseConfiguration::set(std::size_t flat, double amplitude, double phase)
    {
        if (flat >= amplitude_.size())
            throw IndexError(fmt::format("flat cell index {} outside configuration of {} cells", flat, size()));
        if (!(amplitude >= 0.0 && amplitude <= 1.0))
            throw ConfigError(fmt::format("reflection amplitude must be in [0, 1] (got {})", amplitude));
        amplitude_[flat] = amplitude;
        phase_[flat] = wrap_phase(phase);
    }

    std::size_t PhaseConfiguration::flat(CellIndex idx) const
    {
        if (idx.n < 1 || idx.n > rows_ || idx.m < 1 || idx.m > cols_)
            throw IndexError(fmt::format("cell ({}, {}) outside {}x{} configuration", idx.n, idx.m, rows_, cols_));
        return (idx.n - 1) * cols_ + (idx.m - 1);
    }

    // ---------------------------------------------------------------- Scenario

    void Scenario::validate() const
    {
        geometry.validate();
        tx_antenna.validate("tx");
        rx_antenna.validate("rx");
        if (!std::isfinite(tx_power) || tx_power <= 0.0)
            throw ConfigError(fmt::format("transmit power must be > 0 W (got {})", tx_power));
        if (!(reflection_amplitude >= 0.0 && reflection_amplitude <= 1.0))
            throw ConfigError(fmt::format("reflection amplitude must be in [0, 1] (got {})", reflection_amplitude));
        if (!std::isfinite(calibration_offset_db))
            throw ConfigError("calibration offset must be finite");
    }

    // ---------------------------------------------------------------- free functions

    complex cell_phasor(const CellGeometry &cell, complex gamma, const Scenario &scenario)
    {
        const GeometryConfig &g = scenario.geometry;
        const double f = combined_pattern(cell, scenario.tx_antenna, scenario.rx_antenna, scenario.cell_pattern);
        const double magnitude = g.cell_dx * g.cell_dy *
                                 std::sqrt(scenario.tx_power * scenario.tx_antenna.gain_ris_path *
                                           scenario.rx_antenna.gain_ris_path * f) /
                                 (4.0 * pi * cell.r_t * cell.r_r);
        return gamma * std::polar(magnitude, -cell.path_phase);
    }

    double los_power(const Scenario &scenario)
    {
        const double d = los_distance(scenario.geometry);
        const double lambda = scenario.geometry.wavelength();
        const double path = 4.0 * pi * d;
        return scenario.tx_power * scenario.tx_antenna.gain_direct_path * scenario.rx_antenna.gain_direct_path *
               lambda * lambda / (path * path);
    }

    complex los_phasor(const Scenario &scenario)
    {
        return std::polar(std::sqrt(los_power(scenario)), -los_path_phase(scenario.geometry));
    }

    complex reflected_field(const Scenario &scenario, const PhaseConfiguration &config)
    {
        return LinkModel(scenario).reflected_field(config, Summation::compensated);
    }

    PathFields received_power(const Scenario &scenario, const PhaseConfiguration &config)
    {
        return LinkModel(scenario).evaluate(config, Summation::compensated);
    }

    double watts_to_dbm(double watts)
    {
        if (!(watts > 0.0) || !std::isfinite(watts))
            throw DomainError(fmt::format("power must be finite and > 0 W for dBm conversion (got {})", watts));
        return 10.0 * std::log10(watts / 1e-3);
    }

    double dbm_to_watts(double dbm)
    {
        if (!std::isfinite(dbm))
            throw DomainError("dBm value must be finite");
        return 1e-3 * std::pow(10.0, dbm / 10.0);
    }

    double reported_dbm(double watts, double calibration_offset_db)
    {
        if (!(watts > 0.0))
            return reported_floor_dbm;
        return std::max(watts_to_dbm(watts) + calibration_offset_db, reported_floor_dbm);
    }

    // ---------------------------------------------------------------- LinkModel

    LinkModel::LinkModel(Scenario scenario) : scenario_(std::move(scenario))
    {
        scenario_.validate();
        cells_ = cell_geometry(scenario_.geometry);

        unit_.reserve(cells_.size());
        CompensatedComplexSum<double> sum;
        CompensatedSum<double> abs_sum;
        for (const CellGeometry &cell : cells_)
        {
            const complex c = cell_phasor(cell, 1.0, scenario_);
            unit_.push_back(c);
            sum += c;
            abs_sum += std::abs(c);
        }
        unit_sum_ = sum.value();
        unit_abs_sum_ = abs_sum.value();

        los_power_ = rissim::los_power(scenario_);
        los_ = rissim::los_phasor(scenario_);
    }

    void LinkModel::check_dimensions(const PhaseConfiguration &config) const
    {
        const GeometryConfig &g = scenario_.geometry;
        if (config.rows() != g.rows || config.cols() != g.cols)
            throw ConfigError(fmt::format("phase configuration is {}x{} but the RIS is {}x{}", config.rows(),
                                          config.cols(), g.rows, g.cols));
    }

    complex LinkModel::reflected_field(const PhaseConfiguration &config, Summation mode) const
    {
        check_dimensions(config);
        if (mode == Summation::compensated)
        {
            CompensatedComplexSum<double> sum;
            for (std::size_t i = 0; i < unit_.size(); ++i)
                sum += config.coefficient(i) * unit_[i];
            return sum.value();
        }
        complex sum = 0.0;
        for (std::size_t i = 0; i < unit_.size(); ++i)
            sum += config.coefficient(i) * unit_[i];
        return sum;
    }

    PathFields LinkModel::evaluate(const PhaseConfiguration &config, Summation mode) const
    {
        PathFields out;
        out.reflected_sum = reflected_field(config, mode);
        out.los = los_;
        out.los_power = los_power_;
        // A silent surface leaves exactly the Friis power
        out.total_power = out.reflected_sum == complex{} ? los_power_ : std::norm(out.reflected_sum + los_);
        return out;
    }
}
