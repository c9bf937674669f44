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

#ifndef RISSIM_CHANNEL_HPP
#define RISSIM_CHANNEL_HPP

#include "rissim/geometry.hpp"
#include "rissim/patterns.hpp"

#include <complex>
#include <span>
#include <vector>

namespace rissim
{
    using complex = std::complex<double>;

    // Reduces a phase to [0, 2*pi)
    double wrap_phase(double phase);

    // e^{j*phase}, exact for multiples of pi/2 so that binary configurations are exactly +-A
    complex unit_phasor(double phase);

    // Per-cell reflection coefficient Gamma = A * e^{j*phi}, row-major, A in [0, 1], phi in [0, 2*pi)
    class PhaseConfiguration
    {
    public:
        PhaseConfiguration() = default;
        PhaseConfiguration(std::size_t rows, std::size_t cols, double amplitude = 0.0, double phase = 0.0);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        std::size_t size() const { return amplitude_.size(); }

        double amplitude(std::size_t flat) const { return amplitude_.at(flat); }
        double phase(std::size_t flat) const { return phase_.at(flat); }
        complex coefficient(std::size_t flat) const { return amplitude_.at(flat) * unit_phasor(phase_.at(flat)); }

        double amplitude(CellIndex idx) const { return amplitude_[flat(idx)]; }
        double phase(CellIndex idx) const { return phase_[flat(idx)]; }
        complex coefficient(CellIndex idx) const { return coefficient(flat(idx)); }

        // Throws ConfigError for amplitudes outside [0, 1]; the phase is wrapped
        void set(std::size_t flat, double amplitude, double phase);
        void set(CellIndex idx, double amplitude, double phase) { set(flat(idx), amplitude, phase); }

        friend bool operator==(const PhaseConfiguration &, const PhaseConfiguration &) = default;

    private:
        std::size_t flat(CellIndex idx) const;

        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<double> amplitude_;
        std::vector<double> phase_;
    };

    // Full input to one received-power evaluation
    struct Scenario
    {
        GeometryConfig geometry;
        AntennaSpec tx_antenna;
        AntennaSpec rx_antenna;
        PatternModel cell_pattern = PatternModel::cosine_power(1.0);
        double tx_power = 1e-3;              // P_t [W]
        double reflection_amplitude = 0.8;   // |Gamma| used by every optimizer
        double calibration_offset_db = 0.0;  // added to reported dBm

        void validate() const;
        friend bool operator==(const Scenario &, const Scenario &) = default;
    };

    struct PathFields
    {
        complex reflected_sum; // S^r
        complex los;           // S_LOS
        double los_power = 0;  // P_LOS [W]
        double total_power = 0; // |S^r + S_LOS|^2 [W]
    };

    enum class Summation
    {
        plain,       // left-to-right row-major
        compensated, // error-free transformation, reference path
    };

    // Reflected phasor of a single cell with coefficient gamma
    complex cell_phasor(const CellGeometry &cell, complex gamma, const Scenario &scenario);

    double los_power(const Scenario &scenario);
    complex los_phasor(const Scenario &scenario);

    complex reflected_field(const Scenario &scenario, const PhaseConfiguration &config);
    PathFields received_power(const Scenario &scenario, const PhaseConfiguration &config);

    // 10*log10(p / 1 mW); throws DomainError for p <= 0
    double watts_to_dbm(double watts);
    double dbm_to_watts(double dbm);

    inline constexpr double reported_floor_dbm = -300.0;

    // Physical power converted to dBm plus the calibration offset, never below the -300 dBm floor
    double reported_dbm(double watts, double calibration_offset_db);

    // A scenario with its per-cell geometry and unit-reflection phasors (Gamma = 1) computed once.
    // Immutable after construction; safe to share between threads.
    class LinkModel
    {
    public:
        explicit LinkModel(Scenario scenario);

        const Scenario &scenario() const { return scenario_; }
        std::size_t cell_count() const { return unit_.size(); }
        std::span<const CellGeometry> cells() const { return cells_; }
        std::span<const complex> unit_phasors() const { return unit_; }
        complex unit_sum() const { return unit_sum_; }             // sum of c_{n,m}
        double unit_magnitude_sum() const { return unit_abs_sum_; } // sum of |c_{n,m}|
        complex los_phasor() const { return los_; }
        double los_power() const { return los_power_; }

        complex reflected_field(const PhaseConfiguration &config, Summation mode = Summation::plain) const;
        PathFields evaluate(const PhaseConfiguration &config, Summation mode = Summation::plain) const;

    private:
        void check_dimensions(const PhaseConfiguration &config) const;

        Scenario scenario_;
        std::vector<CellGeometry> cells_;
        std::vector<complex> unit_;
        complex unit_sum_;
        double unit_abs_sum_ = 0.0;
        complex los_;
        double los_power_ = 0.0;
    };
}

#endif
