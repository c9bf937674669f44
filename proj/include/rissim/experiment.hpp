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

#ifndef RISSIM_EXPERIMENT_HPP
#define RISSIM_EXPERIMENT_HPP

#include "rissim/optimize.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rissim
{
    // Receiver distances of a sweep: explicit list, linear range or log-spaced range
    struct DistanceAxis
    {
        struct List
        {
            std::vector<double> values;
            friend bool operator==(const List &, const List &) = default;
        };
        struct Linear
        {
            double start = 1.0, stop = 1.0, step = 1.0;
            friend bool operator==(const Linear &, const Linear &) = default;
        };
        struct Log
        {
            double start = 1.0, stop = 100.0;
            std::size_t points = 200;
            friend bool operator==(const Log &, const Log &) = default;
        };

        std::variant<List, Linear, Log> spec = List{};

        // Expanded values; throws ConfigError unless strictly positive and strictly increasing
        std::vector<double> values() const;

        friend bool operator==(const DistanceAxis &, const DistanceAxis &) = default;
    };

    struct SweepSpec
    {
        std::string name = "custom";
        Scenario scenario; // geometry.d2 is replaced per point; presets keep it at the first distance
        DistanceAxis d2;
        std::vector<StrategyId> strategies;
        StrategyParams params;
        std::uint64_t seed = 0;

        void validate() const;
        friend bool operator==(const SweepSpec &, const SweepSpec &) = default;
    };

    struct StrategyOutcome
    {
        double reported_dbm = 0.0; // calibration applied, floored at -300 dBm
        double power = 0.0;        // physical total power [W]
        std::size_t evaluations = 0;
        std::optional<double> global_phase;
        std::optional<std::uint64_t> seed;
    };

    struct SweepRow
    {
        double d2 = 0.0;
        std::vector<StrategyOutcome> outcomes; // same order as SweepResult::strategies
    };

    struct SweepResult
    {
        std::string name;
        std::vector<StrategyId> strategies;
        std::vector<SweepRow> rows;

        std::vector<double> distances() const;
        std::vector<double> series_dbm(StrategyId id) const; // throws ConfigError if not in the sweep
        std::vector<double> series_watts(StrategyId id) const;
    };

    // Child stream seed for one distance point. Keyed on the distance value, not its position,
    // so any subset of a sweep reproduces the same per-point results.
    std::uint64_t child_seed(std::uint64_t seed, double d2);

    // threads == 0 picks hardware concurrency; results never depend on the thread count
    SweepResult run_sweep(const SweepSpec &spec, unsigned threads = 0);

    SweepSpec preset_fig3a();
    SweepSpec preset_fig3b();
    SweepSpec preset_fig5();
    std::optional<SweepSpec> preset_by_name(std::string_view name);
    inline constexpr std::array<std::string_view, 3> preset_names{"fig3a", "fig3b", "fig5"};

    struct FadingMetrics
    {
        std::size_t local_minima = 0;
        std::size_t local_maxima = 0;
        double max_peak_to_trough_db = 0.0; // largest swing between consecutive interior extrema
        double monotone_fraction = 0.0;     // share of consecutive pairs that strictly decrease
    };

    // Series ordered by strictly increasing d2; needs at least 3 points (DomainError otherwise)
    FadingMetrics fading_metrics(std::span<const double> d2, std::span<const double> dbm);
}

#endif
