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

#ifndef RISSIM_OPTIMIZE_HPP
#define RISSIM_OPTIMIZE_HPP

#include "rissim/channel.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace rissim
{
    // RIS configuration classes
    //   RIS0               isophase surface, no optimization
    //   RIS1               one global phase from {0, pi}
    //   RIS2_GRID          one global phase, traversed on a grid over [0, 2*pi)
    //   RIS2_ANALYTIC      one global phase, closed form
    //   RIS3_RANDOM        per-cell {0, pi}, best of random draws (no CSI)
    //   RIS3_GREEDY        per-cell {0, pi}, coordinate ascent using CSI (not a replication strategy)
    //   RIS4               per-cell continuous phase, closed form (needs CSI)
    //   EXHAUSTIVE_BINARY  per-cell {0, pi}, full enumeration (test oracle, <= 20 cells)
    enum class StrategyId
    {
        ris0,
        ris1,
        ris2_grid,
        ris2_analytic,
        ris3_random,
        ris3_greedy,
        ris4,
        exhaustive_binary,
    };

    inline constexpr std::array all_strategies{
        StrategyId::ris0,        StrategyId::ris1,        StrategyId::ris2_grid, StrategyId::ris2_analytic,
        StrategyId::ris3_random, StrategyId::ris3_greedy, StrategyId::ris4,      StrategyId::exhaustive_binary,
    };

    std::string_view display_name(StrategyId id); // "RIS2_ANALYTIC"
    std::string_view column_name(StrategyId id);  // "ris2_analytic"
    std::string_view cli_name(StrategyId id);     // "ris2-analytic"

    // Accepts any of the three spellings above, case-insensitive for the display form
    std::optional<StrategyId> parse_strategy(std::string_view text);

    struct StrategyParams
    {
        std::size_t iterations = 1000;    // RIS3_RANDOM draws
        double grid_step = pi / 180.0;    // RIS2_GRID step [rad], 0 < step <= pi/2
        std::size_t max_sweeps = 100;     // RIS3_GREEDY sweep cap
        double ris0_phase = 0.0;          // global phase of the isophase baseline [rad]

        void validate() const;
        friend bool operator==(const StrategyParams &, const StrategyParams &) = default;
    };

    struct OptimizationResult
    {
        PhaseConfiguration config;
        double power = 0.0;                 // total received power of config [W]
        std::size_t evaluations = 0;        // objective evaluations spent
        std::optional<std::uint64_t> seed;  // randomized strategies only
        std::optional<double> global_phase; // integral (uniform) strategies only [rad]
        std::size_t sweeps = 0;             // RIS3_GREEDY only
        std::size_t flips = 0;              // RIS3_GREEDY only
    };

    PhaseConfiguration ris0_uniform(const Scenario &scenario, double amplitude, double phase = 0.0);

    OptimizationResult optimize_ris0(const LinkModel &model, double phase = 0.0);
    OptimizationResult optimize_ris1(const LinkModel &model);
    OptimizationResult optimize_ris2_grid(const LinkModel &model, double step);
    OptimizationResult optimize_ris2_analytic(const LinkModel &model);
    OptimizationResult optimize_ris3_random(const LinkModel &model, std::size_t iterations, std::uint64_t seed);
    OptimizationResult optimize_ris3_greedy(const LinkModel &model, std::size_t max_sweeps);
    OptimizationResult optimize_ris4(const LinkModel &model);

    inline constexpr std::size_t exhaustive_cell_limit = 20;

    // Enumerates all 2^(rows*cols) binary configurations; throws CapacityError above 20 cells.
    // Bit k (row-major, cell (1,1) most significant) set means phase pi. Ties go to the smallest pattern.
    OptimizationResult exhaustive_binary_oracle(const LinkModel &model);

    // (amplitude * sum |c| + sqrt(P_LOS))^2, the maximum over all per-cell phases
    double upper_bound_power(const LinkModel &model, double amplitude);

    // Dispatch by id; `seed` is only consumed by RIS3_RANDOM
    OptimizationResult run_strategy(const LinkModel &model, StrategyId id, const StrategyParams &params,
                                    std::uint64_t seed);

    // Scenario convenience overloads (build a LinkModel per call)
    OptimizationResult optimize_ris1(const Scenario &scenario);
    OptimizationResult optimize_ris2_grid(const Scenario &scenario, double step);
    OptimizationResult optimize_ris2_analytic(const Scenario &scenario);
    OptimizationResult optimize_ris3_random(const Scenario &scenario, std::size_t iterations, std::uint64_t seed);
    OptimizationResult optimize_ris3_greedy(const Scenario &scenario, std::size_t max_sweeps);
    OptimizationResult optimize_ris4(const Scenario &scenario);
    OptimizationResult exhaustive_binary_oracle(const Scenario &scenario);
    double upper_bound_power(const Scenario &scenario, double amplitude);
}

#endif
