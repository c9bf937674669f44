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

#include "rissim/optimize.hpp"
#include "rissim/errors.hpp"
#include "rissim/summation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <fmt/format.h>

namespace rissim
{
    namespace
    {
        struct StrategyNames
        {
            StrategyId id;
            std::string_view display, column, cli;
        };

        constexpr std::array<StrategyNames, 8> strategy_names{{
            {StrategyId::ris0, "RIS0", "ris0", "ris0"},
            {StrategyId::ris1, "RIS1", "ris1", "ris1"},
            {StrategyId::ris2_grid, "RIS2_GRID", "ris2_grid", "ris2-grid"},
            {StrategyId::ris2_analytic, "RIS2_ANALYTIC", "ris2_analytic", "ris2-analytic"},
            {StrategyId::ris3_random, "RIS3_RANDOM", "ris3_random", "ris3-random"},
            {StrategyId::ris3_greedy, "RIS3_GREEDY", "ris3_greedy", "ris3-greedy"},
            {StrategyId::ris4, "RIS4", "ris4", "ris4"},
            {StrategyId::exhaustive_binary, "EXHAUSTIVE_BINARY", "exhaustive_binary", "exhaustive-binary"},
        }};

        const StrategyNames &names_of(StrategyId id)
        {
            return *std::find_if(strategy_names.begin(), strategy_names.end(),
                                 [id](const StrategyNames &n) { return n.id == id; });
        }

        // |A * e^{j*alpha} * sum(c) + L|^2 for a uniform surface
        double uniform_power(const LinkModel &model, double amplitude, double alpha)
        {
            return std::norm(amplitude * unit_phasor(alpha) * model.unit_sum() + model.los_phasor());
        }

        OptimizationResult uniform_result(const LinkModel &model, double alpha, std::size_t evaluations)
        {
            const GeometryConfig &g = model.scenario().geometry;
            OptimizationResult r;
            r.config = PhaseConfiguration(g.rows, g.cols, model.scenario().reflection_amplitude, alpha);
            r.power = model.evaluate(r.config, Summation::compensated).total_power;
            r.evaluations = evaluations;
            r.global_phase = r.config.phase(0);
            return r;
        }

        // bit set -> phase pi
        PhaseConfiguration binary_config(const LinkModel &model, const std::vector<std::uint8_t> &bits)
        {
            const GeometryConfig &g = model.scenario().geometry;
            const double a = model.scenario().reflection_amplitude;
            PhaseConfiguration config(g.rows, g.cols, a, 0.0);
            for (std::size_t k = 0; k < bits.size(); ++k)
                if (bits[k])
                    config.set(k, a, pi);
            return config;
        }

        // Field of a binary configuration, A * (S0 - 2 * sum_{bit set} c) + L, given the masked sum
        complex binary_field(double amplitude, complex unit_sum, complex flipped_sum, complex los)
        {
            return amplitude * (unit_sum - 2.0 * flipped_sum) + los;
        }

        OptimizationResult finish_binary(const LinkModel &model, const std::vector<std::uint8_t> &bits,
                                         std::size_t evaluations)
        {
            OptimizationResult r;
            r.config = binary_config(model, bits);
            r.power = model.evaluate(r.config, Summation::compensated).total_power;
            r.evaluations = evaluations;
            return r;
        }
    }

    std::string_view display_name(StrategyId id) { return names_of(id).display; }
    std::string_view column_name(StrategyId id) { return names_of(id).column; }
    std::string_view cli_name(StrategyId id) { return names_of(id).cli; }

    std::optional<StrategyId> parse_strategy(std::string_view text)
    {
        std::string upper(text);
        for (char &ch : upper)
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        for (const StrategyNames &n : strategy_names)
            if (text == n.cli || text == n.column || upper == n.display)
                return n.id;
        return std::nullopt;
    }

    void StrategyParams::validate() const
    {
        if (iterations < 1)
            throw ConfigError("iterations must be >= 1");
        if (!(grid_step > 0.0 && grid_step <= pi))
            throw ConfigError(fmt::format("grid step must be in (0, 180] deg (got {} deg)", rad_to_deg(grid_step)));
        if (max_sweeps < 1)
            throw ConfigError("max_sweeps must be >= 1");
        if (!std::isfinite(ris0_phase))
            throw ConfigError("RIS0 phase must be finite");
    }

    PhaseConfiguration ris0_uniform(const Scenario &scenario, double amplitude, double phase)
    {
        return PhaseConfiguration(scenario.geometry.rows, scenario.geometry.cols, amplitude, phase);
    }

    OptimizationResult optimize_ris0(const LinkModel &model, double phase)
    {
        return uniform_result(model, wrap_phase(phase), 1);
    }

    OptimizationResult optimize_ris1(const LinkModel &model)
    {
        const double a = model.scenario().reflection_amplitude;
        const double alpha = uniform_power(model, a, pi) > uniform_power(model, a, 0.0) ? pi : 0.0;
        return uniform_result(model, alpha, 2);
    }

    OptimizationResult optimize_ris2_grid(const LinkModel &model, double step)
    {
        if (!(step > 0.0 && step <= pi))
            throw ConfigError(fmt::format("grid step must be in (0, pi] (got {})", step));

        const double a = model.scenario().reflection_amplitude;
        double best_alpha = 0.0;
        double best = -1.0;
        std::size_t evaluations = 0;
        for (std::size_t k = 0;; ++k)
        {
            const double alpha = static_cast<double>(k) * step;
            if (alpha >= two_pi * (1.0 - 1e-12))
                break;
            const double p = uniform_power(model, a, alpha);
            ++evaluations;
            if (p > best)
            {
                best = p;
                best_alpha = alpha;
            }
        }
        return uniform_result(model, best_alpha, evaluations);
    }

    OptimizationResult optimize_ris2_analytic(const LinkModel &model)
    {
        const complex s0 = model.unit_sum();
        const double a = model.scenario().reflection_amplitude;
        double alpha = 0.0;
        if (a > 0.0 && std::abs(s0) > 0.0)
            alpha = wrap_phase(std::arg(model.los_phasor()) - std::arg(s0));
        return uniform_result(model, alpha, 1);
    }

    OptimizationResult optimize_ris3_random(const LinkModel &model, std::size_t iterations, std::uint64_t seed)
    {
        if (iterations < 1)
            throw ConfigError("iterations must be >= 1");

        const std::span<const complex> c = model.unit_phasors();
        const std::size_t cells = c.size();
        const double a = model.scenario().reflection_amplitude;
        const complex s0 = model.unit_sum();
        const complex los = model.los_phasor();

        // The two uniform surfaces are always candidates
        std::vector<std::uint8_t> best_bits(cells, 0);
        double best = std::norm(binary_field(a, s0, 0.0, los));
        if (std::norm(binary_field(a, s0, s0, los)) > best)
        {
            best = std::norm(binary_field(a, s0, s0, los));
            std::fill(best_bits.begin(), best_bits.end(), std::uint8_t{1});
        }

        // Raw engine output only: std::*_distribution is implementation-defined
        std::mt19937_64 rng(seed);
        std::vector<std::uint8_t> bits(cells);
        for (std::size_t it = 0; it < iterations; ++it)
        {
            double re = 0.0, im = 0.0;
            for (std::size_t base = 0; base < cells; base += 64)
            {
                const std::uint64_t word = rng();
                const std::size_t end = std::min(cells, base + 64);
                for (std::size_t k = base; k < end; ++k)
                {
                    const std::uint8_t bit = static_cast<std::uint8_t>((word >> (k - base)) & 1U);
                    bits[k] = bit;
                    const double mask = bit;
                    re += mask * c[k].real();
                    im += mask * c[k].imag();
                }
            }
            const double p = std::norm(binary_field(a, s0, {re, im}, los));
            if (p > best)
            {
                best = p;
                best_bits = bits;
            }
        }

        OptimizationResult r = finish_binary(model, best_bits, iterations + 2);
        r.seed = seed;
        return r;
    }

    OptimizationResult optimize_ris3_greedy(const LinkModel &model, std::size_t max_sweeps)
    {
        if (max_sweeps < 1)
            throw ConfigError("max_sweeps must be >= 1");

        const std::span<const complex> c = model.unit_phasors();
        const std::size_t cells = c.size();
        const double a = model.scenario().reflection_amplitude;
        const complex los = model.los_phasor();

        const OptimizationResult start = optimize_ris1(model);
        std::vector<std::uint8_t> bits(cells, start.config.phase(0) == pi ? 1 : 0);

        // Rounding in the incremental update must not register as an improvement
        constexpr double margin = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();

        std::size_t sweeps = 0, flips = 0, evaluations = start.evaluations;
        while (sweeps < max_sweeps)
        {
            ++sweeps;
            CompensatedComplexSum<double> sum;
            for (std::size_t k = 0; k < cells; ++k)
                sum += (bits[k] ? -a : a) * c[k];
            complex field = sum.value() + los;
            double power = std::norm(field);

            std::size_t sweep_flips = 0;
            for (std::size_t k = 0; k < cells; ++k)
            {
                const complex candidate = field - 2.0 * (bits[k] ? -a : a) * c[k];
                const double p = std::norm(candidate);
                ++evaluations;
                if (p > power * margin)
                {
                    bits[k] ^= 1U;
                    field = candidate;
                    power = p;
                    ++sweep_flips;
                }
            }
            flips += sweep_flips;
            if (sweep_flips == 0)
                break;
        }

        OptimizationResult r = finish_binary(model, bits, evaluations);
        r.sweeps = sweeps;
        r.flips = flips;
        return r;
    }

    OptimizationResult optimize_ris4(const LinkModel &model)
    {
        const GeometryConfig &g = model.scenario().geometry;
        const double a = model.scenario().reflection_amplitude;
        const double target = std::arg(model.los_phasor());
        const std::span<const complex> c = model.unit_phasors();

        OptimizationResult r;
        r.config = PhaseConfiguration(g.rows, g.cols, a, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k)
            if (std::abs(c[k]) > 0.0)
                r.config.set(k, a, target - std::arg(c[k]));
        r.power = model.evaluate(r.config, Summation::compensated).total_power;
        r.evaluations = 1;
        return r;
    }

    OptimizationResult exhaustive_binary_oracle(const LinkModel &model)
    {
        const std::span<const complex> c = model.unit_phasors();
        const std::size_t cells = c.size();
        if (cells > exhaustive_cell_limit)
            throw CapacityError(fmt::format("exhaustive search limited to {} cells (grid has {})",
                                            exhaustive_cell_limit, cells));

        const double a = model.scenario().reflection_amplitude;
        const complex s0 = model.unit_sum();
        const complex los = model.los_phasor();
        const std::uint64_t count = std::uint64_t{1} << cells;

        std::uint64_t best_pattern = 0;
        double best = -1.0;
        for (std::uint64_t pattern = 0; pattern < count; ++pattern)
        {
            complex flipped = 0.0;
            for (std::size_t k = 0; k < cells; ++k)
                if ((pattern >> (cells - 1 - k)) & 1U)
                    flipped += c[k];
            const double p = std::norm(binary_field(a, s0, flipped, los));
            if (p > best)
            {
                best = p;
                best_pattern = pattern;
            }
        }

        std::vector<std::uint8_t> bits(cells);
        for (std::size_t k = 0; k < cells; ++k)
            bits[k] = static_cast<std::uint8_t>((best_pattern >> (cells - 1 - k)) & 1U);
        return finish_binary(model, bits, static_cast<std::size_t>(count));
    }

    double upper_bound_power(const LinkModel &model, double amplitude)
    {
        if (!(amplitude >= 0.0 && amplitude <= 1.0))
            throw ConfigError(fmt::format("amplitude must be in [0, 1] (got {})", amplitude));
        const double reflected = amplitude * model.unit_magnitude_sum();
        if (reflected == 0.0)
            return model.los_power();
        const double coherent = reflected + std::sqrt(model.los_power());
        return coherent * coherent;
    }

    OptimizationResult run_strategy(const LinkModel &model, StrategyId id, const StrategyParams &params,
                                    std::uint64_t seed)
    {
        switch (id)
        {
        case StrategyId::ris0:
            return optimize_ris0(model, params.ris0_phase);
        case StrategyId::ris1:
            return optimize_ris1(model);
        case StrategyId::ris2_grid:
            return optimize_ris2_grid(model, params.grid_step);
        case StrategyId::ris2_analytic:
            return optimize_ris2_analytic(model);
        case StrategyId::ris3_random:
            return optimize_ris3_random(model, params.iterations, seed);
        case StrategyId::ris3_greedy:
            return optimize_ris3_greedy(model, params.max_sweeps);
        case StrategyId::ris4:
            return optimize_ris4(model);
        case StrategyId::exhaustive_binary:
            return exhaustive_binary_oracle(model);
        }
        throw ConfigError("unknown strategy");
    }

    OptimizationResult optimize_ris1(const Scenario &s) { return optimize_ris1(LinkModel(s)); }
    OptimizationResult optimize_ris2_grid(const Scenario &s, double step) { return optimize_ris2_grid(LinkModel(s), step); }
    OptimizationResult optimize_ris2_analytic(const Scenario &s) { return optimize_ris2_analytic(LinkModel(s)); }
    OptimizationResult optimize_ris3_random(const Scenario &s, std::size_t iterations, std::uint64_t seed)
    {
        return optimize_ris3_random(LinkModel(s), iterations, seed);
    }
    OptimizationResult optimize_ris3_greedy(const Scenario &s, std::size_t max_sweeps)
    {
        return optimize_ris3_greedy(LinkModel(s), max_sweeps);
    }
    OptimizationResult optimize_ris4(const Scenario &s) { return optimize_ris4(LinkModel(s)); }
    OptimizationResult exhaustive_binary_oracle(const Scenario &s) { return exhaustive_binary_oracle(LinkModel(s)); }
    double upper_bound_power(const Scenario &s, double amplitude) { return upper_bound_power(LinkModel(s), amplitude); }
}
