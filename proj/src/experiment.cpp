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

#include "rissim/experiment.hpp"
#include "rissim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>
#include <fmt/format.h>

namespace rissim
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        void check_distances(const std::vector<double> &v)
        {
            if (v.empty())
                throw ConfigError("d2 axis has no points");
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (!std::isfinite(v[i]) || v[i] <= 0.0)
                    throw ConfigError(fmt::format("d2 values must be finite and > 0 (value {} is {})", i, v[i]));
                if (i > 0 && !(v[i] > v[i - 1]))
                    throw ConfigError(fmt::format("d2 values must be strictly increasing (value {} is {} after {})",
                                                  i, v[i], v[i - 1]));
            }
        }

        // Free-space reference setup shared by the two simulation presets
        Scenario simulation_scenario(double theta_t_deg)
        {
            Scenario s;
            s.geometry.rows = 64;
            s.geometry.cols = 64;
            s.geometry.cell_dx = 3.8e-3;
            s.geometry.cell_dy = 3.8e-3;
            s.geometry.d1 = 1.0;
            s.geometry.d2 = 1.0;
            s.geometry.theta_t = deg_to_rad(theta_t_deg);
            s.geometry.theta_r = deg_to_rad(45.0);
            s.geometry.frequency = 35.0e9;
            s.tx_antenna = AntennaSpec{1.0, 1.0, PatternModel::isotropic()};
            s.rx_antenna = AntennaSpec{1.0, 1.0, PatternModel::isotropic()};
            s.cell_pattern = PatternModel::cosine_power(1.0);
            s.tx_power = dbm_to_watts(0.0);
            s.reflection_amplitude = 0.8;
            s.calibration_offset_db = 0.0;
            return s;
        }

        const std::vector<StrategyId> simulation_strategies{StrategyId::ris0, StrategyId::ris1,
                                                            StrategyId::ris2_analytic, StrategyId::ris3_random,
                                                            StrategyId::ris4};
    }

    std::vector<double> DistanceAxis::values() const
    {
        std::vector<double> out;
        if (const auto *list = std::get_if<List>(&spec))
        {
            out = list->values;
        }
        else if (const auto *lin = std::get_if<Linear>(&spec))
        {
            if (!std::isfinite(lin->start) || !std::isfinite(lin->stop) || !std::isfinite(lin->step) ||
                lin->step <= 0.0 || lin->stop < lin->start)
                throw ConfigError(fmt::format("invalid d2 range start={} stop={} step={}", lin->start, lin->stop,
                                              lin->step));
            const auto count = static_cast<std::size_t>(std::floor((lin->stop - lin->start) / lin->step + 1e-9)) + 1;
            out.reserve(count);
            for (std::size_t i = 0; i < count; ++i)
                out.push_back(lin->start + static_cast<double>(i) * lin->step);
        }
        else
        {
            const auto &lg = std::get<Log>(spec);
            if (lg.points < 1 || !std::isfinite(lg.start) || !std::isfinite(lg.stop) || lg.start <= 0.0 ||
                (lg.points > 1 && !(lg.stop > lg.start)) || (lg.points == 1 && lg.stop != lg.start))
                throw ConfigError(fmt::format("invalid log-spaced d2 range start={} stop={} points={}", lg.start,
                                              lg.stop, lg.points));
            out.reserve(lg.points);
            const double span = std::log(lg.stop / lg.start);
            for (std::size_t i = 0; i < lg.points; ++i)
            {
                if (i == 0)
                    out.push_back(lg.start);
                else if (i + 1 == lg.points)
                    out.push_back(lg.stop);
                else
                    out.push_back(lg.start * std::exp(span * static_cast<double>(i) /
                                                      static_cast<double>(lg.points - 1)));
            }
        }
        check_distances(out);
        return out;
    }

    void SweepSpec::validate() const
    {
        scenario.validate();
        params.validate();
        d2.values();
        if (strategies.empty())
            throw ConfigError("at least one strategy is required");
        const bool wants_oracle =
            std::find(strategies.begin(), strategies.end(), StrategyId::exhaustive_binary) != strategies.end();
        if (wants_oracle && scenario.geometry.cell_count() > exhaustive_cell_limit)
            throw ConfigError(fmt::format("strategy exhaustive-binary needs <= {} cells (grid has {})",
                                          exhaustive_cell_limit, scenario.geometry.cell_count()));
    }

    std::vector<double> SweepResult::distances() const
    {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const SweepRow &r : rows)
            out.push_back(r.d2);
        return out;
    }

    std::vector<double> SweepResult::series_dbm(StrategyId id) const
    {
        const auto it = std::find(strategies.begin(), strategies.end(), id);
        if (it == strategies.end())
            throw ConfigError(fmt::format("strategy {} not part of this sweep", display_name(id)));
        const auto col = static_cast<std::size_t>(it - strategies.begin());
        std::vector<double> out;
        out.reserve(rows.size());
        for (const SweepRow &r : rows)
            out.push_back(r.outcomes[col].reported_dbm);
        return out;
    }

    std::vector<double> SweepResult::series_watts(StrategyId id) const
    {
        const auto it = std::find(strategies.begin(), strategies.end(), id);
        if (it == strategies.end())
            throw ConfigError(fmt::format("strategy {} not part of this sweep", display_name(id)));
        const auto col = static_cast<std::size_t>(it - strategies.begin());
        std::vector<double> out;
        out.reserve(rows.size());
        for (const SweepRow &r : rows)
            out.push_back(r.outcomes[col].power);
        return out;
    }

    std::uint64_t child_seed(std::uint64_t seed, double d2)
    {
        return splitmix64(seed ^ splitmix64(std::bit_cast<std::uint64_t>(d2)));
    }

    SweepResult run_sweep(const SweepSpec &spec, unsigned threads)
    {
        spec.validate();
        const std::vector<double> distances = spec.d2.values();

        SweepResult result;
        result.name = spec.name;
        result.strategies = spec.strategies;
        result.rows.resize(distances.size());

        auto run_point = [&](std::size_t i) {
            Scenario s = spec.scenario;
            s.geometry.d2 = distances[i];
            const LinkModel model(std::move(s));
            const std::uint64_t seed = child_seed(spec.seed, distances[i]);

            SweepRow row;
            row.d2 = distances[i];
            for (StrategyId id : spec.strategies)
            {
                const OptimizationResult r = run_strategy(model, id, spec.params, seed);
                row.outcomes.push_back({reported_dbm(r.power, spec.scenario.calibration_offset_db), r.power,
                                        r.evaluations, r.global_phase, r.seed});
            }
            result.rows[i] = std::move(row);
        };

        if (threads == 0)
            threads = std::max(1U, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, distances.size()));

        if (threads <= 1)
        {
            for (std::size_t i = 0; i < distances.size(); ++i)
                run_point(i);
            return result;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < distances.size(); i = next++)
                    {
                        try
                        {
                            run_point(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    }
                });
        }
        if (failure)
            std::rethrow_exception(failure);
        return result;
    }

    SweepSpec preset_fig3a()
    {
        SweepSpec spec;
        spec.name = "fig3a";
        spec.scenario = simulation_scenario(45.0);
        spec.d2.spec = DistanceAxis::Log{1.0, 100.0, 200};
        spec.strategies = simulation_strategies;
        spec.seed = 42;
        return spec;
    }

    SweepSpec preset_fig3b()
    {
        SweepSpec spec = preset_fig3a();
        spec.name = "fig3b";
        spec.scenario.geometry.theta_t = deg_to_rad(30.0);
        return spec;
    }

    SweepSpec preset_fig5()
    {
        SweepSpec spec;
        spec.name = "fig5";
        Scenario &s = spec.scenario;
        s.geometry.rows = 30;
        s.geometry.cols = 30;
        s.geometry.cell_dx = 3.8e-3;
        s.geometry.cell_dy = 3.8e-3;
        s.geometry.d1 = 1.0;
        s.geometry.d2 = 0.6;
        s.geometry.theta_t = deg_to_rad(45.0);
        s.geometry.theta_r = deg_to_rad(45.0);
        s.geometry.frequency = 35.0e9;
        // Horn antennas: 25.1 dB towards the RIS, 21.1 dB on the direct pair
        s.tx_antenna = AntennaSpec{323.6, 128.8, PatternModel::cosine_power(161.0)};
        s.rx_antenna = AntennaSpec{323.6, 128.8, PatternModel::cosine_power(161.0)};
        s.cell_pattern = PatternModel::cosine_power(1.0);
        s.tx_power = dbm_to_watts(15.0);
        s.reflection_amplitude = 0.8;
        s.calibration_offset_db = 0.0;
        spec.d2.spec = DistanceAxis::Linear{0.6, 3.0, 0.2};
        spec.strategies = {StrategyId::ris0, StrategyId::ris1};
        spec.seed = 42;
        return spec;
    }

    std::optional<SweepSpec> preset_by_name(std::string_view name)
    {
        if (name == "fig3a")
            return preset_fig3a();
        if (name == "fig3b")
            return preset_fig3b();
        if (name == "fig5")
            return preset_fig5();
        return std::nullopt;
    }

    FadingMetrics fading_metrics(std::span<const double> d2, std::span<const double> dbm)
    {
        if (d2.size() != dbm.size())
            throw DomainError(fmt::format("series has {} distances but {} power values", d2.size(), dbm.size()));
        if (dbm.size() < 3)
            throw DomainError("fading metrics need at least 3 points");
        for (std::size_t i = 0; i < dbm.size(); ++i)
        {
            if (!std::isfinite(dbm[i]) || !std::isfinite(d2[i]))
                throw DomainError("fading metrics need finite values");
            if (i > 0 && !(d2[i] > d2[i - 1]))
                throw DomainError("fading metrics need strictly increasing distances");
        }

        FadingMetrics m;
        std::vector<double> extrema;
        for (std::size_t i = 1; i + 1 < dbm.size(); ++i)
        {
            if (dbm[i] < dbm[i - 1] && dbm[i] < dbm[i + 1])
            {
                ++m.local_minima;
                extrema.push_back(dbm[i]);
            }
            else if (dbm[i] > dbm[i - 1] && dbm[i] > dbm[i + 1])
            {
                ++m.local_maxima;
                extrema.push_back(dbm[i]);
            }
        }
        for (std::size_t i = 1; i < extrema.size(); ++i)
            m.max_peak_to_trough_db = std::max(m.max_peak_to_trough_db, std::abs(extrema[i] - extrema[i - 1]));

        std::size_t decreasing = 0;
        for (std::size_t i = 1; i < dbm.size(); ++i)
            if (dbm[i] < dbm[i - 1])
                ++decreasing;
        m.monotone_fraction = static_cast<double>(decreasing) / static_cast<double>(dbm.size() - 1);
        return m;
    }
}
