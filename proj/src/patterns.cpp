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

#include "rissim/patterns.hpp"
#include "rissim/errors.hpp"

#include <charconv>
#include <fmt/format.h>

namespace rissim
{
    namespace
    {
        double flush(double v) { return v < pattern_floor ? 0.0 : v; }
    }

    PatternModel PatternModel::cosine_power(double exponent, bool clamp_back)
    {
        if (!std::isfinite(exponent) || exponent < 0.0)
            throw ConfigError(fmt::format("cosine pattern exponent must be finite and >= 0 (got {})", exponent));
        return PatternModel{CosinePower{exponent, clamp_back}};
    }

    double PatternModel::operator()(double theta, double /*phi*/) const
    {
        if (!(theta >= 0.0 && theta <= pi))
            throw DomainError(fmt::format("pattern elevation {} rad outside [0, pi]", theta));

        if (is_isotropic())
            return 1.0;

        const auto &p = std::get<CosinePower>(model_);
        double c = std::cos(theta);
        if (theta > pi / 2.0)
        {
            if (p.clamp_back)
                return 0.0;
            c = -c;
        }
        // cos(pi/2) evaluates to ~6e-17, never negative on the front side
        return flush(std::pow(std::max(c, 0.0), p.exponent));
    }

    std::string PatternModel::to_string() const
    {
        if (is_isotropic())
            return "isotropic";
        return fmt::format("cos^{}", std::get<CosinePower>(model_).exponent);
    }

    PatternModel PatternModel::parse(std::string_view text)
    {
        if (text == "isotropic")
            return isotropic();
        constexpr std::string_view prefix = "cos^";
        if (text.starts_with(prefix))
        {
            const std::string_view digits = text.substr(prefix.size());
            double q = 0.0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty())
                return cosine_power(q);
        }
        throw ConfigError(fmt::format("unknown pattern \"{}\" (expected \"isotropic\" or \"cos^q\")", text));
    }

    double pattern_value(const PatternModel &model, double theta, double phi)
    {
        return model(theta, phi);
    }

    void AntennaSpec::validate(const char *which) const
    {
        if (!std::isfinite(gain_ris_path) || gain_ris_path <= 0.0)
            throw ConfigError(fmt::format("{} RIS-path gain must be > 0 (got {})", which, gain_ris_path));
        if (!std::isfinite(gain_direct_path) || gain_direct_path <= 0.0)
            throw ConfigError(fmt::format("{} direct-path gain must be > 0 (got {})", which, gain_direct_path));
    }

    double combined_pattern(const CellGeometry &cell, const AntennaSpec &tx, const AntennaSpec &rx,
                            const PatternModel &cell_pattern)
    {
        const double f = tx.pattern(cell.theta_tx, cell.phi_tx) *
                         cell_pattern(cell.theta_cell_t, cell.phi_cell_t) *
                         cell_pattern(cell.theta_cell_r, cell.phi_cell_r) *
                         rx.pattern(cell.theta_rx, cell.phi_rx);
        return flush(f);
    }
}
