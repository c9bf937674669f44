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

#ifndef RISSIM_PATTERNS_HPP
#define RISSIM_PATTERNS_HPP

#include "rissim/geometry.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace rissim
{
    // Normalized power radiation pattern, elevation-only.
    // Values are in [0, 1]; values below 1e-300 are flushed to 0.
    class PatternModel
    {
    public:
        struct Isotropic
        {
            friend bool operator==(const Isotropic &, const Isotropic &) = default;
        };

        // (cos theta)^exponent on the front hemisphere. Behind the element (theta > pi/2) the value is 0
        // when clamped, |cos theta|^exponent otherwise.
        struct CosinePower
        {
            double exponent = 1.0;
            bool clamp_back = true;
            friend bool operator==(const CosinePower &, const CosinePower &) = default;
        };

        PatternModel() = default; // isotropic

        static PatternModel isotropic() { return PatternModel{}; }
        static PatternModel cosine_power(double exponent, bool clamp_back = true); // throws ConfigError for q < 0

        double operator()(double theta, double phi = 0.0) const;

        bool is_isotropic() const { return std::holds_alternative<Isotropic>(model_); }
        const std::variant<Isotropic, CosinePower> &model() const { return model_; }

        // "isotropic" or "cos^q"; parse() accepts the same spellings
        std::string to_string() const;
        static PatternModel parse(std::string_view text);

        friend bool operator==(const PatternModel &, const PatternModel &) = default;

    private:
        explicit PatternModel(CosinePower p) : model_(p) {}
        std::variant<Isotropic, CosinePower> model_;
    };

    inline constexpr double pattern_floor = 1e-300;

    // theta must be in [0, pi]; throws DomainError otherwise
    double pattern_value(const PatternModel &model, double theta, double phi = 0.0);

    struct AntennaSpec
    {
        double gain_ris_path = 1.0;    // G_t or G_r (linear)
        double gain_direct_path = 1.0; // G_t' or G_r' (linear)
        PatternModel pattern;          // applied on the RIS path only; the direct pair is boresight-aligned

        void validate(const char *which) const;
        friend bool operator==(const AntennaSpec &, const AntennaSpec &) = default;
    };

    // Product F_tx * F_cell(incident) * F_cell(reflected) * F_rx for one cell
    double combined_pattern(const CellGeometry &cell, const AntennaSpec &tx, const AntennaSpec &rx,
                            const PatternModel &cell_pattern);
}

#endif
