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


// Independent reference implementations used by the unit tests and the acceptance runner.
// Everything here is written directly from the link-budget formulas in extended precision and
// shares no code with the library beyond reading the input structs.

#ifndef RISSIM_TESTS_ORACLE_HPP
#define RISSIM_TESTS_ORACLE_HPP

#include "rissim/channel.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle
{
    using real = long double;
    using cplx = std::complex<long double>;

    constexpr real pi_l = 3.141592653589793238462643383279502884L;
    constexpr real c0 = 299792458.0L;

    // Normalized power pattern evaluated from the cosine of the off-axis angle
    inline real pattern_from_cos(const rissim::PatternModel &p, real cos_theta)
    {
        if (p.is_isotropic())
            return 1.0L;
        const auto &cp = std::get<rissim::PatternModel::CosinePower>(p.model());
        if (cos_theta <= 0.0L)
        {
            if (cp.clamp_back)
                return 0.0L;
            cos_theta = -cos_theta;
        }
        return std::pow(cos_theta, static_cast<real>(cp.exponent));
    }

    struct Vec
    {
        real x, y, z;
    };
    inline real length(Vec a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

    inline Vec tx(const rissim::GeometryConfig &g)
    {
        return {-g.d1 * std::sin(static_cast<real>(g.theta_t)), 0.0L, g.d1 * std::cos(static_cast<real>(g.theta_t))};
    }
    inline Vec rx(const rissim::GeometryConfig &g)
    {
        return {g.d2 * std::sin(static_cast<real>(g.theta_r)), 0.0L, g.d2 * std::cos(static_cast<real>(g.theta_r))};
    }

    inline real los_power(const rissim::Scenario &s)
    {
        const Vec a = tx(s.geometry), b = rx(s.geometry);
        const real d = length({b.x - a.x, b.y - a.y, b.z - a.z});
        const real lambda = c0 / s.geometry.frequency;
        return s.tx_power * static_cast<real>(s.tx_antenna.gain_direct_path) * s.rx_antenna.gain_direct_path *
               lambda * lambda / ((4.0L * pi_l * d) * (4.0L * pi_l * d));
    }

    // Unit-reflection magnitude and phase of every cell, row-major (n outer, m inner)
    struct Term
    {
        real magnitude;
        real phase;
    };

    inline std::vector<Term> cell_terms(const rissim::Scenario &s)
    {
        const rissim::GeometryConfig &g = s.geometry;
        const real lambda = c0 / g.frequency;
        const Vec t = tx(g), r = rx(g);
        const real lt = length(t), lr = length(r);
        const real M = static_cast<real>(g.cols), N = static_cast<real>(g.rows);

        std::vector<Term> terms;
        for (std::size_t n = 1; n <= g.rows; ++n)
        {
            for (std::size_t m = 1; m <= g.cols; ++m)
            {
                const real x = ((M + 1.0L) / 2.0L - static_cast<real>(m)) * g.cell_dx;
                const real y = ((N + 1.0L) / 2.0L - static_cast<real>(n)) * g.cell_dy;
                const Vec to_t{t.x - x, t.y - y, t.z};
                const Vec to_r{r.x - x, r.y - y, r.z};
                const real rt = length(to_t), rr = length(to_r);

                // Off-axis cosines: cell normal is +z, antennas point at the origin
                const real cos_cell_t = to_t.z / rt;
                const real cos_cell_r = to_r.z / rr;
                const real cos_tx = -(t.x * (x - t.x) + t.y * (y - t.y) + t.z * (0.0L - t.z)) / (lt * rt);
                const real cos_rx = -(r.x * (x - r.x) + r.y * (y - r.y) + r.z * (0.0L - r.z)) / (lr * rr);

                const real f = pattern_from_cos(s.tx_antenna.pattern, cos_tx) *
                               pattern_from_cos(s.cell_pattern, cos_cell_t) *
                               pattern_from_cos(s.cell_pattern, cos_cell_r) *
                               pattern_from_cos(s.rx_antenna.pattern, cos_rx);
                const real mag = g.cell_dx * static_cast<real>(g.cell_dy) *
                                 std::sqrt(s.tx_power * static_cast<real>(s.tx_antenna.gain_ris_path) *
                                           s.rx_antenna.gain_ris_path * f) /
                                 (4.0L * pi_l * rt * rr);
                terms.push_back({mag, -2.0L * pi_l * (rt + rr) / lambda});
            }
        }
        return terms;
    }

    inline cplx los_field(const rissim::Scenario &s)
    {
        const Vec t = tx(s.geometry), r = rx(s.geometry);
        const real d = length({r.x - t.x, r.y - t.y, r.z - t.z});
        return std::polar(std::sqrt(oracle::los_power(s)), -2.0L * pi_l * d * s.geometry.frequency / c0);
    }

    // Double sum over n = 1..N, m = 1..M of the per-cell reflected phasor plus the direct path.
    // gamma(n, m) supplies the reflection coefficient of each cell.
    inline cplx total_field(const rissim::Scenario &s, const std::function<cplx(std::size_t, std::size_t)> &gamma)
    {
        const std::vector<Term> terms = cell_terms(s);
        cplx sum = 0.0L;
        std::size_t k = 0;
        for (std::size_t n = 1; n <= s.geometry.rows; ++n)
            for (std::size_t m = 1; m <= s.geometry.cols; ++m, ++k)
                sum += gamma(n, m) * std::polar(terms[k].magnitude, terms[k].phase);
        return sum + los_field(s);
    }

    // Every cell co-phased with the direct path
    inline real aligned_power(const rissim::Scenario &s, real amplitude)
    {
        real mags = 0.0L;
        for (const Term &t : cell_terms(s))
            mags += t.magnitude;
        const real v = amplitude * mags + std::sqrt(oracle::los_power(s));
        return v * v;
    }

    inline real received_power(const rissim::Scenario &s,
                               const std::function<cplx(std::size_t, std::size_t)> &gamma)
    {
        return std::norm(total_field(s, gamma));
    }

    inline real uniform_power(const rissim::Scenario &s, real amplitude, real phase)
    {
        const cplx g = std::polar(amplitude, phase);
        return received_power(s, [g](std::size_t, std::size_t) { return g; });
    }

    inline real relative_error(real a, real b)
    {
        const real scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0L ? 0.0L : std::abs(a - b) / scale;
    }

    inline double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
    inline double uniform(std::mt19937_64 &rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

    // Random but valid scenario of the given size
    inline rissim::Scenario random_scenario(std::mt19937_64 &rng, std::size_t rows, std::size_t cols)
    {
        rissim::Scenario s;
        rissim::GeometryConfig &g = s.geometry;
        g.rows = rows;
        g.cols = cols;
        g.cell_dx = uniform(rng, 1e-3, 1e-2);
        g.cell_dy = uniform(rng, 1e-3, 1e-2);
        g.d1 = uniform(rng, 0.2, 5.0);
        g.d2 = uniform(rng, 0.2, 50.0);
        g.theta_t = rissim::deg_to_rad(uniform(rng, 0.0, 85.0));
        g.theta_r = rissim::deg_to_rad(uniform(rng, 0.0, 85.0));
        g.frequency = uniform(rng, 1e9, 60e9);
        s.tx_antenna = {uniform(rng, 1.0, 400.0), uniform(rng, 1.0, 400.0),
                        rissim::PatternModel::cosine_power(uniform(rng, 0.0, 200.0))};
        s.rx_antenna = {uniform(rng, 1.0, 400.0), uniform(rng, 1.0, 400.0),
                        rissim::PatternModel::cosine_power(uniform(rng, 0.0, 200.0))};
        s.cell_pattern = rissim::PatternModel::cosine_power(uniform(rng, 0.0, 3.0));
        s.tx_power = uniform(rng, 1e-4, 1.0);
        s.reflection_amplitude = uniform(rng, 0.05, 1.0);
        return s;
    }
}

#endif
