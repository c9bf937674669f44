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

#include "rissim/geometry.hpp"
#include "rissim/errors.hpp"

#include <fmt/format.h>

namespace rissim
{
    namespace
    {
        void require_positive(double value, const char *name)
        {
            if (!std::isfinite(value) || value <= 0.0)
                throw ConfigError(fmt::format("{} must be finite and > 0 (got {})", name, value));
        }

        void require_front_hemisphere(double theta, const char *name)
        {
            if (!std::isfinite(theta) || theta < 0.0 || theta >= pi / 2.0)
                throw ConfigError(fmt::format("{} must lie in [0, 90) deg (got {} deg)", name, rad_to_deg(theta)));
        }

        // Path phases are accumulated in extended precision and reduced before narrowing
        using wide = long double;

        struct WidePoint
        {
            wide x, y, z;
        };

        wide wide_distance(WidePoint a, WidePoint b)
        {
            const wide dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
            return std::sqrt(dx * dx + dy * dy + dz * dz);
        }

        WidePoint wide_tx(const GeometryConfig &cfg)
        {
            const wide theta = cfg.theta_t;
            return {-cfg.d1 * std::sin(theta), 0.0L, cfg.d1 * std::cos(theta)};
        }

        WidePoint wide_rx(const GeometryConfig &cfg)
        {
            const wide theta = cfg.theta_r;
            return {cfg.d2 * std::sin(theta), 0.0L, cfg.d2 * std::cos(theta)};
        }

        // 2*pi * frac(length / lambda)
        double reduced_phase(wide length, const GeometryConfig &cfg)
        {
            constexpr wide two_pi_wide = 6.283185307179586476925286766559005768L;
            const wide cycles = length * static_cast<wide>(cfg.frequency) / static_cast<wide>(speed_of_light);
            const double phase = static_cast<double>((cycles - std::floor(cycles)) * two_pi_wide);
            return phase < two_pi ? phase : 0.0;
        }

        // Local (azimuth) angle of `dir` around `boresight`; the reference axis is y x boresight
        double local_azimuth(Point3 boresight, Point3 dir)
        {
            const Point3 u = cross(Point3{0.0, 1.0, 0.0}, boresight);
            const Point3 v = cross(boresight, u);
            return std::atan2(dot(dir, v), dot(dir, u));
        }
    }

    std::size_t GeometryConfig::flat_index(CellIndex idx) const
    {
        if (idx.n < 1 || idx.n > rows || idx.m < 1 || idx.m > cols)
            throw IndexError(fmt::format("cell ({}, {}) outside {}x{} grid", idx.n, idx.m, rows, cols));
        return (idx.n - 1) * cols + (idx.m - 1);
    }

    void GeometryConfig::validate() const
    {
        if (rows < 1)
            throw ConfigError("rows must be >= 1");
        if (cols < 1)
            throw ConfigError("cols must be >= 1");
        require_positive(cell_dx, "cell_dx");
        require_positive(cell_dy, "cell_dy");
        require_positive(d1, "d1");
        require_positive(d2, "d2");
        require_positive(frequency, "frequency");
        require_front_hemisphere(theta_t, "theta_t");
        require_front_hemisphere(theta_r, "theta_r");
    }

    Point3 cell_center(CellIndex idx, const GeometryConfig &cfg)
    {
        cfg.flat_index(idx); // range check
        const double half_cols = (static_cast<double>(cfg.cols) + 1.0) / 2.0;
        const double half_rows = (static_cast<double>(cfg.rows) + 1.0) / 2.0;
        return {(half_cols - static_cast<double>(idx.m)) * cfg.cell_dx,
                (half_rows - static_cast<double>(idx.n)) * cfg.cell_dy,
                0.0};
    }

    // cos(phi_t) = -1 and cos(phi_r) = 1 are written out so that y is exactly zero
    Point3 tx_position(const GeometryConfig &cfg)
    {
        return {-cfg.d1 * std::sin(cfg.theta_t), 0.0, cfg.d1 * std::cos(cfg.theta_t)};
    }

    Point3 rx_position(const GeometryConfig &cfg)
    {
        return {cfg.d2 * std::sin(cfg.theta_r), 0.0, cfg.d2 * std::cos(cfg.theta_r)};
    }

    double los_distance(const GeometryConfig &cfg)
    {
        const double d = norm(rx_position(cfg) - tx_position(cfg));
        if (!(d > 0.0))
            throw GeometryError("transmitter and receiver coincide");
        return d;
    }

    double los_path_phase(const GeometryConfig &cfg)
    {
        los_distance(cfg); // coincidence check
        return reduced_phase(wide_distance(wide_tx(cfg), wide_rx(cfg)), cfg);
    }

    std::vector<CellGeometry> cell_geometry(const GeometryConfig &cfg)
    {
        cfg.validate();

        const WidePoint wtx = wide_tx(cfg), wrx = wide_rx(cfg);
        const wide half_cols = (static_cast<wide>(cfg.cols) + 1.0L) / 2.0L;
        const wide half_rows = (static_cast<wide>(cfg.rows) + 1.0L) / 2.0L;

        const Point3 tx = tx_position(cfg);
        const Point3 rx = rx_position(cfg);
        const Point3 origin{};
        const Point3 tx_boresight = origin - tx; // both RIS-path antennas aim at the RIS centre
        const Point3 rx_boresight = origin - rx;

        std::vector<CellGeometry> cells;
        cells.reserve(cfg.cell_count());

        for (std::size_t n = 1; n <= cfg.rows; ++n)
            for (std::size_t m = 1; m <= cfg.cols; ++m)
            {
                CellGeometry c;
                c.center = cell_center({n, m}, cfg);

                const Point3 to_tx = tx - c.center;
                const Point3 to_rx = rx - c.center;
                c.r_t = norm(to_tx);
                c.r_r = norm(to_rx);

                const WidePoint wc{(half_cols - static_cast<wide>(m)) * cfg.cell_dx,
                                   (half_rows - static_cast<wide>(n)) * cfg.cell_dy, 0.0L};
                c.path_phase = reduced_phase(wide_distance(wtx, wc) + wide_distance(wrx, wc), cfg);

                c.theta_cell_t = std::atan2(std::hypot(to_tx.x, to_tx.y), to_tx.z);
                c.phi_cell_t = std::atan2(to_tx.y, to_tx.x);
                c.theta_cell_r = std::atan2(std::hypot(to_rx.x, to_rx.y), to_rx.z);
                c.phi_cell_r = std::atan2(to_rx.y, to_rx.x);

                const Point3 tx_to_cell = c.center - tx;
                const Point3 rx_to_cell = c.center - rx;
                c.theta_tx = angle_between(tx_boresight, tx_to_cell);
                c.phi_tx = local_azimuth(tx_boresight, tx_to_cell);
                c.theta_rx = angle_between(rx_boresight, rx_to_cell);
                c.phi_rx = local_azimuth(rx_boresight, rx_to_cell);

                cells.push_back(c);
            }
        return cells;
    }
}
