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

#ifndef RISSIM_GEOMETRY_HPP
#define RISSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace rissim
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    constexpr double deg_to_rad(double deg) { return deg * (pi / 180.0); }
    constexpr double rad_to_deg(double rad) { return rad * (180.0 / pi); }

    struct Point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend constexpr bool operator==(const Point3 &, const Point3 &) = default;
    };

    constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    constexpr Point3 cross(Point3 a, Point3 b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }

    // Angle between two non-zero vectors in [0, pi], accurate near 0 and pi
    inline double angle_between(Point3 a, Point3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

    // 1-based cell index: n counts rows (y), m counts columns (x)
    struct CellIndex
    {
        std::size_t n = 1;
        std::size_t m = 1;

        friend constexpr bool operator==(const CellIndex &, const CellIndex &) = default;
    };

    // Placement of the RIS and both terminals. The RIS lies in the xoy plane centred at the origin,
    // the Tx sits in the xoz plane at azimuth 180 deg and the Rx at azimuth 0 deg.
    struct GeometryConfig
    {
        std::size_t rows = 1;       // N
        std::size_t cols = 1;       // M
        double cell_dx = 3.8e-3;    // cell pitch along x [m]
        double cell_dy = 3.8e-3;    // cell pitch along y [m]
        double d1 = 1.0;            // Tx to RIS centre [m]
        double d2 = 1.0;            // RIS centre to Rx [m]
        double theta_t = pi / 4.0;  // Tx elevation from the z-axis [rad]
        double theta_r = pi / 4.0;  // Rx elevation from the z-axis [rad]
        double frequency = 35.0e9;  // carrier [Hz]

        static constexpr double phi_t = pi;  // Tx azimuth [rad]
        static constexpr double phi_r = 0.0; // Rx azimuth [rad]

        double wavelength() const { return speed_of_light / frequency; }
        std::size_t cell_count() const { return rows * cols; }

        // Row-major flat position of a cell; throws IndexError when out of range
        std::size_t flat_index(CellIndex idx) const;

        // Throws ConfigError naming the first violated invariant
        void validate() const;

        friend bool operator==(const GeometryConfig &, const GeometryConfig &) = default;
    };

    // Per-cell distances and angles, precomputed for one GeometryConfig
    struct CellGeometry
    {
        Point3 center;
        double r_t = 0.0;          // cell to Tx [m]
        double r_r = 0.0;          // cell to Rx [m]
        double path_phase = 0.0;   // 2*pi*(r_t + r_r)/lambda reduced to [0, 2*pi), extended precision
        double theta_cell_t = 0.0; // elevation of the Tx seen from the cell
        double phi_cell_t = 0.0;
        double theta_cell_r = 0.0; // elevation of the Rx seen from the cell
        double phi_cell_r = 0.0;
        double theta_tx = 0.0;     // off-boresight angle at the Tx antenna towards the cell
        double phi_tx = 0.0;
        double theta_rx = 0.0;     // off-boresight angle at the Rx antenna towards the cell
        double phi_rx = 0.0;
    };

    Point3 cell_center(CellIndex idx, const GeometryConfig &cfg);
    Point3 tx_position(const GeometryConfig &cfg);
    Point3 rx_position(const GeometryConfig &cfg);

    // Direct Tx-Rx distance; throws GeometryError when the terminals coincide
    double los_distance(const GeometryConfig &cfg);

    // 2*pi*d/lambda of the direct path reduced to [0, 2*pi), extended precision
    double los_path_phase(const GeometryConfig &cfg);

    // One record per cell in row-major order (n outer, m inner)
    std::vector<CellGeometry> cell_geometry(const GeometryConfig &cfg);
}

#endif
