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


#include "rissim/errors.hpp"
#include "rissim/geometry.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace rissim;

namespace
{
    GeometryConfig sim_geometry(double theta_t_deg = 45.0)
    {
        GeometryConfig g;
        g.rows = 64;
        g.cols = 64;
        g.cell_dx = 3.8e-3;
        g.cell_dy = 3.8e-3;
        g.d1 = 1.0;
        g.d2 = 1.0;
        g.theta_t = deg_to_rad(theta_t_deg);
        g.theta_r = deg_to_rad(45.0);
        return g;
    }
}

TEST(Geometry, CellCenterCorner)
{
    const Point3 c = cell_center({1, 1}, sim_geometry());
    EXPECT_NEAR(c.x, 0.11970, 1e-12);
    EXPECT_NEAR(c.y, 0.11970, 1e-12);
    EXPECT_EQ(c.z, 0.0);
}

TEST(Geometry, CellCenterNearMiddle)
{
    const Point3 c = cell_center({32, 32}, sim_geometry());
    EXPECT_NEAR(c.x, 0.0019, 1e-15);
    EXPECT_NEAR(c.y, 0.0019, 1e-15);
}

TEST(Geometry, SingleCellAtOrigin)
{
    GeometryConfig g;
    EXPECT_EQ(cell_center({1, 1}, g), (Point3{0.0, 0.0, 0.0}));
}

TEST(Geometry, CellCenterRowsAlongY)
{
    GeometryConfig g;
    g.rows = 2;
    g.cols = 3;
    g.cell_dx = 1.0;
    g.cell_dy = 2.0;
    EXPECT_EQ(cell_center({1, 1}, g), (Point3{1.0, 1.0, 0.0}));
    EXPECT_EQ(cell_center({2, 3}, g), (Point3{-1.0, -1.0, 0.0}));
}

TEST(Geometry, CellCenterOutOfRange)
{
    const GeometryConfig g = sim_geometry();
    EXPECT_THROW(cell_center({0, 1}, g), IndexError);
    EXPECT_THROW(cell_center({1, 65}, g), IndexError);
    EXPECT_THROW(g.flat_index({65, 1}), IndexError);
    EXPECT_EQ(g.flat_index({2, 3}), 64u + 2u);
}

TEST(Geometry, TerminalPositions)
{
    const GeometryConfig g = sim_geometry();
    const Point3 t = tx_position(g), r = rx_position(g);
    EXPECT_NEAR(t.x, -0.70711, 1e-5);
    EXPECT_EQ(t.y, 0.0);
    EXPECT_NEAR(t.z, 0.70711, 1e-5);
    EXPECT_NEAR(r.x, 0.70711, 1e-5);
    EXPECT_NEAR(r.z, 0.70711, 1e-5);

    GeometryConfig normal = g;
    normal.theta_t = 0.0;
    normal.d1 = 2.5;
    const Point3 on_axis = tx_position(normal);
    EXPECT_NEAR(on_axis.x, 0.0, 1e-300);
    EXPECT_EQ(on_axis.z, 2.5);
}

TEST(Geometry, LosDistance)
{
    GeometryConfig g = sim_geometry();
    EXPECT_NEAR(los_distance(g), 1.41421356, 1e-8);

    g.theta_t = g.theta_r = 0.0;
    g.d1 = 2.0;
    g.d2 = 1.0;
    EXPECT_NEAR(los_distance(g), 1.0, 1e-15);
}

TEST(Geometry, LosDistanceMixedAngles)
{
    // Vector difference of (-sin 30, 0, cos 30) and (sin 45, 0, cos 45), written out by hand
    GeometryConfig g = sim_geometry(30.0);
    const double dx = std::sin(pi / 4) + 0.5;
    const double dz = std::cos(pi / 4) - std::sqrt(3.0) / 2.0;
    EXPECT_NEAR(los_distance(g), std::sqrt(dx * dx + dz * dz), 1e-14);
    EXPECT_NEAR(los_distance(g), 1.2175, 1e-4);
}

TEST(Geometry, LosDistanceCoincidentTerminals)
{
    GeometryConfig g = sim_geometry();
    g.theta_t = g.theta_r = 0.0;
    g.d1 = g.d2 = 1.0;
    EXPECT_THROW(los_distance(g), GeometryError);
}

TEST(Geometry, CentralCellDistance)
{
    const GeometryConfig g = sim_geometry();
    const auto cells = cell_geometry(g);
    const CellGeometry &c = cells[g.flat_index({32, 32})];
    // |(-0.70711 - 0.0019, -0.0019, 0.70711)|
    const double s = std::sqrt(0.5);
    const double expected = std::sqrt((s + 0.0019) * (s + 0.0019) + 0.0019 * 0.0019 + 0.5);
    EXPECT_NEAR(c.r_t, expected, 1e-14);
    EXPECT_NEAR(c.r_t, 1.00135, 5e-6);
}

TEST(Geometry, SingleCellOnNormal)
{
    GeometryConfig g;
    g.theta_t = 0.0;
    const auto cells = cell_geometry(g);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_EQ(cells[0].r_t, 1.0);
    EXPECT_EQ(cells[0].theta_cell_t, 0.0);
    EXPECT_EQ(cells[0].theta_tx, 0.0);
}

TEST(Geometry, NominalAnglesAtCentre)
{
    GeometryConfig g;
    g.theta_t = deg_to_rad(30.0);
    g.theta_r = deg_to_rad(60.0);
    const CellGeometry c = cell_geometry(g).front();
    EXPECT_NEAR(c.theta_cell_t, deg_to_rad(30.0), 1e-15);
    EXPECT_NEAR(c.theta_cell_r, deg_to_rad(60.0), 1e-15);
    EXPECT_NEAR(c.phi_cell_t, pi, 1e-15);
    EXPECT_NEAR(c.phi_cell_r, 0.0, 1e-15);
}

TEST(Geometry, MirrorSymmetry)
{
    GeometryConfig g = sim_geometry();
    g.rows = 5;
    g.cols = 7;
    g.d1 = g.d2 = 1.7;
    const auto cells = cell_geometry(g);
    for (std::size_t n = 1; n <= g.rows; ++n)
        for (std::size_t m = 1; m <= g.cols; ++m)
        {
            const CellGeometry &a = cells[g.flat_index({n, m})];
            const CellGeometry &b = cells[g.flat_index({n, g.cols + 1 - m})];
            EXPECT_EQ(a.r_t, b.r_r);
            EXPECT_EQ(a.theta_cell_t, b.theta_cell_r);
            EXPECT_EQ(a.theta_tx, b.theta_rx);
        }
}

TEST(Geometry, Validation)
{
    GeometryConfig g = sim_geometry();
    EXPECT_NO_THROW(g.validate());
    for (auto mutate : std::initializer_list<void (*)(GeometryConfig &)>{
             [](GeometryConfig &c) { c.rows = 0; },
             [](GeometryConfig &c) { c.cols = 0; },
             [](GeometryConfig &c) { c.cell_dx = 0.0; },
             [](GeometryConfig &c) { c.cell_dy = -1.0; },
             [](GeometryConfig &c) { c.d1 = 0.0; },
             [](GeometryConfig &c) { c.d2 = -2.0; },
             [](GeometryConfig &c) { c.theta_t = pi / 2; },
             [](GeometryConfig &c) { c.theta_r = -0.1; },
             [](GeometryConfig &c) { c.frequency = 0.0; },
         })
    {
        GeometryConfig bad = g;
        mutate(bad);
        EXPECT_THROW(bad.validate(), ConfigError);
    }
}

TEST(GeometryProperty, DistanceBoundsAndCentroid)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        GeometryConfig g;
        g.rows = 1 + rng() % 12;
        g.cols = 1 + rng() % 12;
        g.cell_dx = 1e-3 + 1e-2 * u(rng);
        g.cell_dy = 1e-3 + 1e-2 * u(rng);
        g.d1 = 0.1 + 5 * u(rng);
        g.d2 = 0.1 + 5 * u(rng);
        g.theta_t = deg_to_rad(89.0 * u(rng));
        g.theta_r = deg_to_rad(89.0 * u(rng));
        const double half_diag = 0.5 * std::hypot(g.cols * g.cell_dx, g.rows * g.cell_dy);

        Point3 centroid;
        for (const CellGeometry &c : cell_geometry(g))
        {
            EXPECT_GE(c.r_t, g.d1 * std::cos(g.theta_t) * (1 - 1e-15));
            EXPECT_LE(c.r_t, (g.d1 + half_diag) * (1 + 1e-15));
            EXPECT_GE(c.r_r, g.d2 * std::cos(g.theta_r) * (1 - 1e-15));
            EXPECT_LE(c.r_r, (g.d2 + half_diag) * (1 + 1e-15));
            for (double a : {c.theta_cell_t, c.theta_cell_r, c.theta_tx, c.theta_rx})
            {
                EXPECT_GE(a, 0.0);
                EXPECT_LE(a, pi);
            }
            centroid = centroid + c.center;
        }
        EXPECT_NEAR(centroid.x, 0.0, 1e-12);
        EXPECT_NEAR(centroid.y, 0.0, 1e-12);
    }
}

TEST(GeometryProperty, ReceiverDistanceMonotone)
{
    GeometryConfig g = sim_geometry();
    g.rows = g.cols = 8;
    auto near = cell_geometry(g);
    g.d2 = 1.25;
    auto far = cell_geometry(g);
    for (std::size_t i = 0; i < near.size(); ++i)
    {
        EXPECT_GT(far[i].r_r, near[i].r_r);
        EXPECT_EQ(far[i].r_t, near[i].r_t);
    }
}
