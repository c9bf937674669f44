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


#include "oracle.hpp"

#include "rissim/channel.hpp"
#include "rissim/errors.hpp"
#include "rissim/experiment.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace rissim;

namespace
{
    Scenario sim_scenario(std::size_t rows, std::size_t cols, double d2 = 1.0)
    {
        Scenario s = preset_fig3a().scenario;
        s.geometry.rows = rows;
        s.geometry.cols = cols;
        s.geometry.d2 = d2;
        return s;
    }

    PhaseConfiguration random_configuration(std::mt19937_64 &rng, std::size_t rows, std::size_t cols)
    {
        PhaseConfiguration cfg(rows, cols);
        for (std::size_t i = 0; i < cfg.size(); ++i)
            cfg.set(i, oracle::uniform01(rng), oracle::uniform(rng, 0.0, two_pi));
        return cfg;
    }

    double rel(double a, double b) { return static_cast<double>(oracle::relative_error(a, b)); }
}

TEST(Channel, WrapPhase)
{
    EXPECT_EQ(wrap_phase(0.0), 0.0);
    EXPECT_NEAR(wrap_phase(-pi / 2), 1.5 * pi, 1e-15);
    EXPECT_NEAR(wrap_phase(5 * pi), pi, 1e-14);
    EXPECT_EQ(wrap_phase(-1e-18), 0.0);
    EXPECT_THROW(wrap_phase(HUGE_VAL), DomainError);
}

TEST(Channel, UnitPhasorExactAtQuarterTurns)
{
    EXPECT_EQ(unit_phasor(0.0), complex(1.0, 0.0));
    EXPECT_EQ(unit_phasor(pi), complex(-1.0, 0.0));
    EXPECT_EQ(unit_phasor(pi / 2), complex(0.0, 1.0));
    EXPECT_EQ(unit_phasor(1.5 * pi), complex(0.0, -1.0));
    EXPECT_NEAR(std::abs(unit_phasor(1.0) - std::polar(1.0, 1.0)), 0.0, 1e-16);
}

TEST(Channel, PhaseConfigurationAccess)
{
    PhaseConfiguration cfg(2, 3, 0.5, -pi);
    EXPECT_EQ(cfg.size(), 6u);
    EXPECT_EQ(cfg.amplitude(CellIndex{2, 3}), 0.5);
    EXPECT_NEAR(cfg.phase(CellIndex{1, 1}), pi, 1e-15);
    cfg.set(CellIndex{2, 1}, 1.0, 0.25);
    EXPECT_EQ(cfg.amplitude(3), 1.0);
    EXPECT_EQ(cfg.phase(3), 0.25);
    EXPECT_THROW(cfg.set(0, 1.5, 0.0), ConfigError);
    EXPECT_THROW(cfg.set(0, -0.1, 0.0), ConfigError);
    EXPECT_THROW(cfg.set(6, 0.5, 0.0), IndexError);
    EXPECT_THROW(cfg.amplitude(CellIndex{3, 1}), IndexError);
}

TEST(Channel, CellPhasorZeroReflection)
{
    const Scenario s = sim_scenario(1, 1);
    const CellGeometry c = cell_geometry(s.geometry).front();
    EXPECT_EQ(cell_phasor(c, 0.0, s), complex(0.0, 0.0));
}

TEST(Channel, CellPhasorPatternNull)
{
    const Scenario s = sim_scenario(1, 1);
    CellGeometry c = cell_geometry(s.geometry).front();
    c.theta_cell_t = 2.0; // behind the clamped cell pattern
    EXPECT_EQ(cell_phasor(c, 1.0, s), complex(0.0, 0.0));
}

TEST(Channel, CellPhasorSingleCell)
{
    const Scenario s = sim_scenario(1, 1);
    const CellGeometry c = cell_geometry(s.geometry).front();
    const complex v = cell_phasor(c, 0.8, s);
    const double lambda = 299792458.0 / 35e9;
    const double expected_magnitude = 3.8e-3 * 3.8e-3 * 0.8 * std::sqrt(0.001 * 0.5) / (4 * pi);
    EXPECT_LE(rel(std::abs(v), expected_magnitude), 1e-14);
    const double expected_phase = std::remainder(-2 * pi * 2.0 / lambda, 2 * pi);
    EXPECT_NEAR(std::remainder(std::arg(v) - expected_phase, 2 * pi), 0.0, 1e-12);
}

TEST(Channel, ReflectedFieldBasics)
{
    const Scenario one = sim_scenario(1, 1);
    EXPECT_EQ(reflected_field(one, PhaseConfiguration(1, 1, 0.0)), complex(0.0, 0.0));
    const PhaseConfiguration g(1, 1, 0.8, 0.7);
    EXPECT_EQ(reflected_field(one, g), cell_phasor(cell_geometry(one.geometry).front(), g.coefficient(0), one));

    const Scenario four = sim_scenario(2, 2, 3.0);
    const PhaseConfiguration u(2, 2, 0.8, 0.0);
    const auto cells = cell_geometry(four.geometry);
    const complex expected = cell_phasor(cells[0], 0.8, four) + cell_phasor(cells[1], 0.8, four) +
                             cell_phasor(cells[2], 0.8, four) + cell_phasor(cells[3], 0.8, four);
    const complex got = reflected_field(four, u);
    EXPECT_LE(std::abs(got - expected), 1e-15 * std::abs(expected));

    EXPECT_THROW(reflected_field(four, PhaseConfiguration(2, 3, 0.8)), ConfigError);
}

TEST(Channel, LosPowerReference)
{
    const Scenario s = sim_scenario(64, 64);
    const double p = los_power(s);
    EXPECT_NEAR(p, 2.3230e-10, 0.0001e-10);
    EXPECT_NEAR(watts_to_dbm(p), -66.34, 0.005);
    EXPECT_NEAR(rel(p, static_cast<double>(oracle::los_power(s))), 0.0, 1e-14);
}

TEST(Channel, LosInverseSquare)
{
    Scenario s = sim_scenario(4, 4);
    const double near = watts_to_dbm(los_power(s));
    s.geometry.d1 *= 2;
    s.geometry.d2 *= 2;
    EXPECT_NEAR(near - watts_to_dbm(los_power(s)), 6.0206, 1e-4);
}

TEST(Channel, LosUnitPathGainDistance)
{
    Scenario s = sim_scenario(1, 1);
    s.tx_antenna.gain_direct_path = 4.0;
    s.rx_antenna.gain_direct_path = 9.0;
    const double d = s.geometry.wavelength() / (4 * pi) * 6.0;
    s.geometry.theta_t = s.geometry.theta_r = 0.0;
    s.geometry.d2 = 1.0;
    s.geometry.d1 = 1.0 + d;
    EXPECT_NEAR(rel(los_power(s), s.tx_power), 0.0, 1e-12);
}

TEST(Channel, LosPhasor)
{
    const Scenario s = sim_scenario(2, 2);
    const complex l = los_phasor(s);
    EXPECT_NEAR(rel(std::norm(l), los_power(s)), 0.0, 1e-15);
    const double expected = std::remainder(-two_pi * los_distance(s.geometry) / s.geometry.wavelength(), two_pi);
    EXPECT_NEAR(std::remainder(std::arg(l) - expected, two_pi), 0.0, 1e-12);
}

TEST(Channel, DirectPathOnly)
{
    const Scenario s = sim_scenario(8, 8, 2.0);
    const PathFields f = received_power(s, PhaseConfiguration(8, 8, 0.0));
    EXPECT_EQ(f.total_power, f.los_power);
    EXPECT_EQ(f.los_power, los_power(s));
}

TEST(Channel, PerfectCancellation)
{
    Scenario s = sim_scenario(1, 1);
    s.geometry.cell_dx = s.geometry.cell_dy = 1.0;
    const LinkModel model(s);
    const complex c = model.unit_phasors()[0];
    const complex l = model.los_phasor();
    ASSERT_GT(std::abs(c), std::abs(l));
    PhaseConfiguration cfg(1, 1);
    cfg.set(0, std::abs(l) / std::abs(c), std::arg(l) - std::arg(c) + pi);
    EXPECT_LE(model.evaluate(cfg, Summation::compensated).total_power, 1e-28 * model.los_power());
}

TEST(Channel, UniformSurfaceAgainstDoubleSum)
{
    const Scenario s = sim_scenario(64, 64, 10.0);
    const PathFields f = received_power(s, PhaseConfiguration(64, 64, 0.8, 0.0));
    const oracle::real expected = oracle::uniform_power(s, 0.8L, 0.0L);
    EXPECT_LE(rel(f.total_power, static_cast<double>(expected)), 1e-12);
}

TEST(Channel, DbmConversions)
{
    EXPECT_EQ(watts_to_dbm(1e-3), 0.0);
    EXPECT_NEAR(watts_to_dbm(1.0), 30.0, 1e-14);
    EXPECT_NEAR(watts_to_dbm(2.3230e-10), -66.34, 0.005);
    EXPECT_NEAR(dbm_to_watts(15.0), 0.0316227766, 1e-10);
    EXPECT_THROW(watts_to_dbm(0.0), DomainError);
    EXPECT_THROW(watts_to_dbm(-1.0), DomainError);
    EXPECT_EQ(reported_dbm(0.0, 5.0), reported_floor_dbm);
    EXPECT_EQ(reported_dbm(1e-320, 0.0), reported_floor_dbm);
    EXPECT_NEAR(reported_dbm(1e-3, -3.5), -3.5, 1e-15);
}

TEST(ChannelProperty, FriisDegeneracy)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i)
    {
        const Scenario s = oracle::random_scenario(rng, 1 + rng() % 5, 1 + rng() % 5);
        const PathFields f = received_power(s, PhaseConfiguration(s.geometry.rows, s.geometry.cols, 0.0));
        EXPECT_LE(rel(f.total_power, static_cast<double>(oracle::los_power(s))), 1e-12);
    }
}

TEST(ChannelProperty, MatchesDoubleSumOnRandomConfigurations)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 30; ++i)
    {
        const Scenario s = oracle::random_scenario(rng, 1 + rng() % 9, 1 + rng() % 9);
        const PhaseConfiguration cfg = random_configuration(rng, s.geometry.rows, s.geometry.cols);
        const double got = received_power(s, cfg).total_power;
        const oracle::real want = oracle::received_power(s, [&](std::size_t n, std::size_t m) {
            const complex c = cfg.coefficient(CellIndex{n, m});
            return oracle::cplx(c.real(), c.imag());
        });
        EXPECT_LE(rel(got, static_cast<double>(want)), 1e-11) << "trial " << i;
    }
}

TEST(ChannelProperty, TriangleBound)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i)
    {
        const Scenario s = oracle::random_scenario(rng, 1 + rng() % 4, 1 + rng() % 4);
        const PathFields f = received_power(s, random_configuration(rng, s.geometry.rows, s.geometry.cols));
        const double bound = std::pow(std::abs(f.reflected_sum) + std::sqrt(f.los_power), 2);
        EXPECT_LE(f.total_power, bound * (1 + 1e-12));
    }
}

TEST(ChannelProperty, GlobalPhaseCovariance)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i)
    {
        const Scenario s = oracle::random_scenario(rng, 1 + rng() % 6, 1 + rng() % 6);
        const LinkModel model(s);
        const PhaseConfiguration cfg = random_configuration(rng, s.geometry.rows, s.geometry.cols);
        const double alpha = oracle::uniform(rng, 0.0, two_pi);
        PhaseConfiguration rotated = cfg;
        for (std::size_t k = 0; k < cfg.size(); ++k)
            rotated.set(k, cfg.amplitude(k), cfg.phase(k) + alpha);
        const complex a = model.reflected_field(cfg, Summation::compensated);
        const complex b = model.reflected_field(rotated, Summation::compensated);
        EXPECT_LE(rel(std::abs(a), std::abs(b)), 1e-12);
        EXPECT_LE(std::abs(b - a * std::polar(1.0, alpha)), 1e-12 * std::abs(a));
    }
}

TEST(ChannelProperty, Linearity)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i)
    {
        const Scenario s = oracle::random_scenario(rng, 1 + rng() % 6, 1 + rng() % 6);
        const LinkModel model(s);
        const PhaseConfiguration full = random_configuration(rng, s.geometry.rows, s.geometry.cols);
        PhaseConfiguration a(full.rows(), full.cols()), b(full.rows(), full.cols());
        for (std::size_t k = 0; k < full.size(); ++k)
            (rng() & 1 ? a : b).set(k, full.amplitude(k), full.phase(k));
        const complex whole = model.reflected_field(full, Summation::compensated);
        const complex parts =
            model.reflected_field(a, Summation::compensated) + model.reflected_field(b, Summation::compensated);
        EXPECT_LE(std::abs(whole - parts), 1e-13 * model.unit_magnitude_sum());
    }
}

TEST(ChannelProperty, PowerScalesWithTransmitPower)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i)
    {
        Scenario s = oracle::random_scenario(rng, 1 + rng() % 6, 1 + rng() % 6);
        const PhaseConfiguration cfg = random_configuration(rng, s.geometry.rows, s.geometry.cols);
        const double p1 = received_power(s, cfg).total_power;
        s.tx_power *= 2;
        EXPECT_LE(rel(received_power(s, cfg).total_power, 2 * p1), 1e-12);
    }
}

TEST(ChannelProperty, PlainAndCompensatedAgree)
{
    const Scenario s = sim_scenario(64, 64, 7.0);
    const LinkModel model(s);
    std::mt19937_64 rng(7);
    const PhaseConfiguration cfg = random_configuration(rng, 64, 64);
    const double plain = model.evaluate(cfg, Summation::plain).total_power;
    const double exact = model.evaluate(cfg, Summation::compensated).total_power;
    EXPECT_LE(rel(plain, exact), 1e-12);
}
