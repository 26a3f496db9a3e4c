// SPDX-License-Identifier: Apache-2.0
//
// vortexsim - near-field multi-user transmission simulator with multi-mode
// vortex waves and a holographically patterned transmissive metasurface
// Copyright (C) 2026 vortexsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "vortexsim/propagation.hpp"
#include "vortexsim/scenario.hpp"

using namespace vortexsim;
using namespace vortexsim::propagation;

namespace
{
    const SimulationConstants c10 = SimulationConstants::from_frequency(10e9);

    const scenario::ScenarioConfig &axial_config()
    {
        static const auto config = scenario::ScenarioConfig::axial_default();
        return config;
    }

    // synthesized pattern and per-mode incident fields, computed once
    struct Fixture
    {
        hologram::PhasePattern pattern;
        std::vector<std::vector<cdouble>> incident; // per assignment
        hologram::MetasurfaceGeometry geometry;
        std::vector<hologram::ReceiverTarget> targets;
        SourceModel source;

        Fixture()
        {
            const auto &config = axial_config();
            geometry = config.geometry();
            targets = config.targets();
            source = config.source_model();
            pattern = config.synthesize();
            for (const auto &t : targets)
                incident.push_back(incident_field_on_surface(
                    source, t.assigned_mode, geometry, config.source_amplitudes(), c10));
        }
    };

    const Fixture &fixture()
    {
        static const Fixture f;
        return f;
    }
} // namespace

TEST_CASE("incident field: analytic kind delegates to reference_wave")
{
    const auto &config = axial_config();
    const auto geometry = config.geometry();
    const auto amplitudes = config.source_amplitudes();
    const auto source = SourceModel::analytic({0.0, 0.0, -0.5});
    const auto incident = incident_field_on_surface(source, {1}, geometry, amplitudes, c10);
    for (int m = 0; m < geometry.rows; m += 7)
    {
        for (int n = 0; n < geometry.cols; n += 7)
        {
            const auto expected = waves::reference_wave(geometry.unit_position(m, n),
                                                        {0.0, 0.0, -0.5}, {1}, {1.0, 0.0}, c10);
            CHECK(std::abs(incident[static_cast<size_t>(m) * geometry.cols + n] - expected) ==
                  0.0);
        }
    }
}

TEST_CASE("incident field: discrete vortex null and l=0 bright center")
{
    const auto &f = fixture();
    const auto geometry = f.geometry;

    SUBCASE("l=+1: the units nearest the axis sit in the vortex null")
    {
        // at a 30 deg cone the ring maximum reaches the surface corners and
        // the axis-adjacent units fall below 10% of the grid maximum
        waves::UcaGenerator g30;
        g30.position = {0.0, 0.0, -0.5};
        g30.rings.push_back(waves::make_uca_ring({1}, 8, c10, pi / 6.0, g30.position));
        const auto incident = incident_field_on_surface(SourceModel::discrete(g30), {1},
                                                        geometry, {}, c10);
        double grid_max = 0.0;
        for (const auto &v : incident)
            grid_max = std::max(grid_max, std::abs(v));
        for (int m : {13, 14})
            for (int n : {13, 14})
                CHECK(std::abs(incident[static_cast<size_t>(m) * geometry.cols + n]) <
                      0.1 * grid_max);

        // the null is structural at the default 20 deg cone as well
        const auto &incident20 = f.incident[0];
        double grid_max20 = 0.0;
        for (const auto &v : incident20)
            grid_max20 = std::max(grid_max20, std::abs(v));
        for (int m : {13, 14})
            for (int n : {13, 14})
                CHECK(std::abs(incident20[static_cast<size_t>(m) * geometry.cols + n]) <
                      0.15 * grid_max20);
    }

    SUBCASE("l=0 ring: center units carry the grid maximum")
    {
        waves::UcaGenerator g0;
        g0.position = {0.0, 0.0, -0.5};
        waves::UcaRing ring;
        ring.mode = {0};
        ring.num_elements = 8;
        ring.radius_m = 0.0257;
        ring.center = g0.position;
        g0.rings.push_back(ring);
        const auto source = SourceModel::discrete(g0);
        const auto incident =
            incident_field_on_surface(source, {0}, geometry, {}, c10);
        double grid_max = 0.0;
        size_t argmax = 0;
        for (size_t i = 0; i < incident.size(); ++i)
            if (std::abs(incident[i]) > grid_max)
            {
                grid_max = std::abs(incident[i]);
                argmax = i;
            }
        const int m = static_cast<int>(argmax) / geometry.cols;
        const int n = static_cast<int>(argmax) % geometry.cols;
        CHECK(m >= 13);
        CHECK(m <= 14);
        CHECK(n >= 13);
        CHECK(n <= 14);
    }

    SUBCASE("source must sit on z < 0")
    {
        auto bad = SourceModel::analytic({0.0, 0.0, 0.1});
        CHECK_THROWS_AS(bad.validate(), ValidationError);
    }
}

TEST_CASE("transmit_through")
{
    const auto &f = fixture();
    const auto &incident = f.incident[0];

    SUBCASE("zero pattern and 0 dB loss is the identity")
    {
        hologram::PhasePattern zero;
        zero.geometry = f.geometry;
        zero.phase_rad.assign(incident.size(), 0.0);
        const auto out = transmit_through(incident, zero);
        for (size_t i = 0; i < incident.size(); ++i)
            CHECK(out[i] == incident[i]);
    }

    SUBCASE("1 dB insertion loss scales magnitudes by 10^(-1/20)")
    {
        auto quantized = hologram::quantize_phase(f.pattern, 4, 1.0);
        const auto lossless = hologram::quantize_phase(f.pattern, 4, 0.0);
        const auto out_loss = transmit_through(incident, quantized);
        const auto out_free = transmit_through(incident, lossless);
        const double scale = std::pow(10.0, -0.05);
        CHECK(scale == doctest::Approx(0.89125).epsilon(1e-5));
        for (size_t i = 0; i < incident.size(); i += 37)
            CHECK(std::abs(out_loss[i]) ==
                  doctest::Approx(std::abs(out_free[i]) * scale).epsilon(1e-12));
    }

    SUBCASE("L=4 quantization stays within pi/4 of the continuous phase")
    {
        const auto quantized = hologram::quantize_phase(f.pattern, 4);
        const auto cont = transmit_through(incident, f.pattern);
        const auto quant = transmit_through(incident, quantized);
        for (size_t i = 0; i < incident.size(); ++i)
        {
            if (std::abs(cont[i]) == 0.0)
                continue;
            const double err = std::abs(std::arg(quant[i] / cont[i]));
            CHECK(err <= pi / 4.0 + 1e-12);
        }
    }

    SUBCASE("shape mismatch")
    {
        hologram::PhasePattern wrong;
        wrong.geometry = {4, 4, 0.015};
        wrong.phase_rad.assign(16, 0.0);
        CHECK_THROWS_AS(transmit_through(incident, wrong), ShapeError);
    }
}

TEST_CASE("field_at elementary cases")
{
    hologram::MetasurfaceGeometry g;
    g.rows = 1;
    g.cols = 2;
    g.period_m = 0.03; // units at x = -15mm and +15mm

    SUBCASE("single radiating unit gives a spherical wave")
    {
        std::vector<cdouble> t = {{1.0, 0.0}, {0.0, 0.0}};
        const Vec3 p{0.05, 0.02, 0.3};
        const auto field = field_at(p, t, g, c10);
        const double r = distance(p, g.unit_position(0, 0));
        const auto expected = std::polar(1.0 / (4.0 * pi * r), -c10.wavenumber * r);
        CHECK(std::abs(field - expected) < 1e-15);
    }

    SUBCASE("two symmetric in-phase units double the on-axis magnitude")
    {
        std::vector<cdouble> t = {{1.0, 0.0}, {1.0, 0.0}};
        const Vec3 p{0.0, 0.0, 0.4}; // equidistant from both units
        const auto field = field_at(p, t, g, c10);
        std::vector<cdouble> t_single = {{1.0, 0.0}, {0.0, 0.0}};
        const auto single = field_at(p, t_single, g, c10);
        CHECK(std::abs(field) == doctest::Approx(2.0 * std::abs(single)).epsilon(1e-12));
    }

    SUBCASE("z <= 0 and unit coincidence are errors")
    {
        std::vector<cdouble> t = {{1.0, 0.0}, {1.0, 0.0}};
        CHECK_THROWS_AS(field_at({0.0, 0.0, -0.1}, t, g, c10), DomainError);
        CHECK_THROWS_AS(field_at({0.0, 0.0, 0.0}, t, g, c10), DomainError);
    }
}

TEST_CASE("field linearity and scale invariance")
{
    const auto &f = fixture();
    const auto ta = transmit_through(f.incident[0], f.pattern);
    const auto tb = transmit_through(f.incident[1], f.pattern);

    std::vector<cdouble> sum(ta.size());
    for (size_t i = 0; i < ta.size(); ++i)
        sum[i] = ta[i] + tb[i];

    const Vec3 probe{0.03, 0.0, 0.21};
    const auto fa = field_at(probe, ta, f.geometry, c10);
    const auto fb = field_at(probe, tb, f.geometry, c10);
    const auto fsum = field_at(probe, sum, f.geometry, c10);
    CHECK(std::abs(fsum - (fa + fb)) < 1e-12 * std::abs(fsum));

    // |field| scales exactly with |c|; dB differences are invariant
    const cdouble scale{0.3, -1.7};
    std::vector<cdouble> scaled(ta.size());
    for (size_t i = 0; i < ta.size(); ++i)
        scaled[i] = ta[i] * scale;
    const auto fscaled = field_at(probe, scaled, f.geometry, c10);
    CHECK(std::abs(fscaled) ==
          doctest::Approx(std::abs(fa) * std::abs(scale)).epsilon(1e-12));

    const Vec3 probe2{-0.06, 0.0, 0.3};
    const auto g1 = field_at(probe2, ta, f.geometry, c10);
    const auto g2 = field_at(probe2, scaled, f.geometry, c10);
    const double db_before = 20.0 * std::log10(std::abs(fa) / std::abs(g1));
    const double db_after = 20.0 * std::log10(std::abs(fscaled) / std::abs(g2));
    CHECK(std::abs(db_before - db_after) < 1e-9);
}

TEST_CASE("scan_plane basics")
{
    const auto &f = fixture();
    const auto transmitted = transmit_through(f.incident[0], f.pattern);

    SUBCASE("2x2 plane matches pointwise field_at")
    {
        ScanPlane plane;
        plane.axis1_min = -0.05;
        plane.axis1_max = 0.05;
        plane.axis1_samples = 2;
        plane.axis2_min = 0.1;
        plane.axis2_max = 0.2;
        plane.axis2_samples = 2;
        const auto map = scan_plane(plane, transmitted, f.geometry, c10);
        for (int i2 = 0; i2 < 2; ++i2)
            for (int i1 = 0; i1 < 2; ++i1)
                CHECK(map.sample(i2, i1) ==
                      field_at(plane.point(i2, i1), transmitted, f.geometry, c10));
        // normalization: peak is 0 dB
        double max_db = -1e9;
        for (double v : map.power_db)
            max_db = std::max(max_db, v);
        CHECK(max_db == doctest::Approx(0.0));
    }

    SUBCASE("doubling resolution keeps the peak within one coarse cell")
    {
        ScanPlane coarse;
        coarse.axis1_min = -0.1;
        coarse.axis1_max = 0.1;
        coarse.axis1_samples = 41;
        coarse.axis2_min = 0.08;
        coarse.axis2_max = 0.3;
        coarse.axis2_samples = 45;
        ScanPlane fine = coarse;
        fine.axis1_samples = 81;
        fine.axis2_samples = 89;

        const auto map_c = scan_plane(coarse, transmitted, f.geometry, c10);
        const auto map_f = scan_plane(fine, transmitted, f.geometry, c10);
        const double cx = map_c.plane.axis1_value(map_c.peak_i1);
        const double cz = map_c.plane.axis2_value(map_c.peak_i2);
        const double fx = map_f.plane.axis1_value(map_f.peak_i1);
        const double fz = map_f.plane.axis2_value(map_f.peak_i2);
        CHECK(std::abs(fx - cx) <= coarse.axis1_step() + 1e-12);
        CHECK(std::abs(fz - cz) <= coarse.axis2_step() + 1e-12);
    }

    SUBCASE("plane validation")
    {
        ScanPlane bad;
        bad.axis2_min = -0.1; // crosses the surface
        CHECK_THROWS_AS(bad.validate(), ValidationError);
        ScanPlane one_sample;
        one_sample.axis1_samples = 1;
        CHECK_THROWS_AS(one_sample.validate(), ValidationError);
        ScanPlane behind;
        behind.orientation = ScanPlane::Orientation::xy_at_z;
        behind.fixed_coord = -0.2;
        behind.axis2_min = -0.1; // y range may be signed for xy planes
        CHECK_THROWS_AS(behind.validate(), ValidationError);
    }

    SUBCASE("transverse xy plane maps points and axes correctly")
    {
        ScanPlane plane;
        plane.orientation = ScanPlane::Orientation::xy_at_z;
        plane.fixed_coord = 0.15;
        plane.axis1_min = -0.06;
        plane.axis1_max = 0.06;
        plane.axis1_samples = 13;
        plane.axis2_min = -0.06;
        plane.axis2_max = 0.06;
        plane.axis2_samples = 13;
        CHECK(plane.point(0, 0) == Vec3{-0.06, -0.06, 0.15});
        CHECK(std::string(plane.axis1_name()) == "x");
        CHECK(std::string(plane.axis2_name()) == "y");

        const auto map = scan_plane(plane, transmitted, f.geometry, c10);
        for (int i2 = 0; i2 < 13; i2 += 6)
            for (int i1 = 0; i1 < 13; i1 += 6)
                CHECK(map.sample(i2, i1) ==
                      field_at({plane.axis1_value(i1), plane.axis2_value(i2), 0.15}, transmitted,
                               f.geometry, c10));
    }
}

namespace
{
    // Gaussian blob map on a small plane: amplitude exp(-d^2 / w^2) around
    // (x0, z0); dB power is exactly quadratic, so the parabolic refinement
    // recovers the center.
    FieldMap gaussian_map(double x0, double z0, double w, double floor_scale = 0.0,
                          double x1 = 0.0, double z1 = 0.0, double w1 = 1.0)
    {
        FieldMap map;
        map.plane.axis1_min = -0.1;
        map.plane.axis1_max = 0.1;
        map.plane.axis1_samples = 81;
        map.plane.axis2_min = 0.05;
        map.plane.axis2_max = 0.25;
        map.plane.axis2_samples = 81;
        const int n1 = map.plane.axis1_samples;
        const int n2 = map.plane.axis2_samples;
        map.samples.resize(static_cast<size_t>(n1) * n2);
        double peak = 0.0;
        for (int i2 = 0; i2 < n2; ++i2)
        {
            for (int i1 = 0; i1 < n1; ++i1)
            {
                const double x = map.plane.axis1_value(i1);
                const double z = map.plane.axis2_value(i2);
                double a = std::exp(-((x - x0) * (x - x0) + (z - z0) * (z - z0)) / (w * w));
                a += floor_scale *
                     std::exp(-((x - x1) * (x - x1) + (z - z1) * (z - z1)) / (w1 * w1));
                map.samples[static_cast<size_t>(i2) * n1 + i1] = {a, 0.0};
                if (a > peak)
                {
                    peak = a;
                    map.peak_i1 = i1;
                    map.peak_i2 = i2;
                }
            }
        }
        map.peak_magnitude = peak;
        map.power_db.resize(map.samples.size());
        for (size_t i = 0; i < map.samples.size(); ++i)
            map.power_db[i] = 20.0 * std::log10(std::abs(map.samples[i]) / peak);
        return map;
    }
} // namespace

TEST_CASE("find_focal_spots on synthetic maps")
{
    SUBCASE("single Gaussian blob: one spot at its center within 1/10 cell")
    {
        // center deliberately off the lattice
        const double x0 = 0.0132, z0 = 0.1621, w = 0.02;
        const auto map = gaussian_map(x0, z0, w);
        const auto spots = find_focal_spots(map, -20.0);
        REQUIRE(spots.size() == 1);
        CHECK(std::abs(spots[0].position.x - x0) < 0.1 * map.plane.axis1_step());
        CHECK(std::abs(spots[0].position.z - z0) < 0.1 * map.plane.axis2_step());
        CHECK(spots[0].peak_power_db == doctest::Approx(0.0));
        // -3 dB diameter of the amplitude Gaussian: 2 w sqrt(3/40 ln 10)
        const double expected_extent = 2.0 * w * std::sqrt(3.0 / 40.0 * std::log(10.0));
        CHECK(spots[0].extent_axis1_m == doctest::Approx(expected_extent).epsilon(0.05));
        CHECK(spots[0].extent_axis2_m == doctest::Approx(expected_extent).epsilon(0.05));
    }

    SUBCASE("two disjoint blobs above a -20 dB floor give two spots")
    {
        const auto map = gaussian_map(-0.05, 0.1, 0.012, 0.5, 0.05, 0.2, 0.012);
        const auto spots = find_focal_spots(map, -20.0);
        REQUIRE(spots.size() == 2);
        CHECK(spots[0].peak_power_db > spots[1].peak_power_db);
        CHECK(std::abs(spots[0].position.x - (-0.05)) < 1e-3);
        CHECK(std::abs(spots[1].position.x - 0.05) < 1e-3);
        CHECK(spots[1].peak_power_db == doctest::Approx(20.0 * std::log10(0.5)).epsilon(1e-6));
    }

    SUBCASE("floor must be negative; empty map is an error")
    {
        const auto map = gaussian_map(0.0, 0.15, 0.02);
        CHECK_THROWS_AS(find_focal_spots(map, 0.0), DomainError);
        FieldMap empty;
        CHECK_THROWS_AS(find_focal_spots(empty, -10.0), DomainError);
    }
}

TEST_CASE("axial defaults: designed separation and crosstalk")
{
    const auto &f = fixture();
    const auto &config = axial_config();
    const auto transmitted = transmit_through(f.incident[0], f.pattern);

    SUBCASE("mode l=+1 focuses at its own target, not the other")
    {
        const auto at_own = field_at(f.targets[0].position, transmitted, f.geometry, c10);
        const auto at_other = field_at(f.targets[1].position, transmitted, f.geometry, c10);
        const double separation_db = 20.0 * std::log10(std::abs(at_own) / std::abs(at_other));
        CHECK(separation_db >= 10.0);
    }

    SUBCASE("crosstalk matrix isolation and ratio invariance")
    {
        const auto matrix = crosstalk_matrix(f.source, config.source_amplitudes(), f.pattern,
                                             f.targets, f.geometry, c10);
        REQUIRE(matrix.isolation_db.size() == 2);
        CHECK(matrix.isolation_db[0] >= 15.0);
        CHECK(matrix.isolation_db[1] >= 15.0);
        CHECK_FALSE(matrix.degenerate_targets);

        // scaling all beta_ref by a common factor leaves isolation unchanged
        auto amplitudes = config.source_amplitudes();
        amplitudes.beta_ref_by_mode[1] = {3.0, 0.0};
        amplitudes.beta_ref_by_mode[2] = {3.0, 0.0};
        const auto analytic = SourceModel::analytic({0.0, 0.0, -0.5});
        const auto base = crosstalk_matrix(analytic, config.source_amplitudes(), f.pattern,
                                           f.targets, f.geometry, c10);
        const auto scaled = crosstalk_matrix(analytic, amplitudes, f.pattern, f.targets,
                                             f.geometry, c10);
        for (size_t p = 0; p < 2; ++p)
            CHECK(std::abs(base.isolation_db[p] - scaled.isolation_db[p]) < 1e-9);
    }

    SUBCASE("identical targets are degenerate and flagged")
    {
        // a scenario that maps both modes onto one position has no spatial
        // separation left: the two receivers see mirror-image isolation
        // around 0 dB
        auto clash = f.targets;
        clash[1].position = clash[0].position;
        const auto degenerate_pattern = hologram::synthesize_pattern(
            f.geometry, clash, f.source.position, config.source_amplitudes(), {}, c10, true);
        const auto matrix = crosstalk_matrix(f.source, config.source_amplitudes(),
                                             degenerate_pattern, clash, f.geometry, c10);
        CHECK(matrix.degenerate_targets);
        CHECK(matrix.isolation_db[0] == doctest::Approx(-matrix.isolation_db[1]).epsilon(1e-12));
        CHECK(std::abs(matrix.isolation_db[0]) < 3.0); // no useful separation
    }

    SUBCASE("fewer than two assignments rejected")
    {
        std::vector<hologram::ReceiverTarget> one = {f.targets[0]};
        CHECK_THROWS_AS(crosstalk_matrix(f.source, config.source_amplitudes(), f.pattern, one,
                                         f.geometry, c10),
                        DomainError);
    }
}

TEST_CASE("superposition: both-modes map equals the pointwise sum of single-mode maps")
{
    const auto &f = fixture();
    ScanPlane plane;
    plane.axis1_min = -0.12;
    plane.axis1_max = 0.12;
    plane.axis1_samples = 25;
    plane.axis2_min = 0.08;
    plane.axis2_max = 0.35;
    plane.axis2_samples = 28;

    const auto t1 = transmit_through(f.incident[0], f.pattern);
    const auto t2 = transmit_through(f.incident[1], f.pattern);
    std::vector<cdouble> both(t1.size());
    for (size_t i = 0; i < t1.size(); ++i)
        both[i] = t1[i] + t2[i];

    const auto m1 = scan_plane(plane, t1, f.geometry, c10);
    const auto m2 = scan_plane(plane, t2, f.geometry, c10);
    const auto mb = scan_plane(plane, both, f.geometry, c10);
    for (size_t i = 0; i < mb.samples.size(); ++i)
        CHECK(std::abs(mb.samples[i] - (m1.samples[i] + m2.samples[i])) <=
              1e-12 * std::abs(mb.samples[i]) + 1e-18);
}

TEST_CASE("energy does not increase with insertion loss")
{
    const auto &f = fixture();
    ScanPlane plane;
    plane.axis1_min = -0.1;
    plane.axis1_max = 0.1;
    plane.axis1_samples = 21;
    plane.axis2_min = 0.1;
    plane.axis2_max = 0.3;
    plane.axis2_samples = 21;

    const auto lossless = hologram::quantize_phase(f.pattern, 4, 0.0);
    const auto lossy = hologram::quantize_phase(f.pattern, 4, 1.0);
    const auto m0 = scan_plane(plane, transmit_through(f.incident[0], lossless), f.geometry, c10);
    const auto m1 = scan_plane(plane, transmit_through(f.incident[0], lossy), f.geometry, c10);
    double e0 = 0.0, e1 = 0.0;
    for (size_t i = 0; i < m0.samples.size(); ++i)
    {
        e0 += std::norm(m0.samples[i]);
        e1 += std::norm(m1.samples[i]);
    }
    CHECK(e1 <= e0);
    CHECK(e1 / e0 == doctest::Approx(std::pow(10.0, -0.1)).epsilon(1e-9));
}
