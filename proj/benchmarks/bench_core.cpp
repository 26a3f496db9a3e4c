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

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "vortexsim/link.hpp"
#include "vortexsim/scenario.hpp"

namespace
{
    namespace vs = vortexsim;
    using vs::waves::cdouble;

    struct Setup
    {
        vs::scenario::ScenarioConfig config = vs::scenario::ScenarioConfig::axial_default();
        vs::SimulationConstants constants = config.constants();
        vs::hologram::MetasurfaceGeometry geometry = config.geometry();
        vs::hologram::PhasePattern pattern = config.synthesize();
        std::vector<cdouble> transmitted = vs::propagation::transmit_through(
            vs::propagation::incident_field_on_surface(config.source_model(), {1}, geometry,
                                                       config.source_amplitudes(), constants),
            pattern);
    };

    const Setup &setup()
    {
        static const Setup s;
        return s;
    }
} // namespace

static void BM_bessel_j(benchmark::State &state)
{
    double x = 0.0;
    for (auto _ : state)
    {
        x += 0.37;
        if (x > 20.0)
            x -= 20.0;
        benchmark::DoNotOptimize(vs::waves::bessel_j(3, x));
    }
}
BENCHMARK(BM_bessel_j);

static void BM_synthesize_pattern(benchmark::State &state)
{
    const auto &s = setup();
    for (auto _ : state)
    {
        auto pattern = vs::hologram::synthesize_pattern(
            s.geometry, s.config.targets(), s.config.source.position,
            s.config.source_amplitudes(), s.config.mask_config(), s.constants, true);
        benchmark::DoNotOptimize(pattern.phase_rad.data());
    }
}
BENCHMARK(BM_synthesize_pattern);

static void BM_quantize_pattern(benchmark::State &state)
{
    const auto &s = setup();
    for (auto _ : state)
    {
        auto q = vs::hologram::quantize_phase(s.pattern, 4);
        benchmark::DoNotOptimize(q.state.data());
    }
}
BENCHMARK(BM_quantize_pattern);

static void BM_uca_incident_field(benchmark::State &state)
{
    const auto &s = setup();
    const auto source = s.config.source_model();
    for (auto _ : state)
    {
        auto incident = vs::propagation::incident_field_on_surface(
            source, {2}, s.geometry, s.config.source_amplitudes(), s.constants);
        benchmark::DoNotOptimize(incident.data());
    }
}
BENCHMARK(BM_uca_incident_field);

// one observation point, 784-unit Huygens sum
static void BM_field_at(benchmark::State &state)
{
    const auto &s = setup();
    double z = 0.1;
    for (auto _ : state)
    {
        z = z >= 0.5 ? 0.1 : z + 1e-4;
        benchmark::DoNotOptimize(
            vs::propagation::field_at({0.01, 0.0, z}, s.transmitted, s.geometry, s.constants));
    }
}
BENCHMARK(BM_field_at);

// one 201-sample scan line at fixed z
static void BM_scan_row(benchmark::State &state)
{
    const auto &s = setup();
    vs::propagation::ScanPlane plane;
    plane.axis1_samples = 201;
    plane.axis2_min = 0.15;
    plane.axis2_max = 0.1501;
    plane.axis2_samples = 2;
    for (auto _ : state)
    {
        auto map = vs::propagation::scan_plane(plane, s.transmitted, s.geometry, s.constants);
        benchmark::DoNotOptimize(map.samples.data());
    }
}
BENCHMARK(BM_scan_row);

// 4096-symbol QPSK block through a 2x2 channel with noise
static void BM_qpsk_channel_block(benchmark::State &state)
{
    vs::link::GaussianSampler rng(1234);
    std::vector<int> bits(8192);
    for (auto &b : bits)
        b = static_cast<int>(rng.next_u64() & 1u);
    const std::vector<std::vector<cdouble>> tx = {vs::link::qpsk_modulate(bits),
                                                  vs::link::qpsk_modulate(bits)};
    const vs::link::ChannelMatrix h = {{{1.0, 0.0}, {0.1, 0.05}}, {{-0.04, 0.08}, {1.0, 0.0}}};
    const std::vector<double> sigma2 = {0.05, 0.05};
    for (auto _ : state)
    {
        auto rx = vs::link::apply_channel(tx, h, sigma2, rng);
        auto decided = vs::link::qpsk_demodulate(rx[0]);
        benchmark::DoNotOptimize(decided.data());
    }
}
BENCHMARK(BM_qpsk_channel_block);

BENCHMARK_MAIN();
