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

#include <cmath>
#include <string>

#include "vortexsim/waves.hpp"

namespace vortexsim::waves
{

void validate_mode(VortexMode mode)
{
    if (std::abs(mode.l) > max_vortex_order)
        throw DomainError("vortex mode |l| must be <= " + std::to_string(max_vortex_order) +
                          ", got l = " + std::to_string(mode.l));
}

double uca_radius(VortexMode mode, const SimulationConstants &constants,
                  double divergence_angle_rad)
{
    validate_mode(mode);
    if (mode.l == 0)
        throw DomainError("uca_radius: mode l = 0 has no conical lobe");
    if (!(divergence_angle_rad > 0.0) || !(divergence_angle_rad < pi / 2.0))
        throw DomainError("uca_radius: divergence angle must lie in (0, pi/2)");

    const double chi = bessel_first_max(std::abs(mode.l));
    return chi / (constants.wavenumber * std::sin(divergence_angle_rad));
}

std::vector<double> uca_element_phases(VortexMode mode, int num_elements)
{
    validate_mode(mode);
    if (num_elements < 2 * std::abs(mode.l) + 1)
        throw SamplingError("uca_element_phases: need N >= 2|l|+1 elements, got N = " +
                            std::to_string(num_elements) + " for l = " + std::to_string(mode.l));

    std::vector<double> phases(static_cast<size_t>(num_elements));
    for (int i = 0; i < num_elements; ++i)
        phases[static_cast<size_t>(i)] = wrap_phase(-mode.l * two_pi * i / num_elements);
    return phases;
}

cdouble reference_wave(const Vec3 &unit_pos, const Vec3 &source_pos, VortexMode mode,
                       cdouble beta_ref, const SimulationConstants &constants)
{
    validate_mode(mode);
    const double r = distance(unit_pos, source_pos);
    if (!(r > 0.0))
        throw SingularityError("reference_wave: evaluation point coincides with the source");
    if (mode.l != 0 && unit_pos.x == 0.0 && unit_pos.y == 0.0)
        throw SingularityError("reference_wave: azimuth undefined on the z-axis for l != 0");

    const double azimuth = std::atan2(unit_pos.y, unit_pos.x);
    const double phase = -(constants.wavenumber * r + mode.l * azimuth);
    return beta_ref * std::polar(1.0 / (4.0 * pi * r), phase);
}

Vec3 UcaRing::element_position(int i) const
{
    const double angle = two_pi * i / num_elements;
    return {center.x + radius_m * std::cos(angle), center.y + radius_m * std::sin(angle),
            center.z};
}

void UcaRing::validate() const
{
    validate_mode(mode);
    if (num_elements < 2 * std::abs(mode.l) + 1)
        throw SamplingError("UcaRing: need N >= 2|l|+1 elements");
    if (!(radius_m > 0.0))
        throw DomainError("UcaRing: radius must be positive");
    if (!(element_amplitude > 0.0))
        throw DomainError("UcaRing: element amplitude must be positive");
}

const UcaRing &UcaGenerator::ring_for_mode(VortexMode mode) const
{
    for (const auto &ring : rings)
        if (ring.mode.l == mode.l)
            return ring;
    throw DomainError("UcaGenerator: no ring for mode l = " + std::to_string(mode.l));
}

void UcaGenerator::validate() const
{
    if (rings.empty())
        throw DomainError("UcaGenerator: no rings");
    for (size_t i = 0; i < rings.size(); ++i)
    {
        rings[i].validate();
        if (!(rings[i].center == position))
            throw DomainError("UcaGenerator: all rings must share the generator center");
        for (size_t j = i + 1; j < rings.size(); ++j)
            if (rings[i].mode.l == rings[j].mode.l)
                throw DomainError("UcaGenerator: ring modes must be pairwise distinct");
    }
}

UcaRing make_uca_ring(VortexMode mode, int num_elements, const SimulationConstants &constants,
                      double divergence_angle_rad, const Vec3 &center, double element_amplitude)
{
    UcaRing ring;
    ring.mode = mode;
    ring.num_elements = num_elements;
    ring.radius_m = uca_radius(mode, constants, divergence_angle_rad);
    ring.center = center;
    ring.element_amplitude = element_amplitude;
    ring.validate();
    return ring;
}

cdouble uca_incident_field(const Vec3 &point, const UcaGenerator &generator, VortexMode mode,
                           const SimulationConstants &constants)
{
    const UcaRing &ring = generator.ring_for_mode(mode);
    const std::vector<double> phases = uca_element_phases(ring.mode, ring.num_elements);

    cdouble acc{0.0, 0.0};
    for (int i = 0; i < ring.num_elements; ++i)
    {
        const Vec3 ep = ring.element_position(i);
        const double r = distance(point, ep);
        if (!(r > 0.0))
            throw SingularityError("uca_incident_field: point coincides with ring element " +
                                   std::to_string(i));
        acc += std::polar(ring.element_amplitude / (4.0 * pi * r),
                          phases[static_cast<size_t>(i)] - constants.wavenumber * r);
    }
    return acc;
}

} // namespace vortexsim::waves
