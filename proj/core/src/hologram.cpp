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

#include "vortexsim/hologram.hpp"

namespace vortexsim::hologram
{

void MetasurfaceGeometry::validate() const
{
    if (rows < 1 || cols < 1)
        throw ValidationError("surface", "rows and cols must be >= 1");
    if (!(period_m > 0.0))
        throw ValidationError("surface.period", "period must be positive");
}

void ReceiverTarget::validate() const
{
    waves::validate_mode(assigned_mode);
    if (!(position.z > 0.0))
        throw ValidationError("target", "receiver must sit on the z > 0 side");
}

void BesselMaskConfig::validate() const
{
    if (!(alpha_rad >= 0.0) || !(alpha_rad < pi / 2.0))
        throw ValidationError("mask.alpha", "axicon angle must lie in [0, pi/2)");
}

cdouble SourceAmplitudes::beta_ref(int mode_l) const
{
    auto it = beta_ref_by_mode.find(mode_l);
    const cdouble beta = it == beta_ref_by_mode.end() ? cdouble{1.0, 0.0} : it->second;
    if (!(std::abs(beta) > 0.0))
        throw DomainError("beta_ref magnitude must be positive for mode " +
                          std::to_string(mode_l));
    return beta;
}

cdouble SourceAmplitudes::beta_obj(int receiver_index) const
{
    auto it = beta_obj_by_receiver.find(receiver_index);
    const cdouble beta = it == beta_obj_by_receiver.end() ? cdouble{1.0, 0.0} : it->second;
    if (!(std::abs(beta) > 0.0))
        throw DomainError("beta_obj magnitude must be positive for receiver " +
                          std::to_string(receiver_index));
    return beta;
}

double path_excess(const Vec3 &unit_pos, const ReceiverTarget &target)
{
    target.validate();
    return distance(unit_pos, target.position) - target.position.z;
}

cdouble object_wave(const Vec3 &unit_pos, const ReceiverTarget &target, cdouble beta_obj,
                    const SimulationConstants &constants)
{
    const double r = distance(unit_pos, target.position);
    if (!(r > 0.0))
        throw SingularityError("object_wave: unit coincides with the receiver");
    const double excess = path_excess(unit_pos, target);
    return beta_obj * std::polar(1.0 / (4.0 * pi * r), constants.wavenumber * excess);
}

cdouble single_mode_pattern(const Vec3 &unit_pos, const Vec3 &source_pos, VortexMode mode,
                            const ReceiverTarget &target, const SourceAmplitudes &amplitudes,
                            const SimulationConstants &constants)
{
    waves::validate_mode(mode);
    const double r_source = distance(unit_pos, source_pos);
    const double r_receiver = distance(unit_pos, target.position);
    if (!(r_source > 0.0) || !(r_receiver > 0.0))
        throw SingularityError("single_mode_pattern: unit coincides with source or receiver");
    if (mode.l != 0 && unit_pos.x == 0.0 && unit_pos.y == 0.0)
        throw SingularityError("single_mode_pattern: azimuth undefined on the z-axis");

    const cdouble beta_ratio =
        amplitudes.beta_obj(target.index) / amplitudes.beta_ref(mode.l);
    const double excess = path_excess(unit_pos, target);
    const double azimuth = std::atan2(unit_pos.y, unit_pos.x);
    const double phase =
        constants.wavenumber * (r_source + excess) + mode.l * azimuth;
    return beta_ratio * std::polar(r_source / r_receiver, phase);
}

double bessel_mask_phase(const Vec3 &unit_pos, const BesselMaskConfig &mask,
                         const SimulationConstants &constants)
{
    mask.validate();
    const double rho = std::hypot(unit_pos.x, unit_pos.y);
    return constants.wavenumber * rho * std::sin(mask.alpha_rad);
}

PhasePattern synthesize_pattern(const MetasurfaceGeometry &geometry,
                                const std::vector<ReceiverTarget> &targets,
                                const Vec3 &source_pos, const SourceAmplitudes &amplitudes,
                                const BesselMaskConfig &mask, const SimulationConstants &constants,
                                bool normalize_amplitudes)
{
    geometry.validate();
    mask.validate();
    if (targets.empty())
        throw DomainError("synthesize_pattern: at least one (mode, target) assignment required");
    for (size_t i = 0; i < targets.size(); ++i)
    {
        targets[i].validate();
        for (size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i].assigned_mode.l == targets[j].assigned_mode.l)
                throw DomainError("synthesize_pattern: assigned modes must be distinct");
    }

    PhasePattern pattern;
    pattern.geometry = geometry;
    pattern.targets = targets;
    pattern.mask = mask;
    pattern.normalized_amplitudes = normalize_amplitudes;
    pattern.phase_rad.resize(static_cast<size_t>(geometry.unit_count()));

    std::vector<std::pair<int, int>> degenerate_units;
    for (int m = 0; m < geometry.rows; ++m)
    {
        for (int n = 0; n < geometry.cols; ++n)
        {
            const Vec3 unit = geometry.unit_position(m, n);
            const double mask_phase = bessel_mask_phase(unit, mask, constants);
            const cdouble rotator = std::polar(1.0, mask_phase);

            cdouble acc{0.0, 0.0};
            for (const ReceiverTarget &target : targets)
            {
                cdouble t = single_mode_pattern(unit, source_pos, target.assigned_mode, target,
                                                amplitudes, constants);
                if (normalize_amplitudes)
                    t /= std::abs(t);
                acc += t * rotator;
            }

            if (std::abs(acc) < 1e-15)
            {
                degenerate_units.emplace_back(m, n);
                continue;
            }
            pattern.phase_rad[static_cast<size_t>(m) * geometry.cols + n] =
                wrap_phase(std::arg(acc));
        }
    }

    if (!degenerate_units.empty())
    {
        std::string msg = "synthesize_pattern: vector sum degenerate at unit(s)";
        for (const auto &[m, n] : degenerate_units)
            msg += " (" + std::to_string(m) + "," + std::to_string(n) + ")";
        throw DegenerateSumError(msg, degenerate_units);
    }
    return pattern;
}

QuantizedPattern quantize_phase(const PhasePattern &pattern, int levels, double insertion_loss_db)
{
    if (levels < 2)
        throw DomainError("quantize_phase: need at least 2 levels");
    if (!(insertion_loss_db >= 0.0))
        throw DomainError("quantize_phase: insertion loss must be >= 0 dB");

    QuantizedPattern q;
    q.geometry = pattern.geometry;
    q.levels = levels;
    q.insertion_loss_db = insertion_loss_db;
    q.targets = pattern.targets;
    q.mask = pattern.mask;
    q.state.resize(pattern.phase_rad.size());

    for (size_t i = 0; i < pattern.phase_rad.size(); ++i)
    {
        const double x = pattern.phase_rad[i] * levels / two_pi;
        double s = std::floor(x + 0.5);
        if (x + 0.5 == s) // exact midpoint: take the lower level
            s -= 1.0;
        long idx = static_cast<long>(s) % levels;
        if (idx < 0)
            idx += levels;
        q.state[i] = static_cast<int>(idx);
    }
    return q;
}

} // namespace vortexsim::hologram
