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

#pragma once

#include <complex>
#include <map>
#include <vector>

#include "vortexsim/constants.hpp"
#include "vortexsim/error.hpp"
#include "vortexsim/vec3.hpp"
#include "vortexsim/waves.hpp"

namespace vortexsim::hologram
{
    using waves::cdouble;
    using waves::VortexMode;

    // Rectangular unit lattice in the z = 0 plane, centered at the origin.
    // Unit (m, n) sits at x = (n - (N-1)/2) * p, y = (m - (M-1)/2) * p.
    // With even M, N no unit falls exactly on the z-axis.
    struct MetasurfaceGeometry
    {
        int rows = 28;          // M
        int cols = 28;          // N
        double period_m = 0.015;

        void validate() const;
        int unit_count() const { return rows * cols; }

        Vec3 unit_position(int m, int n) const
        {
            return {(n - (cols - 1) / 2.0) * period_m, (m - (rows - 1) / 2.0) * period_m, 0.0};
        }
    };

    // One receiving user: a focal target on the z > 0 side with the vortex
    // mode assigned to its stream.
    struct ReceiverTarget
    {
        int index = 0;
        Vec3 position;
        VortexMode assigned_mode;

        void validate() const; // z > 0
    };

    // Axicon-style radial mask, phase (2 pi / lambda) * rho * sin(alpha).
    struct BesselMaskConfig
    {
        double alpha_rad = 0.0;

        void validate() const; // 0 <= alpha < pi/2
    };

    // Complex drive amplitudes. Missing entries default to 1+0j.
    struct SourceAmplitudes
    {
        std::map<int, cdouble> beta_ref_by_mode;
        std::map<int, cdouble> beta_obj_by_receiver;

        cdouble beta_ref(int mode_l) const;
        cdouble beta_obj(int receiver_index) const;
    };

    // Continuous per-unit transmission phases in [0, 2*pi), row-major.
    struct PhasePattern
    {
        MetasurfaceGeometry geometry;
        std::vector<double> phase_rad;       // row-major, index m*cols + n
        std::vector<ReceiverTarget> targets; // the (mode, target) pairs encoded
        BesselMaskConfig mask;
        bool normalized_amplitudes = true;

        double phase(int m, int n) const { return phase_rad[static_cast<size_t>(m) * geometry.cols + n]; }
    };

    // Pattern snapped to L uniformly spaced states; state q represents phase
    // 2*pi*q/L. insertion_loss_db is a uniform transmission amplitude loss.
    struct QuantizedPattern
    {
        MetasurfaceGeometry geometry;
        std::vector<int> state;              // row-major, values in [0, levels)
        int levels = 4;
        double insertion_loss_db = 0.0;
        std::vector<ReceiverTarget> targets;
        BesselMaskConfig mask;

        double represented_phase(int m, int n) const
        {
            return two_pi * state[static_cast<size_t>(m) * geometry.cols + n] / levels;
        }
    };

    /// Propagation-distance excess |unit - target| - z_p of a surface unit
    /// relative to the on-axis path of target p.
    double path_excess(const Vec3 &unit_pos, const ReceiverTarget &target);

    /// Converging spherical ("object") wave of receiver p, recorded at a
    /// surface unit:
    ///
    ///   beta_obj * exp(+j k Delta_d) / (4 pi |unit - target|)
    ///
    /// The +j sign makes the recorded trace the phase conjugate of a wave
    /// diverging from the target, i.e. the wave that converges onto the
    /// receiver once re-radiated with the exp(-j k r) kernel.
    cdouble object_wave(const Vec3 &unit_pos, const ReceiverTarget &target, cdouble beta_obj,
                        const SimulationConstants &constants);

    /// Single-mode holographic weight T_l = W_obj / W_ref for one unit:
    /// magnitude (|beta_obj| r_T) / (|beta_ref| r_R), phase
    /// k (r_T + Delta_d) + l * azimuth(unit) plus the beta phases, so that
    /// T_l * reference_wave == object_wave holds exactly.
    cdouble single_mode_pattern(const Vec3 &unit_pos, const Vec3 &source_pos, VortexMode mode,
                                const ReceiverTarget &target, const SourceAmplitudes &amplitudes,
                                const SimulationConstants &constants);

    /// Radial mask phase at a unit: (2 pi / lambda) * |unit_xy| * sin(alpha).
    double bessel_mask_phase(const Vec3 &unit_pos, const BesselMaskConfig &mask,
                             const SimulationConstants &constants);

    /// Multi-target pattern: per unit, the argument of the vector sum of the
    /// single-mode weights, each rotated by the mask phase:
    ///
    ///   phase(m,n) = arg[ sum_l T_l(m,n) * exp(j phi_mask(m,n)) ]  in [0, 2*pi)
    ///
    /// With normalize_amplitudes each T_l is reduced to its unit phasor
    /// before the sum, giving all targets equal weight; otherwise the
    /// amplitude ratio of T_l is kept literally. A vector sum with magnitude
    /// below 1e-15 has no defined phase and raises DegenerateSumError listing
    /// the affected units.
    PhasePattern synthesize_pattern(const MetasurfaceGeometry &geometry,
                                    const std::vector<ReceiverTarget> &targets,
                                    const Vec3 &source_pos, const SourceAmplitudes &amplitudes,
                                    const BesselMaskConfig &mask,
                                    const SimulationConstants &constants,
                                    bool normalize_amplitudes = true);

    /// Snaps each phase to the nearest of L uniform levels; an exact tie
    /// between two levels resolves toward the lower state index.
    QuantizedPattern quantize_phase(const PhasePattern &pattern, int levels,
                                    double insertion_loss_db = 0.0);

} // namespace vortexsim::hologram
