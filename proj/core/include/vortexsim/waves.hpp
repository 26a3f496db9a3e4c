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
#include <vector>

#include "vortexsim/constants.hpp"
#include "vortexsim/error.hpp"
#include "vortexsim/vec3.hpp"

namespace vortexsim::waves
{
    using cdouble = std::complex<double>;

    // Topological charge of a vortex wave. The phase of the wave advances by
    // 2*pi*l per turn around the propagation axis. |l| is capped at 8, the
    // limit an 8-element ring can still represent with margin.
    struct VortexMode
    {
        int l = 0;
    };

    inline constexpr int max_vortex_order = 8;

    void validate_mode(VortexMode mode); // throws DomainError if |l| > 8

    /// Bessel function of the first kind J_order(x).
    /// Supported domain: 0 <= order <= 20, |x| <= 100; absolute accuracy 1e-10.
    double bessel_j(int order, double x);

    /// Abscissa chi_l of the first maximum of J_order on x > 0, located by
    /// golden-section search to 1e-6. Supported orders 1..8.
    double bessel_first_max(int order);

    /// Ring radius R_l = chi_|l| / (k sin(theta)) that puts the conical main
    /// lobe of an l-mode ring source at divergence angle theta. Requires
    /// l != 0 and 0 < theta < pi/2.
    double uca_radius(VortexMode mode, const SimulationConstants &constants,
                      double divergence_angle_rad);

    /// Progressive drive phases for a uniform circular array synthesizing
    /// mode l: element i at azimuth 2*pi*i/N carries phase -l*2*pi*i/N,
    /// wrapped to [0, 2*pi). The accumulated winding around the ring is
    /// -2*pi*l, which radiates the exp(-j*l*azimuth) convention used by
    /// reference_wave. Requires N >= 2|l|+1 (azimuthal sampling bound).
    std::vector<double> uca_element_phases(VortexMode mode, int num_elements);

    /// Ideal spherical vortex wave of mode l radiated from source_pos,
    /// evaluated at unit_pos:
    ///
    ///   beta * exp(-j k r - j l atan2(y, x)) / (4 pi r),   r = |unit - source|
    ///
    /// The azimuth is the four-quadrant angle of the evaluation point's own
    /// in-plane coordinates (x, y). Throws SingularityError at r == 0 or on
    /// the z-axis when l != 0.
    cdouble reference_wave(const Vec3 &unit_pos, const Vec3 &source_pos, VortexMode mode,
                           cdouble beta_ref, const SimulationConstants &constants);

    // One circular array of point radiators. Elements sit uniformly on the
    // ring at azimuth 2*pi*i/N in the plane z = center.z.
    struct UcaRing
    {
        VortexMode mode;
        int num_elements = 8;
        double radius_m = 0.0;
        Vec3 center;
        double element_amplitude = 1.0; // radiation factor, folded scalar

        Vec3 element_position(int i) const;
        void validate() const;
    };

    // Nested rings sharing one phase center, one ring per served mode.
    struct UcaGenerator
    {
        std::vector<UcaRing> rings;
        Vec3 position; // shared phase center

        const UcaRing &ring_for_mode(VortexMode mode) const;
        void validate() const; // common center, pairwise distinct modes
    };

    /// Builds the ring for `mode` with radius from uca_radius().
    UcaRing make_uca_ring(VortexMode mode, int num_elements, const SimulationConstants &constants,
                          double divergence_angle_rad, const Vec3 &center,
                          double element_amplitude = 1.0);

    /// Coherent sum of the selected ring's element contributions at `point`:
    ///
    ///   sum_i gamma * exp(j phi_i) * exp(-j k r_i) / (4 pi r_i)
    ///
    /// This discrete sum is the physical incident field used by the
    /// propagation stage when the source model is "discrete-uca".
    cdouble uca_incident_field(const Vec3 &point, const UcaGenerator &generator, VortexMode mode,
                               const SimulationConstants &constants);

} // namespace vortexsim::waves
