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

#include <numbers>

#include "vortexsim/error.hpp"

namespace vortexsim
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Global physics context of a scenario. All fields are derived from the
    // carrier frequency, so the invariants wavelength*frequency == c and
    // k*wavelength == 2*pi hold by construction.
    //
    // Phase convention used throughout the library: time factor exp(+j w t),
    // outgoing spherical waves exp(-j k r) / (4 pi r).
    struct SimulationConstants
    {
        double frequency_hz = 0.0;  // carrier frequency [Hz]
        double wavelength_m = 0.0;  // c / frequency [m]
        double wavenumber = 0.0;    // 2 pi / wavelength [rad/m]

        static SimulationConstants from_frequency(double frequency_hz)
        {
            if (!(frequency_hz > 0.0))
                throw DomainError("frequency must be positive");
            SimulationConstants c;
            c.frequency_hz = frequency_hz;
            c.wavelength_m = speed_of_light / frequency_hz;
            c.wavenumber = two_pi / c.wavelength_m;
            return c;
        }
    };

    // Wraps an angle to [0, 2*pi).
    inline double wrap_phase(double phase_rad)
    {
        double w = std::fmod(phase_rad, two_pi);
        if (w < 0.0)
            w += two_pi;
        if (w >= two_pi) // fmod can land exactly on 2*pi after the correction
            w -= two_pi;
        return w;
    }

} // namespace vortexsim
