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

double bessel_j(int order, double x)
{
    if (order < 0 || order > 20)
        throw DomainError("bessel_j: order must be in [0, 20], got " + std::to_string(order));
    if (!(std::abs(x) <= 100.0))
        throw DomainError("bessel_j: |x| must be <= 100, got " + std::to_string(x));

    // J_n(-x) = (-1)^n J_n(x)
    const double ax = std::abs(x);
    double v = std::cyl_bessel_j(static_cast<double>(order), ax);
    if (x < 0.0 && (order % 2) != 0)
        v = -v;
    return v;
}

double bessel_first_max(int order)
{
    if (order < 1 || order > max_vortex_order)
        throw DomainError("bessel_first_max: order must be in [1, 8], got " +
                          std::to_string(order));

    // J_order rises from 0 to its first maximum before its first positive
    // zero (> order + 2.4), so it is unimodal on (0, order + 2.5].
    double a = 1e-9;
    double b = order + 2.5;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = bessel_j(order, c);
    double fd = bessel_j(order, d);
    while (b - a > 1e-8)
    {
        if (fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = bessel_j(order, c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = bessel_j(order, d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace vortexsim::waves
