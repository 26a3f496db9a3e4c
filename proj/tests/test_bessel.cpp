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

#include "oracle_bessel.hpp"
#include "vortexsim/waves.hpp"

using namespace vortexsim;
using waves::bessel_first_max;
using waves::bessel_j;

TEST_CASE("bessel_j special values")
{
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(7, 0.0) == 0.0);

    // first maximum of J_1, value from the series oracle
    const double expected = oracle::bessel_j_series(1, 1.8412);
    CHECK(expected == doctest::Approx(0.581865).epsilon(1e-5));
    CHECK(bessel_j(1, 1.8412) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bessel_j matches the series oracle to 1e-10 on the grid")
{
    double worst = 0.0;
    for (int order = 0; order <= 8; ++order)
    {
        for (int i = 0; i < 200; ++i)
        {
            const double x = 20.0 * i / 199.0;
            worst = std::max(worst, std::abs(bessel_j(order, x) - oracle::bessel_j_series(order, x)));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("bessel_j three-term recurrence")
{
    // J_{l-1}(x) + J_{l+1}(x) = (2l/x) J_l(x)
    for (int l = 1; l <= 8; ++l)
    {
        for (double x = 0.5; x <= 20.0; x += 0.5)
        {
            const double lhs = bessel_j(l - 1, x) + bessel_j(l + 1, x);
            const double rhs = 2.0 * l / x * bessel_j(l, x);
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("bessel_j negative arguments and parity")
{
    CHECK(bessel_j(0, -3.7) == bessel_j(0, 3.7));
    CHECK(bessel_j(1, -3.7) == -bessel_j(1, 3.7));
    CHECK(bessel_j(2, -100.0) == bessel_j(2, 100.0));
}

TEST_CASE("bessel_j domain errors")
{
    CHECK_THROWS_AS(bessel_j(-1, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(21, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0, 100.5), DomainError);
    CHECK_THROWS_AS(bessel_j(0, std::nan("")), DomainError);
}

TEST_CASE("bessel_first_max against the independent search")
{
    CHECK(bessel_first_max(1) == doctest::Approx(1.84118).epsilon(1e-5));
    CHECK(bessel_first_max(2) == doctest::Approx(3.05424).epsilon(1e-5));
    for (int order = 1; order <= 8; ++order)
    {
        const double chi = bessel_first_max(order);
        CHECK(chi == doctest::Approx(oracle::bessel_first_max_series(order)).epsilon(1e-6));
        // definition of a maximum
        CHECK(bessel_j(order, chi - 1e-3) < bessel_j(order, chi));
        CHECK(bessel_j(order, chi + 1e-3) < bessel_j(order, chi));
    }
}

TEST_CASE("bessel_first_max domain errors")
{
    CHECK_THROWS_AS(bessel_first_max(0), DomainError);
    CHECK_THROWS_AS(bessel_first_max(9), DomainError);
}
