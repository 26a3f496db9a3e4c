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
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vortexsim/error.hpp"

namespace vortexsim::link
{
    using cdouble = std::complex<double>;
    using ChannelMatrix = std::vector<std::vector<cdouble>>; // h[p][q]: mode-q gain at rx p

    /// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt(2)).
    double q_function(double x);

    /// Derives an independent substream seed from (base_seed, index) with a
    /// splitmix64 mix, so grid points can run in any order or in parallel.
    std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index);

    // Portable Gaussian source. The procedure is pinned so a seed reproduces
    // bit-identically on any platform with IEEE-754 doubles:
    //   engine   std::mt19937_64(seed)
    //   uniform  u = (engine() >> 11) * 2^-53            in [0, 1)
    //   pairs    r = sqrt(-2 ln(1 - u1)), angle = 2 pi u2
    //            z0 = r cos(angle), z1 = r sin(angle)    (Box-Muller)
    // next() returns z0 then z1; next_complex() consumes two samples in
    // (re, im) order. next_u64() taps the engine directly for bit streams.
    class GaussianSampler
    {
      public:
        explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

        double next();
        cdouble next_complex(double sigma_per_dim);
        std::uint64_t next_u64() { return engine_(); }

      private:
        double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        std::mt19937_64 engine_;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };

    /// Gray-mapped unit-energy QPSK: bit pair (b0, b1) -> symbol with
    /// imaginary sign from b0 and real sign from b1:
    ///   00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2,
    ///   11 -> (-1-j)/sqrt2, 10 -> (+1-j)/sqrt2.
    /// The bit count must be even.
    std::vector<cdouble> qpsk_modulate(std::span<const int> bits);

    /// Hard per-quadrant decision inverting the Gray map. A coordinate that
    /// is exactly zero decides toward the positive half-plane.
    std::vector<int> qpsk_demodulate(std::span<const cdouble> symbols);

    /// y_p[k] = sum_q h[p][q] x_q[k] + n_p[k]. Noise is circularly symmetric
    /// Gaussian with per-dimension variance sigma2[p], drawn per symbol in
    /// receiver order (rx 0, rx 1, ...), one next_complex() each.
    std::vector<std::vector<cdouble>> apply_channel(const std::vector<std::vector<cdouble>> &tx,
                                                    const ChannelMatrix &h,
                                                    std::span<const double> sigma2_per_rx,
                                                    GaussianSampler &rng);

    /// SINR at receiver p: |h_pp|^2 P / (sum_{q != p} |h_pq|^2 P + 2 sigma2).
    /// Returns +infinity when the denominator is zero.
    double estimate_sinr(const ChannelMatrix &h, int p, double signal_power, double sigma2);

    struct LinkConfig
    {
        ChannelMatrix h;               // square, one row per receiver
        std::uint64_t seed = 1;
        int constellation_cap = 2000;  // samples kept per stream

        int num_streams() const { return static_cast<int>(h.size()); }
        void validate() const;
    };

    struct SweepStopping
    {
        std::uint64_t min_errors = 100;   // per stream
        std::uint64_t max_bits = 10'000'000;
    };

    struct BerPoint
    {
        double snr_db = 0.0;  // Es/N0 at the receiver, dB
        std::uint64_t bits = 0;
        std::uint64_t errors = 0;
        double ber = 0.0;
    };

    struct BerCurve
    {
        std::vector<std::vector<BerPoint>> per_stream;  // [stream][grid point]
        std::vector<double> reference_ber;              // interference-free Q curve per point
    };

    struct ConstellationDump
    {
        std::vector<std::vector<cdouble>> per_stream;  // equalized symbols, capped
        double snr_db = 0.0;                           // grid point the dump was taken at
    };

    struct BerResult
    {
        BerCurve curve;
        ConstellationDump constellation;
    };

    /// Monte-Carlo sweep over an Es/N0 grid (dB, strictly increasing). Per
    /// point, noise is sized so each receiver's own-stream Es/N0 equals the
    /// grid value: sigma2[p] = |h_pp|^2 / (2 * 10^(snr/10)). Symbols run in
    /// blocks until every stream reached stopping.min_errors errors or
    /// stopping.max_bits bits. Receivers equalize by their own diagonal gain
    /// (y_p / h_pp) before the hard decision; the simulation draws the noise
    /// directly in the equalized domain (per-dimension sigma 1/sqrt(2 snr)),
    /// which is distribution-identical and makes diagonal phase rotations
    /// bit-exact no-ops under a fixed seed. The reference curve is the
    /// interference-free QPSK BER Q(sqrt(2 Eb/N0)) with Eb/N0 = (Es/N0)/2.
    /// Each grid point draws from substream_seed(seed, point), so the result
    /// is bit-identical for any worker count. The constellation dump keeps
    /// the first constellation_cap equalized symbols per stream at the last
    /// grid point.
    BerResult ber_sweep(const LinkConfig &config, std::span<const double> snr_grid_db,
                        const SweepStopping &stopping);

} // namespace vortexsim::link
