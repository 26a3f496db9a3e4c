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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vortexsim/link.hpp"

namespace vortexsim::link
{

namespace
{
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    constexpr double two_pi_d = 2.0 * std::numbers::pi;
} // namespace

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index)
{
    // splitmix64 finalizer over a golden-ratio stride
    std::uint64_t x = base_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

double GaussianSampler::next()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1)); // 1-u1 in (0,1], log finite
    const double angle = two_pi_d * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

cdouble GaussianSampler::next_complex(double sigma_per_dim)
{
    const double re = next();
    const double im = next();
    return {re * sigma_per_dim, im * sigma_per_dim};
}

std::vector<cdouble> qpsk_modulate(std::span<const int> bits)
{
    if (bits.size() % 2 != 0)
        throw DomainError("qpsk_modulate: bit count must be even");

    std::vector<cdouble> symbols(bits.size() / 2);
    for (size_t i = 0; i < symbols.size(); ++i)
    {
        const int b0 = bits[2 * i];     // imaginary sign
        const int b1 = bits[2 * i + 1]; // real sign
        symbols[i] = {b1 ? -inv_sqrt2 : inv_sqrt2, b0 ? -inv_sqrt2 : inv_sqrt2};
    }
    return symbols;
}

std::vector<int> qpsk_demodulate(std::span<const cdouble> symbols)
{
    std::vector<int> bits(symbols.size() * 2);
    for (size_t i = 0; i < symbols.size(); ++i)
    {
        // exact zeros decide toward the positive half-plane
        bits[2 * i] = symbols[i].imag() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = symbols[i].real() < 0.0 ? 1 : 0;
    }
    return bits;
}

std::vector<std::vector<cdouble>> apply_channel(const std::vector<std::vector<cdouble>> &tx,
                                                const ChannelMatrix &h,
                                                std::span<const double> sigma2_per_rx,
                                                GaussianSampler &rng)
{
    const size_t num_streams = tx.size();
    if (h.size() != num_streams)
        throw ShapeError("apply_channel: channel matrix does not match stream count");
    for (const auto &row : h)
        if (row.size() != num_streams)
            throw ShapeError("apply_channel: channel matrix must be square");
    if (sigma2_per_rx.size() != num_streams)
        throw ShapeError("apply_channel: need one noise variance per receiver");
    const size_t len = num_streams == 0 ? 0 : tx[0].size();
    for (const auto &stream : tx)
        if (stream.size() != len)
            throw ShapeError("apply_channel: stream lengths differ");

    std::vector<std::vector<cdouble>> rx(num_streams, std::vector<cdouble>(len));
    for (size_t k = 0; k < len; ++k)
    {
        for (size_t p = 0; p < num_streams; ++p)
        {
            cdouble y{0.0, 0.0};
            for (size_t q = 0; q < num_streams; ++q)
                y += h[p][q] * tx[q][k];
            rx[p][k] = y + rng.next_complex(std::sqrt(sigma2_per_rx[p]));
        }
    }
    return rx;
}

double estimate_sinr(const ChannelMatrix &h, int p, double signal_power, double sigma2)
{
    if (p < 0 || static_cast<size_t>(p) >= h.size())
        throw DomainError("estimate_sinr: receiver index out of range");

    const size_t n = h.size();
    double interference = 0.0;
    for (size_t q = 0; q < n; ++q)
        if (q != static_cast<size_t>(p))
            interference += std::norm(h[p][q]) * signal_power;
    const double denom = interference + 2.0 * sigma2;
    if (denom == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::norm(h[p][static_cast<size_t>(p)]) * signal_power / denom;
}

void LinkConfig::validate() const
{
    if (h.empty())
        throw ValidationError("link.channel", "channel matrix is empty");
    for (const auto &row : h)
        if (row.size() != h.size())
            throw ValidationError("link.channel", "channel matrix must be square");
    for (size_t p = 0; p < h.size(); ++p)
        if (!(std::abs(h[p][p]) > 0.0))
            throw ValidationError("link.channel", "diagonal gain must be nonzero (stream " +
                                                      std::to_string(p) + ")");
    if (constellation_cap < 0)
        throw ValidationError("link.constellation_cap", "cap must be >= 0");
}

namespace
{
    // One grid point of the Monte-Carlo sweep. Noise and bits come from a
    // dedicated substream so points are independent of scheduling.
    //
    // The receiver path works in the equalized domain: with Es/N0 fixed per
    // receiver, y_p / h_pp = sum_q (h_pq / h_pp) x_q + n' where n' is
    // CN(0, 1/snr) regardless of h_pp. Drawing n' directly is distribution-
    // identical to receiver-side noise and makes a diagonal phase rotation a
    // bit-exact no-op under a fixed seed.
    void run_point(const LinkConfig &config, double snr_db, std::uint64_t rng_seed,
                   const SweepStopping &stopping, std::vector<BerPoint> &out_points,
                   std::vector<std::vector<cdouble>> *constellation)
    {
        const int num_streams = config.num_streams();
        const size_t ns = static_cast<size_t>(num_streams);
        const double snr_lin = std::pow(10.0, snr_db / 10.0);
        const double sigma_eq = std::sqrt(1.0 / (2.0 * snr_lin)); // per dimension

        std::vector<std::vector<cdouble>> ratio(ns, std::vector<cdouble>(ns));
        for (size_t p = 0; p < ns; ++p)
            for (size_t q = 0; q < ns; ++q)
                ratio[p][q] = config.h[p][q] / config.h[p][p];

        GaussianSampler rng(rng_seed);
        constexpr size_t block_symbols = 4096;

        std::vector<std::vector<int>> bits(ns, std::vector<int>(2 * block_symbols));
        std::vector<std::vector<cdouble>> tx(ns);
        std::vector<std::vector<cdouble>> eq(ns, std::vector<cdouble>(block_symbols));
        std::vector<std::uint64_t> errors(ns, 0);
        std::uint64_t bits_per_stream = 0;

        auto all_converged = [&]() {
            for (size_t s = 0; s < ns; ++s)
                if (errors[s] < stopping.min_errors)
                    return false;
            return true;
        };

        while (bits_per_stream < stopping.max_bits && !all_converged())
        {
            const size_t symbols =
                std::min<std::uint64_t>(block_symbols, (stopping.max_bits - bits_per_stream) / 2);
            if (symbols == 0)
                break;

            // bit words first (stream order), then per-symbol noise in
            // receiver order
            for (size_t s = 0; s < ns; ++s)
            {
                auto &sb = bits[s];
                sb.resize(2 * symbols);
                std::uint64_t word = 0;
                int avail = 0;
                for (size_t i = 0; i < 2 * symbols; ++i)
                {
                    if (avail == 0)
                    {
                        word = rng.next_u64();
                        avail = 64;
                    }
                    sb[i] = static_cast<int>(word & 1u);
                    word >>= 1;
                    --avail;
                }
                tx[s] = qpsk_modulate(sb);
            }

            for (size_t k = 0; k < symbols; ++k)
            {
                for (size_t p = 0; p < ns; ++p)
                {
                    cdouble z{0.0, 0.0};
                    for (size_t q = 0; q < ns; ++q)
                        z += ratio[p][q] * tx[q][k];
                    eq[p][k] = z + rng.next_complex(sigma_eq);
                }
            }

            for (size_t s = 0; s < ns; ++s)
            {
                const std::span<const cdouble> stream_eq(eq[s].data(), symbols);
                const auto decided = qpsk_demodulate(stream_eq);
                const auto &sent = bits[s];
                for (size_t i = 0; i < decided.size(); ++i)
                    errors[s] += decided[i] != sent[i];

                if (constellation)
                {
                    auto &dump = (*constellation)[s];
                    for (size_t i = 0;
                         i < symbols && dump.size() < static_cast<size_t>(config.constellation_cap);
                         ++i)
                        dump.push_back(stream_eq[i]);
                }
            }
            bits_per_stream += 2 * symbols;
        }

        for (int s = 0; s < num_streams; ++s)
        {
            BerPoint point;
            point.snr_db = snr_db;
            point.bits = bits_per_stream;
            point.errors = errors[static_cast<size_t>(s)];
            point.ber =
                bits_per_stream == 0 ? 0.0 : static_cast<double>(point.errors) / bits_per_stream;
            out_points[static_cast<size_t>(s)] = point;
        }
    }
} // namespace

BerResult ber_sweep(const LinkConfig &config, std::span<const double> snr_grid_db,
                    const SweepStopping &stopping)
{
    config.validate();
    if (snr_grid_db.empty())
        throw DomainError("ber_sweep: SNR grid is empty");
    for (size_t g = 1; g < snr_grid_db.size(); ++g)
        if (!(snr_grid_db[g] > snr_grid_db[g - 1]))
            throw DomainError("ber_sweep: SNR grid must be strictly increasing");
    if (stopping.max_bits < 2)
        throw DomainError("ber_sweep: max_bits must allow at least one symbol");

    const int num_streams = config.num_streams();
    const int num_points = static_cast<int>(snr_grid_db.size());

    BerResult result;
    result.curve.per_stream.assign(static_cast<size_t>(num_streams),
                                   std::vector<BerPoint>(static_cast<size_t>(num_points)));
    result.curve.reference_ber.resize(static_cast<size_t>(num_points));
    result.constellation.per_stream.assign(static_cast<size_t>(num_streams), {});
    result.constellation.snr_db = snr_grid_db[static_cast<size_t>(num_points - 1)];

    std::vector<std::vector<BerPoint>> point_results(
        static_cast<size_t>(num_points), std::vector<BerPoint>(static_cast<size_t>(num_streams)));

    // Eb/N0 = (Es/N0) / 2 for QPSK, so the reference is Q(sqrt(Es/N0)).
    for (int g = 0; g < num_points; ++g)
    {
        const double snr_lin = std::pow(10.0, snr_grid_db[static_cast<size_t>(g)] / 10.0);
        result.curve.reference_ber[static_cast<size_t>(g)] = q_function(std::sqrt(snr_lin));
    }

#pragma omp parallel for schedule(dynamic)
    for (int g = 0; g < num_points; ++g)
    {
        run_point(config, snr_grid_db[static_cast<size_t>(g)],
                  substream_seed(config.seed, static_cast<std::uint64_t>(g)), stopping,
                  point_results[static_cast<size_t>(g)],
                  g == num_points - 1 ? &result.constellation.per_stream : nullptr);
    }

    for (int g = 0; g < num_points; ++g)
        for (int s = 0; s < num_streams; ++s)
            result.curve.per_stream[static_cast<size_t>(s)][static_cast<size_t>(g)] =
                point_results[static_cast<size_t>(g)][static_cast<size_t>(s)];
    return result;
}

} // namespace vortexsim::link
