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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vortexsim/hologram.hpp"

namespace vortexsim::propagation
{
    using hologram::MetasurfaceGeometry;
    using hologram::PhasePattern;
    using hologram::QuantizedPattern;
    using hologram::ReceiverTarget;
    using waves::cdouble;
    using waves::VortexMode;

    using PatternVariant = std::variant<PhasePattern, QuantizedPattern>;

    // Feed model on the z < 0 side. Either the ideal spherical vortex
    // (analytic form of the reference wave) or the discrete nested-ring
    // array, which is closer to hardware and is the default.
    struct SourceModel
    {
        enum class Kind
        {
            analytic_spherical_vortex,
            discrete_uca,
        };

        Kind kind = Kind::discrete_uca;
        Vec3 position;                  // phase center, z < 0
        waves::UcaGenerator generator;  // used by discrete_uca only

        static SourceModel analytic(const Vec3 &position);
        static SourceModel discrete(const waves::UcaGenerator &generator);
        void validate() const;
    };

    // Axis-aligned rectangular scan window on the z > 0 side.
    struct ScanPlane
    {
        enum class Orientation
        {
            xz_at_y, // axis1 = x, axis2 = z, fixed y
            xy_at_z, // axis1 = x, axis2 = y, fixed z
            yz_at_x, // axis1 = y, axis2 = z, fixed x
        };

        Orientation orientation = Orientation::xz_at_y;
        double fixed_coord = 0.0;
        double axis1_min = -0.3, axis1_max = 0.3;
        int axis1_samples = 201;
        double axis2_min = 0.05, axis2_max = 0.8;
        int axis2_samples = 251;

        void validate() const;
        double axis1_value(int i1) const;
        double axis2_value(int i2) const;
        double axis1_step() const { return (axis1_max - axis1_min) / (axis1_samples - 1); }
        double axis2_step() const { return (axis2_max - axis2_min) / (axis2_samples - 1); }
        Vec3 point(int i2, int i1) const;
        const char *axis1_name() const;
        const char *axis2_name() const;
    };

    // Complex field samples over a scan plane plus per-sample power in dB
    // relative to the map peak (peak = 0 dB).
    struct FieldMap
    {
        ScanPlane plane;
        std::vector<cdouble> samples;  // index i2 * axis1_samples + i1
        std::vector<double> power_db;  // same indexing, normalized to peak
        double peak_magnitude = 0.0;   // |E| at the map peak
        int peak_i1 = 0;
        int peak_i2 = 0;

        const cdouble &sample(int i2, int i1) const
        {
            return samples[static_cast<size_t>(i2) * plane.axis1_samples + i1];
        }
        double power(int i2, int i1) const
        {
            return power_db[static_cast<size_t>(i2) * plane.axis1_samples + i1];
        }
    };

    // A local energy maximum of a field map.
    struct FocalSpot
    {
        Vec3 position;             // sub-cell refined, in scene coordinates
        double peak_power_db = 0;  // relative to the map peak
        double extent_axis1_m = 0; // -3 dB width along plane axis 1
        double extent_axis2_m = 0; // -3 dB width along plane axis 2
    };

    // Received power per (activated mode, receiver) and the per-receiver
    // isolation: assigned-mode power minus the strongest non-assigned one.
    struct CrosstalkMatrix
    {
        std::vector<int> modes;                     // activation order
        std::vector<ReceiverTarget> receivers;
        std::vector<std::vector<cdouble>> gains;    // gains[p][q]: field at rx p, mode q alone
        std::vector<std::vector<double>> power_db;  // power_db[q][p] = 20 log10 |gains[p][q]|
        std::vector<double> isolation_db;           // per receiver
        bool degenerate_targets = false;            // two receivers at one position
    };

    /// Incident complex field of one mode at every unit center, row-major.
    std::vector<cdouble> incident_field_on_surface(const SourceModel &source, VortexMode mode,
                                                   const MetasurfaceGeometry &geometry,
                                                   const hologram::SourceAmplitudes &amplitudes,
                                                   const SimulationConstants &constants);

    /// Per-unit product incident * exp(j phase) * 10^(-loss_db/20).
    std::vector<cdouble> transmit_through(std::span<const cdouble> incident,
                                          const PhasePattern &pattern);
    std::vector<cdouble> transmit_through(std::span<const cdouble> incident,
                                          const QuantizedPattern &pattern);
    std::vector<cdouble> transmit_through(std::span<const cdouble> incident,
                                          const PatternVariant &pattern);

    /// Huygens superposition of the re-radiated unit fields at one point:
    /// sum_{m,n} t(m,n) exp(-j k r) / (4 pi r), summed in row-major unit
    /// order so results are bit-stable. The point must lie on z > 0 and off
    /// every unit center.
    cdouble field_at(const Vec3 &point, std::span<const cdouble> transmitted,
                     const MetasurfaceGeometry &geometry, const SimulationConstants &constants);

    /// field_at evaluated over the plane grid. Scan points are evaluated in
    /// parallel; the per-point unit summation order stays fixed, so the map
    /// is bit-identical for any worker count.
    FieldMap scan_plane(const ScanPlane &plane, std::span<const cdouble> transmitted,
                        const MetasurfaceGeometry &geometry, const SimulationConstants &constants);

    /// Local maxima above floor_db (relative to the map peak), strongest
    /// first. Maxima falling inside the -3 dB connected region of a stronger
    /// spot are absorbed into it. Positions are refined per axis by 3-point
    /// parabolic interpolation of the dB profile; extents are -3 dB widths.
    std::vector<FocalSpot> find_focal_spots(const FieldMap &map, double floor_db);

    /// Activates each assigned mode alone through the shared pattern and
    /// records the complex gain at every receiver.
    CrosstalkMatrix crosstalk_matrix(const SourceModel &source,
                                     const hologram::SourceAmplitudes &amplitudes,
                                     const PatternVariant &pattern,
                                     const std::vector<ReceiverTarget> &targets,
                                     const MetasurfaceGeometry &geometry,
                                     const SimulationConstants &constants);

} // namespace vortexsim::propagation
