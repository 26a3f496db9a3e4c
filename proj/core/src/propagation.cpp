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
#include <queue>
#include <string>

#include "vortexsim/propagation.hpp"

namespace vortexsim::propagation
{

SourceModel SourceModel::analytic(const Vec3 &position)
{
    SourceModel s;
    s.kind = Kind::analytic_spherical_vortex;
    s.position = position;
    return s;
}

SourceModel SourceModel::discrete(const waves::UcaGenerator &generator)
{
    SourceModel s;
    s.kind = Kind::discrete_uca;
    s.position = generator.position;
    s.generator = generator;
    return s;
}

void SourceModel::validate() const
{
    if (!(position.z < 0.0))
        throw ValidationError("source.position", "feed must sit strictly on the z < 0 side");
    if (kind == Kind::discrete_uca)
        generator.validate();
}

void ScanPlane::validate() const
{
    if (axis1_samples < 2 || axis2_samples < 2)
        throw ValidationError("scan.samples", "need at least 2 samples per axis");
    if (!(axis1_max > axis1_min) || !(axis2_max > axis2_min))
        throw ValidationError("scan.range", "ranges must be non-degenerate");
    switch (orientation)
    {
    case Orientation::xy_at_z:
        if (!(fixed_coord > 0.0))
            throw ValidationError("scan.fixed", "xy plane must sit at z > 0");
        break;
    case Orientation::xz_at_y:
    case Orientation::yz_at_x:
        if (!(axis2_min > 0.0))
            throw ValidationError("scan.range", "z range must stay on the z > 0 side");
        break;
    }
}

double ScanPlane::axis1_value(int i1) const
{
    return axis1_min + (axis1_max - axis1_min) * i1 / (axis1_samples - 1);
}

double ScanPlane::axis2_value(int i2) const
{
    return axis2_min + (axis2_max - axis2_min) * i2 / (axis2_samples - 1);
}

Vec3 ScanPlane::point(int i2, int i1) const
{
    const double a1 = axis1_value(i1);
    const double a2 = axis2_value(i2);
    switch (orientation)
    {
    case Orientation::xz_at_y:
        return {a1, fixed_coord, a2};
    case Orientation::xy_at_z:
        return {a1, a2, fixed_coord};
    case Orientation::yz_at_x:
    default:
        return {fixed_coord, a1, a2};
    }
}

const char *ScanPlane::axis1_name() const
{
    switch (orientation)
    {
    case Orientation::xz_at_y:
    case Orientation::xy_at_z:
        return "x";
    case Orientation::yz_at_x:
    default:
        return "y";
    }
}

const char *ScanPlane::axis2_name() const
{
    switch (orientation)
    {
    case Orientation::xz_at_y:
    case Orientation::yz_at_x:
        return "z";
    case Orientation::xy_at_z:
    default:
        return "y";
    }
}

std::vector<cdouble> incident_field_on_surface(const SourceModel &source, VortexMode mode,
                                               const MetasurfaceGeometry &geometry,
                                               const hologram::SourceAmplitudes &amplitudes,
                                               const SimulationConstants &constants)
{
    source.validate();
    geometry.validate();

    std::vector<cdouble> incident(static_cast<size_t>(geometry.unit_count()));
    for (int m = 0; m < geometry.rows; ++m)
    {
        for (int n = 0; n < geometry.cols; ++n)
        {
            const Vec3 unit = geometry.unit_position(m, n);
            cdouble field;
            if (source.kind == SourceModel::Kind::analytic_spherical_vortex)
                field = waves::reference_wave(unit, source.position, mode,
                                              amplitudes.beta_ref(mode.l), constants);
            else
                field = waves::uca_incident_field(unit, source.generator, mode, constants);
            incident[static_cast<size_t>(m) * geometry.cols + n] = field;
        }
    }
    return incident;
}

namespace
{
    std::vector<cdouble> transmit_impl(std::span<const cdouble> incident,
                                       const MetasurfaceGeometry &geometry,
                                       std::span<const double> phase, double loss_db)
    {
        if (incident.size() != phase.size() ||
            incident.size() != static_cast<size_t>(geometry.unit_count()))
            throw ShapeError("transmit_through: incident array does not match pattern grid");

        const double scale = std::pow(10.0, -loss_db / 20.0);
        std::vector<cdouble> out(incident.size());
        for (size_t i = 0; i < incident.size(); ++i)
            out[i] = incident[i] * std::polar(scale, phase[i]);
        return out;
    }
} // namespace

std::vector<cdouble> transmit_through(std::span<const cdouble> incident,
                                      const PhasePattern &pattern)
{
    return transmit_impl(incident, pattern.geometry, pattern.phase_rad, 0.0);
}

std::vector<cdouble> transmit_through(std::span<const cdouble> incident,
                                      const QuantizedPattern &pattern)
{
    std::vector<double> phase(pattern.state.size());
    for (size_t i = 0; i < pattern.state.size(); ++i)
        phase[i] = two_pi * pattern.state[i] / pattern.levels;
    return transmit_impl(incident, pattern.geometry, phase, pattern.insertion_loss_db);
}

std::vector<cdouble> transmit_through(std::span<const cdouble> incident,
                                      const PatternVariant &pattern)
{
    return std::visit([&](const auto &p) { return transmit_through(incident, p); }, pattern);
}

cdouble field_at(const Vec3 &point, std::span<const cdouble> transmitted,
                 const MetasurfaceGeometry &geometry, const SimulationConstants &constants)
{
    if (transmitted.size() != static_cast<size_t>(geometry.unit_count()))
        throw ShapeError("field_at: transmitted array does not match geometry");
    if (!(point.z > 0.0))
        throw DomainError("field_at: observation point must lie on the z > 0 side");

    const double k = constants.wavenumber;
    cdouble acc{0.0, 0.0};
    size_t idx = 0;
    for (int m = 0; m < geometry.rows; ++m)
    {
        const double uy = (m - (geometry.rows - 1) / 2.0) * geometry.period_m;
        const double dy = point.y - uy;
        for (int n = 0; n < geometry.cols; ++n, ++idx)
        {
            const double ux = (n - (geometry.cols - 1) / 2.0) * geometry.period_m;
            const double dx = point.x - ux;
            const double r = std::sqrt(dx * dx + dy * dy + point.z * point.z);
            if (!(r > 0.0))
                throw SingularityError("field_at: point coincides with a surface unit");
            acc += transmitted[idx] * std::polar(1.0 / (4.0 * pi * r), -k * r);
        }
    }
    return acc;
}

FieldMap scan_plane(const ScanPlane &plane, std::span<const cdouble> transmitted,
                    const MetasurfaceGeometry &geometry, const SimulationConstants &constants)
{
    plane.validate();
    if (transmitted.size() != static_cast<size_t>(geometry.unit_count()))
        throw ShapeError("scan_plane: transmitted array does not match geometry");

    FieldMap map;
    map.plane = plane;
    const int n1 = plane.axis1_samples;
    const int n2 = plane.axis2_samples;
    map.samples.resize(static_cast<size_t>(n1) * n2);

    // Points are independent; each one keeps the fixed row-major unit sum.
#pragma omp parallel for schedule(static)
    for (int i2 = 0; i2 < n2; ++i2)
    {
        for (int i1 = 0; i1 < n1; ++i1)
        {
            map.samples[static_cast<size_t>(i2) * n1 + i1] =
                field_at(plane.point(i2, i1), transmitted, geometry, constants);
        }
    }

    double peak = 0.0;
    for (int i2 = 0; i2 < n2; ++i2)
    {
        for (int i1 = 0; i1 < n1; ++i1)
        {
            const double mag = std::abs(map.samples[static_cast<size_t>(i2) * n1 + i1]);
            if (mag > peak)
            {
                peak = mag;
                map.peak_i1 = i1;
                map.peak_i2 = i2;
            }
        }
    }
    if (!(peak > 0.0))
        throw DomainError("scan_plane: field vanishes everywhere, cannot normalize");
    map.peak_magnitude = peak;

    map.power_db.resize(map.samples.size());
    for (size_t i = 0; i < map.samples.size(); ++i)
        map.power_db[i] = 20.0 * std::log10(std::abs(map.samples[i]) / peak);
    return map;
}

namespace
{
    // 3-point parabolic vertex offset in units of the grid step; falls back
    // to the center for flat or edge cases.
    double parabolic_offset(double left, double center, double right)
    {
        const double denom = left - 2.0 * center + right;
        if (denom >= 0.0) // not a strict local max in dB, keep the cell
            return 0.0;
        double off = 0.5 * (left - right) / denom;
        return std::clamp(off, -0.5, 0.5);
    }

    // -3 dB crossing distance from the peak cell along one direction.
    double extent_one_side(const FieldMap &map, int i2, int i1, int d2, int d1, double ref_db)
    {
        const double threshold = ref_db - 3.0;
        const double step = (d1 != 0) ? map.plane.axis1_step() : map.plane.axis2_step();
        double prev = map.power(i2, i1);
        int steps = 0;
        int c2 = i2, c1 = i1;
        while (true)
        {
            c2 += d2;
            c1 += d1;
            if (c2 < 0 || c2 >= map.plane.axis2_samples || c1 < 0 ||
                c1 >= map.plane.axis1_samples)
                return steps * step; // clipped at the map edge
            const double cur = map.power(c2, c1);
            ++steps;
            if (cur < threshold)
            {
                const double frac = (prev - threshold) / (prev - cur);
                return (steps - 1 + frac) * step;
            }
            prev = cur;
        }
    }
} // namespace

std::vector<FocalSpot> find_focal_spots(const FieldMap &map, double floor_db)
{
    if (map.samples.empty())
        throw DomainError("find_focal_spots: empty field map");
    if (!(floor_db < 0.0))
        throw DomainError("find_focal_spots: floor must be below 0 dB");

    const int n1 = map.plane.axis1_samples;
    const int n2 = map.plane.axis2_samples;

    // Strict local maxima above the floor (8-neighborhood, edge aware).
    std::vector<std::pair<int, int>> maxima; // (i2, i1)
    for (int i2 = 0; i2 < n2; ++i2)
    {
        for (int i1 = 0; i1 < n1; ++i1)
        {
            const double v = map.power(i2, i1);
            if (v < floor_db)
                continue;
            bool is_max = true;
            for (int d2 = -1; d2 <= 1 && is_max; ++d2)
            {
                for (int d1 = -1; d1 <= 1; ++d1)
                {
                    if (d1 == 0 && d2 == 0)
                        continue;
                    const int c2 = i2 + d2, c1 = i1 + d1;
                    if (c2 < 0 || c2 >= n2 || c1 < 0 || c1 >= n1)
                        continue;
                    if (map.power(c2, c1) >= v)
                    {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max)
                maxima.emplace_back(i2, i1);
        }
    }

    std::sort(maxima.begin(), maxima.end(), [&](const auto &a, const auto &b) {
        return map.power(a.first, a.second) > map.power(b.first, b.second);
    });

    // Strongest-first: claim the connected -3 dB region around each accepted
    // spot; weaker maxima inside a claimed region belong to that spot.
    std::vector<char> claimed(static_cast<size_t>(n1) * n2, 0);
    std::vector<FocalSpot> spots;
    for (const auto &[i2, i1] : maxima)
    {
        if (claimed[static_cast<size_t>(i2) * n1 + i1])
            continue;

        const double peak_db = map.power(i2, i1);
        const double region_floor = peak_db - 3.0;
        std::queue<std::pair<int, int>> frontier;
        frontier.emplace(i2, i1);
        claimed[static_cast<size_t>(i2) * n1 + i1] = 1;
        while (!frontier.empty())
        {
            const auto [c2, c1] = frontier.front();
            frontier.pop();
            for (int d2 = -1; d2 <= 1; ++d2)
            {
                for (int d1 = -1; d1 <= 1; ++d1)
                {
                    const int t2 = c2 + d2, t1 = c1 + d1;
                    if (t2 < 0 || t2 >= n2 || t1 < 0 || t1 >= n1)
                        continue;
                    const size_t ti = static_cast<size_t>(t2) * n1 + t1;
                    if (claimed[ti] || map.power_db[ti] < region_floor)
                        continue;
                    claimed[ti] = 1;
                    frontier.emplace(t2, t1);
                }
            }
        }

        FocalSpot spot;
        spot.peak_power_db = peak_db;

        double off1 = 0.0, off2 = 0.0;
        if (i1 > 0 && i1 < n1 - 1)
            off1 = parabolic_offset(map.power(i2, i1 - 1), peak_db, map.power(i2, i1 + 1));
        if (i2 > 0 && i2 < n2 - 1)
            off2 = parabolic_offset(map.power(i2 - 1, i1), peak_db, map.power(i2 + 1, i1));

        const double a1 = map.plane.axis1_value(i1) + off1 * map.plane.axis1_step();
        const double a2 = map.plane.axis2_value(i2) + off2 * map.plane.axis2_step();
        switch (map.plane.orientation)
        {
        case ScanPlane::Orientation::xz_at_y:
            spot.position = {a1, map.plane.fixed_coord, a2};
            break;
        case ScanPlane::Orientation::xy_at_z:
            spot.position = {a1, a2, map.plane.fixed_coord};
            break;
        case ScanPlane::Orientation::yz_at_x:
            spot.position = {map.plane.fixed_coord, a1, a2};
            break;
        }

        spot.extent_axis1_m = extent_one_side(map, i2, i1, 0, -1, peak_db) +
                              extent_one_side(map, i2, i1, 0, +1, peak_db);
        spot.extent_axis2_m = extent_one_side(map, i2, i1, -1, 0, peak_db) +
                              extent_one_side(map, i2, i1, +1, 0, peak_db);
        // A maximum straddling two cells can report a zero one-sided extent;
        // keep the invariant extent > 0 with a half-cell floor.
        spot.extent_axis1_m = std::max(spot.extent_axis1_m, 0.5 * map.plane.axis1_step());
        spot.extent_axis2_m = std::max(spot.extent_axis2_m, 0.5 * map.plane.axis2_step());

        spots.push_back(spot);
    }
    return spots;
}

CrosstalkMatrix crosstalk_matrix(const SourceModel &source,
                                 const hologram::SourceAmplitudes &amplitudes,
                                 const PatternVariant &pattern,
                                 const std::vector<ReceiverTarget> &targets,
                                 const MetasurfaceGeometry &geometry,
                                 const SimulationConstants &constants)
{
    if (targets.size() < 2)
        throw DomainError("crosstalk_matrix: need at least 2 (mode, target) assignments");

    CrosstalkMatrix result;
    result.receivers = targets;
    for (const auto &t : targets)
        result.modes.push_back(t.assigned_mode.l);

    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i].position == targets[j].position)
                result.degenerate_targets = true;

    const size_t n = targets.size();
    result.gains.assign(n, std::vector<cdouble>(n));
    result.power_db.assign(n, std::vector<double>(n));

    for (size_t q = 0; q < n; ++q)
    {
        const VortexMode mode = targets[q].assigned_mode;
        const auto incident =
            incident_field_on_surface(source, mode, geometry, amplitudes, constants);
        const auto transmitted = transmit_through(incident, pattern);
        for (size_t p = 0; p < n; ++p)
        {
            const cdouble g = field_at(targets[p].position, transmitted, geometry, constants);
            result.gains[p][q] = g;
            result.power_db[q][p] = 20.0 * std::log10(std::abs(g));
        }
    }

    result.isolation_db.resize(n);
    for (size_t p = 0; p < n; ++p)
    {
        double strongest_other = -std::numeric_limits<double>::infinity();
        for (size_t q = 0; q < n; ++q)
            if (q != p)
                strongest_other = std::max(strongest_other, result.power_db[q][p]);
        result.isolation_db[p] = result.power_db[p][p] - strongest_other;
    }
    return result;
}

} // namespace vortexsim::propagation
