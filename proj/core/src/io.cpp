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
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vortexsim/io.hpp"
#include "vortexsim/sha256.hpp"

namespace vortexsim::io
{

using nlohmann::json;

namespace
{
    std::string fmt(double v, const char *spec)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), spec, v);
        return buf;
    }

    std::string g9(double v) { return fmt(v, "%.9g"); }
    std::string g17(double v) { return fmt(v, "%.17g"); }

    json meta_json(const OutputMeta &meta)
    {
        return json{{"tool_version", meta.tool_version}, {"config_sha256", meta.config_hash}};
    }

    std::string meta_comment(const OutputMeta &meta)
    {
        return "# vortexsim " + meta.tool_version + " config_sha256=" + meta.config_hash + "\n";
    }

    json targets_json(const std::vector<hologram::ReceiverTarget> &targets)
    {
        json arr = json::array();
        for (const auto &t : targets)
            arr.push_back({{"receiver", t.index},
                           {"mode", t.assigned_mode.l},
                           {"target_m", {t.position.x, t.position.y, t.position.z}}});
        return arr;
    }

    json geometry_json(const hologram::MetasurfaceGeometry &g)
    {
        return json{{"rows", g.rows}, {"cols", g.cols}, {"period_m", g.period_m}};
    }

    void parse_common_pattern(const json &j, hologram::MetasurfaceGeometry &geometry,
                              std::vector<hologram::ReceiverTarget> &targets,
                              hologram::BesselMaskConfig &mask)
    {
        const json &jg = j.at("geometry");
        geometry.rows = jg.at("rows").get<int>();
        geometry.cols = jg.at("cols").get<int>();
        geometry.period_m = jg.at("period_m").get<double>();
        geometry.validate();

        for (const json &ja : j.at("assignments"))
        {
            hologram::ReceiverTarget t;
            t.index = ja.at("receiver").get<int>();
            t.assigned_mode.l = ja.at("mode").get<int>();
            const auto &pos = ja.at("target_m");
            t.position = {pos.at(0).get<double>(), pos.at(1).get<double>(),
                          pos.at(2).get<double>()};
            targets.push_back(t);
        }
        mask.alpha_rad = j.at("mask_alpha_rad").get<double>();
    }
} // namespace

std::string pattern_to_json(const hologram::PhasePattern &pattern, const OutputMeta &meta)
{
    json j = meta_json(meta);
    j["type"] = "continuous";
    j["geometry"] = geometry_json(pattern.geometry);
    j["assignments"] = targets_json(pattern.targets);
    j["mask_alpha_rad"] = pattern.mask.alpha_rad;
    j["normalized_amplitudes"] = pattern.normalized_amplitudes;
    // phases carried as 9-significant-digit strings so the file is
    // byte-stable across JSON printers
    json phases = json::array();
    for (double p : pattern.phase_rad)
        phases.push_back(g9(p));
    j["phase_rad"] = std::move(phases);
    return j.dump(2) + "\n";
}

std::string pattern_to_json(const hologram::QuantizedPattern &pattern, const OutputMeta &meta)
{
    json j = meta_json(meta);
    j["type"] = "quantized";
    j["geometry"] = geometry_json(pattern.geometry);
    j["assignments"] = targets_json(pattern.targets);
    j["mask_alpha_rad"] = pattern.mask.alpha_rad;
    j["levels"] = pattern.levels;
    j["insertion_loss_db"] = pattern.insertion_loss_db;
    j["state"] = pattern.state;
    return j.dump(2) + "\n";
}

std::string pattern_to_csv(const hologram::PhasePattern &pattern, const OutputMeta &meta)
{
    std::string out = meta_comment(meta);
    out += "m,n,x,y,phase_rad\n";
    for (int m = 0; m < pattern.geometry.rows; ++m)
    {
        for (int n = 0; n < pattern.geometry.cols; ++n)
        {
            const Vec3 u = pattern.geometry.unit_position(m, n);
            out += std::to_string(m) + "," + std::to_string(n) + "," + g9(u.x) + "," + g9(u.y) +
                   "," + g9(pattern.phase(m, n)) + "\n";
        }
    }
    return out;
}

std::string pattern_to_csv(const hologram::QuantizedPattern &pattern, const OutputMeta &meta)
{
    std::string out = meta_comment(meta);
    out += "m,n,x,y,phase_rad,state\n";
    for (int m = 0; m < pattern.geometry.rows; ++m)
    {
        for (int n = 0; n < pattern.geometry.cols; ++n)
        {
            const Vec3 u = pattern.geometry.unit_position(m, n);
            const size_t i = static_cast<size_t>(m) * pattern.geometry.cols + n;
            out += std::to_string(m) + "," + std::to_string(n) + "," + g9(u.x) + "," + g9(u.y) +
                   "," + g9(pattern.represented_phase(m, n)) + "," +
                   std::to_string(pattern.state[i]) + "\n";
        }
    }
    return out;
}

propagation::PatternVariant pattern_from_json(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ParseError(std::string("pattern JSON: ") + e.what());
    }

    try
    {
        const std::string type = j.at("type").get<std::string>();
        if (type == "continuous")
        {
            hologram::PhasePattern p;
            parse_common_pattern(j, p.geometry, p.targets, p.mask);
            p.normalized_amplitudes = j.at("normalized_amplitudes").get<bool>();
            for (const json &v : j.at("phase_rad"))
                p.phase_rad.push_back(std::stod(v.get<std::string>()));
            if (p.phase_rad.size() != static_cast<size_t>(p.geometry.unit_count()))
                throw ParseError("pattern JSON: phase array does not match geometry");
            return p;
        }
        if (type == "quantized")
        {
            hologram::QuantizedPattern p;
            parse_common_pattern(j, p.geometry, p.targets, p.mask);
            p.levels = j.at("levels").get<int>();
            p.insertion_loss_db = j.at("insertion_loss_db").get<double>();
            p.state = j.at("state").get<std::vector<int>>();
            if (p.state.size() != static_cast<size_t>(p.geometry.unit_count()))
                throw ParseError("pattern JSON: state array does not match geometry");
            return p;
        }
        throw ParseError("pattern JSON: unknown type '" + type + "'");
    }
    catch (const json::exception &e)
    {
        throw ParseError(std::string("pattern JSON: ") + e.what());
    }
}

std::string field_map_to_csv(const propagation::FieldMap &map, const OutputMeta &meta)
{
    const auto &plane = map.plane;
    std::string out = meta_comment(meta);
    out += std::string(plane.axis1_name()) + "_m," + plane.axis2_name() + "_m,re,im,power_db\n";
    for (int i2 = 0; i2 < plane.axis2_samples; ++i2)
    {
        for (int i1 = 0; i1 < plane.axis1_samples; ++i1)
        {
            const auto &s = map.sample(i2, i1);
            out += g9(plane.axis1_value(i1)) + "," + g9(plane.axis2_value(i2)) + "," +
                   g9(s.real()) + "," + g9(s.imag()) + "," + g9(map.power(i2, i1)) + "\n";
        }
    }
    return out;
}

std::vector<unsigned char> field_map_to_pgm(const propagation::FieldMap &map, double floor_db,
                                            const OutputMeta &meta)
{
    if (!(floor_db < 0.0))
        throw DomainError("field_map_to_pgm: floor must be below 0 dB");

    const int w = map.plane.axis1_samples;
    const int h = map.plane.axis2_samples;
    std::string header = "P5\n" + meta_comment(meta) + std::to_string(w) + " " +
                         std::to_string(h) + "\n65535\n";

    std::vector<unsigned char> out(header.begin(), header.end());
    out.reserve(out.size() + static_cast<size_t>(w) * h * 2);
    // row 0 = axis2 maximum, so the propagation axis points up when viewed
    for (int i2 = h - 1; i2 >= 0; --i2)
    {
        for (int i1 = 0; i1 < w; ++i1)
        {
            double p = map.power(i2, i1);
            p = std::min(0.0, std::max(floor_db, p));
            const auto v = static_cast<unsigned>(std::lround((p - floor_db) / -floor_db * 65535.0));
            out.push_back(static_cast<unsigned char>(v >> 8));
            out.push_back(static_cast<unsigned char>(v & 0xFF));
        }
    }
    return out;
}

std::string spots_to_json(const std::vector<propagation::FocalSpot> &spots, double floor_db,
                          const OutputMeta &meta)
{
    json j = meta_json(meta);
    j["floor_db"] = floor_db;
    json arr = json::array();
    for (const auto &s : spots)
    {
        arr.push_back({{"position_m", {s.position.x, s.position.y, s.position.z}},
                       {"peak_power_db", s.peak_power_db},
                       {"extent_3db_m", {s.extent_axis1_m, s.extent_axis2_m}}});
    }
    j["spots"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string gains_canonical(const link::ChannelMatrix &gains)
{
    std::string s;
    for (const auto &row : gains)
    {
        for (const auto &g : row)
            s += g17(g.real()) + "," + g17(g.imag()) + ";";
        s += "\n";
    }
    return s;
}

std::string crosstalk_to_json(const propagation::CrosstalkMatrix &matrix, const OutputMeta &meta)
{
    json j = meta_json(meta);
    j["modes"] = matrix.modes;
    json rx = json::array();
    for (const auto &r : matrix.receivers)
        rx.push_back({{"receiver", r.index},
                      {"mode", r.assigned_mode.l},
                      {"position_m", {r.position.x, r.position.y, r.position.z}}});
    j["receivers"] = std::move(rx);

    json power = json::array();
    for (size_t q = 0; q < matrix.power_db.size(); ++q)
    {
        json row = json::array();
        for (double v : matrix.power_db[q])
            row.push_back(v);
        power.push_back(std::move(row));
    }
    j["power_db"] = std::move(power); // power_db[mode][receiver]
    j["isolation_db"] = matrix.isolation_db;
    j["degenerate_targets"] = matrix.degenerate_targets;

    json gains = json::array();
    for (const auto &row : matrix.gains)
    {
        json jrow = json::array();
        for (const auto &g : row)
            jrow.push_back({{"re", g17(g.real())}, {"im", g17(g.imag())}});
        gains.push_back(std::move(jrow));
    }
    j["gains"] = std::move(gains); // gains[receiver][mode]
    j["gains_sha256"] = sha256_hex(gains_canonical(matrix.gains));
    return j.dump(2) + "\n";
}

CrosstalkFile crosstalk_from_json(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ParseError(std::string("crosstalk JSON: ") + e.what());
    }

    try
    {
        CrosstalkFile file;
        file.config_hash = j.at("config_sha256").get<std::string>();
        file.gains_hash = j.at("gains_sha256").get<std::string>();
        file.modes = j.at("modes").get<std::vector<int>>();
        for (const json &r : j.at("receivers"))
            file.receiver_indices.push_back(r.at("receiver").get<int>());
        for (const json &row : j.at("gains"))
        {
            std::vector<link::cdouble> grow;
            for (const json &g : row)
                grow.emplace_back(std::stod(g.at("re").get<std::string>()),
                                  std::stod(g.at("im").get<std::string>()));
            file.gains.push_back(std::move(grow));
        }
        if (sha256_hex(gains_canonical(file.gains)) != file.gains_hash)
            throw ParseError("crosstalk JSON: gains checksum mismatch");
        return file;
    }
    catch (const json::exception &e)
    {
        throw ParseError(std::string("crosstalk JSON: ") + e.what());
    }
}

std::string ber_to_csv(const link::BerCurve &curve, const OutputMeta &meta)
{
    std::string out = meta_comment(meta);
    out += "stream,snr_db,bits,errors,ber\n";
    for (size_t s = 0; s < curve.per_stream.size(); ++s)
    {
        for (const auto &p : curve.per_stream[s])
        {
            out += std::to_string(s) + "," + g9(p.snr_db) + "," + std::to_string(p.bits) + "," +
                   std::to_string(p.errors) + "," + g9(p.ber) + "\n";
        }
    }
    return out;
}

std::string constellation_to_csv(const link::ConstellationDump &dump, const OutputMeta &meta)
{
    std::string out = meta_comment(meta);
    out += "stream,re,im\n";
    for (size_t s = 0; s < dump.per_stream.size(); ++s)
        for (const auto &y : dump.per_stream[s])
            out += std::to_string(s) + "," + g9(y.real()) + "," + g9(y.imag()) + "\n";
    return out;
}

std::string ber_to_json(const link::BerResult &result, double fec_reference_ber,
                        const std::string &channel_hash, const OutputMeta &meta)
{
    json j = meta_json(meta);
    j["channel_sha256"] = channel_hash;
    j["fec_reference_ber"] = fec_reference_ber;
    j["constellation_snr_db"] = result.constellation.snr_db;

    json streams = json::array();
    for (const auto &stream : result.curve.per_stream)
    {
        json points = json::array();
        for (const auto &p : stream)
            points.push_back(
                {{"snr_db", p.snr_db}, {"bits", p.bits}, {"errors", p.errors}, {"ber", p.ber}});
        streams.push_back(std::move(points));
    }
    j["streams"] = std::move(streams);
    j["reference_ber"] = result.curve.reference_ber;
    return j.dump(2) + "\n";
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f)
        throw Error("write failed: " + path);
}

void write_file(const std::string &path, const std::vector<unsigned char> &content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char *>(content.data()),
            static_cast<std::streamsize>(content.size()));
    if (!f)
        throw Error("write failed: " + path);
}

std::string read_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace vortexsim::io
