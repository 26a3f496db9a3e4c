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
#include <set>
#include <string>

#include <json.hpp>

#include "vortexsim/io.hpp"
#include "vortexsim/scenario.hpp"
#include "vortexsim/sha256.hpp"

namespace vortexsim::scenario
{

using nlohmann::json;

namespace
{
    double deg2rad(double deg) { return deg * pi / 180.0; }

    void reject_unknown_keys(const json &j, const std::set<std::string> &allowed,
                             const std::string &context)
    {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.contains(it.key()))
                throw ValidationError(context.empty() ? it.key() : context + "." + it.key(),
                                      "unknown key");
    }

    Vec3 vec3_from(const json &j, const std::string &field)
    {
        if (!j.is_array() || j.size() != 3)
            throw ValidationError(field, "expected an array of 3 numbers");
        return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
    }

    json vec3_to(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

    std::map<int, std::complex<double>> complex_map_from(const json &j, const std::string &field)
    {
        std::map<int, std::complex<double>> out;
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            int key = 0;
            try
            {
                key = std::stoi(it.key());
            }
            catch (...)
            {
                throw ValidationError(field, "keys must be integers, got '" + it.key() + "'");
            }
            const json &v = it.value();
            if (!v.is_array() || v.size() != 2)
                throw ValidationError(field, "values must be [re, im] pairs");
            out[key] = {v.at(0).get<double>(), v.at(1).get<double>()};
        }
        return out;
    }

    json complex_map_to(const std::map<int, std::complex<double>> &m)
    {
        json j = json::object();
        for (const auto &[k, v] : m)
            j[std::to_string(k)] = json::array({v.real(), v.imag()});
        return j;
    }
} // namespace

ScenarioConfig ScenarioConfig::axial_default()
{
    return {}; // the schema defaults are the axial layout
}

ScenarioConfig ScenarioConfig::lateral_default()
{
    ScenarioConfig c;
    c.assignments = {
        {1, {-0.08, 0.0, 0.20}},
        {2, {+0.08, 0.0, 0.20}},
    };
    return c;
}

void ScenarioConfig::validate() const
{
    if (!(frequency_hz > 0.0))
        throw ValidationError("frequency_hz", "must be positive");

    if (surface.rows < 1 || surface.cols < 1)
        throw ValidationError("surface.rows", "grid must be at least 1x1");
    if (!(surface.period_m > 0.0))
        throw ValidationError("surface.period", "must be positive");

    if (source.kind != "discrete-uca" && source.kind != "analytic")
        throw ValidationError("source.kind", "must be 'discrete-uca' or 'analytic'");
    if (!(source.position.z < 0.0))
        throw ValidationError("source.position", "feed must sit on the z < 0 side");
    if (!(source.divergence_angle_deg > 0.0) || !(source.divergence_angle_deg < 90.0))
        throw ValidationError("source.divergence_angle_deg", "must lie in (0, 90)");
    if (!(source.element_amplitude > 0.0))
        throw ValidationError("source.element_amplitude", "must be positive");

    if (assignments.empty())
        throw ValidationError("assignments", "at least one (mode, target) pair required");
    for (size_t i = 0; i < assignments.size(); ++i)
    {
        const auto &a = assignments[i];
        if (std::abs(a.mode) > waves::max_vortex_order)
            throw ValidationError("assignments.mode", "|l| must be <= 8");
        if (source.kind == "discrete-uca" && a.mode == 0)
            throw ValidationError("assignments.mode", "l = 0 has no ring radius for discrete-uca");
        if (!(a.target.z > 0.0))
            throw ValidationError("assignments.target", "receivers must sit on the z > 0 side");
        for (size_t k = i + 1; k < assignments.size(); ++k)
            if (assignments[k].mode == a.mode)
                throw ValidationError("assignments.mode", "modes must be pairwise distinct");
        if (source.kind == "discrete-uca" &&
            source.elements_per_ring < 2 * std::abs(a.mode) + 1)
            throw ValidationError("source.elements_per_ring",
                                  "need N >= 2|l|+1 for mode l = " + std::to_string(a.mode));
    }

    for (const auto &[mode, beta] : amplitudes.beta_ref)
    {
        (void)mode;
        if (!(std::abs(beta) > 0.0))
            throw ValidationError("amplitudes.beta_ref", "magnitude must be positive");
    }
    for (const auto &[rx, beta] : amplitudes.beta_obj)
    {
        (void)rx;
        if (!(std::abs(beta) > 0.0))
            throw ValidationError("amplitudes.beta_obj", "magnitude must be positive");
    }

    if (!(mask.alpha_deg >= 0.0) || !(mask.alpha_deg < 90.0))
        throw ValidationError("mask.alpha_deg", "must lie in [0, 90)");

    if (quantization.levels < 2)
        throw ValidationError("quantization.levels", "need at least 2 states");
    if (!(quantization.insertion_loss_db >= 0.0) || !(quantization.insertion_loss_db <= 1.0))
        throw ValidationError("quantization.insertion_loss_db",
                              "supported element loss range is [0, 1] dB");

    if (scan.plane != "xz" && scan.plane != "xy" && scan.plane != "yz")
        throw ValidationError("scan.plane", "must be 'xz', 'xy' or 'yz'");
    if (scan.axis1_samples < 2 || scan.axis2_samples < 2)
        throw ValidationError("scan.samples", "need at least 2 samples per axis");
    if (!(scan.axis1_max_m > scan.axis1_min_m) || !(scan.axis2_max_m > scan.axis2_min_m))
        throw ValidationError("scan.range", "ranges must be non-degenerate");
    if (!(scan.spot_floor_db < 0.0))
        throw ValidationError("scan.spot_floor_db", "must be below 0 dB");
    scan_plane().validate();

    if (link.snr_grid_db.empty())
        throw ValidationError("link.snr_grid_db", "grid must not be empty");
    for (size_t g = 1; g < link.snr_grid_db.size(); ++g)
        if (!(link.snr_grid_db[g] > link.snr_grid_db[g - 1]))
            throw ValidationError("link.snr_grid_db", "grid must be strictly increasing");
    if (link.min_errors < 1)
        throw ValidationError("link.min_errors", "must be >= 1");
    if (link.max_bits < 2)
        throw ValidationError("link.max_bits", "must allow at least one symbol");
    if (!(link.fec_reference_ber > 0.0) || !(link.fec_reference_ber < 1.0))
        throw ValidationError("link.fec_reference_ber", "must lie in (0, 1)");
    if (link.constellation_cap < 0)
        throw ValidationError("link.constellation_cap", "must be >= 0");
}

SimulationConstants ScenarioConfig::constants() const
{
    return SimulationConstants::from_frequency(frequency_hz);
}

hologram::MetasurfaceGeometry ScenarioConfig::geometry() const
{
    hologram::MetasurfaceGeometry g;
    g.rows = surface.rows;
    g.cols = surface.cols;
    g.period_m = surface.period_m;
    return g;
}

std::vector<hologram::ReceiverTarget> ScenarioConfig::targets() const
{
    std::vector<hologram::ReceiverTarget> out;
    for (size_t i = 0; i < assignments.size(); ++i)
        out.push_back({static_cast<int>(i), assignments[i].target, {assignments[i].mode}});
    return out;
}

hologram::SourceAmplitudes ScenarioConfig::source_amplitudes() const
{
    return {amplitudes.beta_ref, amplitudes.beta_obj};
}

hologram::BesselMaskConfig ScenarioConfig::mask_config() const
{
    return {deg2rad(mask.alpha_deg)};
}

propagation::SourceModel ScenarioConfig::source_model() const
{
    if (source.kind == "analytic")
        return propagation::SourceModel::analytic(source.position);

    waves::UcaGenerator generator;
    generator.position = source.position;
    const auto c = constants();
    for (const auto &a : assignments)
        generator.rings.push_back(waves::make_uca_ring({a.mode}, source.elements_per_ring, c,
                                                       deg2rad(source.divergence_angle_deg),
                                                       source.position,
                                                       source.element_amplitude));
    return propagation::SourceModel::discrete(generator);
}

propagation::ScanPlane ScenarioConfig::scan_plane() const
{
    propagation::ScanPlane p;
    if (scan.plane == "xz")
        p.orientation = propagation::ScanPlane::Orientation::xz_at_y;
    else if (scan.plane == "xy")
        p.orientation = propagation::ScanPlane::Orientation::xy_at_z;
    else
        p.orientation = propagation::ScanPlane::Orientation::yz_at_x;
    p.fixed_coord = scan.fixed_m;
    p.axis1_min = scan.axis1_min_m;
    p.axis1_max = scan.axis1_max_m;
    p.axis1_samples = scan.axis1_samples;
    p.axis2_min = scan.axis2_min_m;
    p.axis2_max = scan.axis2_max_m;
    p.axis2_samples = scan.axis2_samples;
    return p;
}

hologram::PhasePattern ScenarioConfig::synthesize() const
{
    return hologram::synthesize_pattern(geometry(), targets(), source.position,
                                        source_amplitudes(), mask_config(), constants(),
                                        hologram.normalize_amplitudes);
}

link::SweepStopping ScenarioConfig::stopping() const
{
    return {link.min_errors, link.max_bits};
}

namespace
{
    json config_to_json(const ScenarioConfig &c)
    {
        json j;
        j["frequency_hz"] = c.frequency_hz;
        j["surface"] = {{"rows", c.surface.rows},
                        {"cols", c.surface.cols},
                        {"period_m", c.surface.period_m}};
        j["source"] = {{"kind", c.source.kind},
                       {"position_m", vec3_to(c.source.position)},
                       {"divergence_angle_deg", c.source.divergence_angle_deg},
                       {"elements_per_ring", c.source.elements_per_ring},
                       {"element_amplitude", c.source.element_amplitude}};
        json assignments = json::array();
        for (const auto &a : c.assignments)
            assignments.push_back({{"mode", a.mode}, {"target_m", vec3_to(a.target)}});
        j["assignments"] = std::move(assignments);
        j["amplitudes"] = {{"beta_ref", complex_map_to(c.amplitudes.beta_ref)},
                           {"beta_obj", complex_map_to(c.amplitudes.beta_obj)}};
        j["mask"] = {{"alpha_deg", c.mask.alpha_deg}};
        j["hologram"] = {{"normalize_amplitudes", c.hologram.normalize_amplitudes}};
        j["quantization"] = {{"levels", c.quantization.levels},
                             {"insertion_loss_db", c.quantization.insertion_loss_db}};
        j["scan"] = {{"plane", c.scan.plane},
                     {"fixed_m", c.scan.fixed_m},
                     {"axis1_range_m", json::array({c.scan.axis1_min_m, c.scan.axis1_max_m})},
                     {"axis1_samples", c.scan.axis1_samples},
                     {"axis2_range_m", json::array({c.scan.axis2_min_m, c.scan.axis2_max_m})},
                     {"axis2_samples", c.scan.axis2_samples},
                     {"spot_floor_db", c.scan.spot_floor_db}};
        j["link"] = {{"snr_grid_db", c.link.snr_grid_db},
                     {"min_errors", c.link.min_errors},
                     {"max_bits", c.link.max_bits},
                     {"seed", c.link.seed},
                     {"fec_reference_ber", c.link.fec_reference_ber},
                     {"constellation_cap", c.link.constellation_cap}};
        return j;
    }

    ScenarioConfig config_from_json(const json &j)
    {
        ScenarioConfig c;
        reject_unknown_keys(j, {"frequency_hz", "surface", "source", "assignments", "amplitudes",
                                "mask", "hologram", "quantization", "scan", "link"},
                            "");

        if (j.contains("frequency_hz"))
            c.frequency_hz = j.at("frequency_hz").get<double>();

        if (j.contains("surface"))
        {
            const json &js = j.at("surface");
            reject_unknown_keys(js, {"rows", "cols", "period_m"}, "surface");
            if (js.contains("rows"))
                c.surface.rows = js.at("rows").get<int>();
            if (js.contains("cols"))
                c.surface.cols = js.at("cols").get<int>();
            if (js.contains("period_m"))
                c.surface.period_m = js.at("period_m").get<double>();
        }

        if (j.contains("source"))
        {
            const json &js = j.at("source");
            reject_unknown_keys(js,
                                {"kind", "position_m", "divergence_angle_deg",
                                 "elements_per_ring", "element_amplitude"},
                                "source");
            if (js.contains("kind"))
                c.source.kind = js.at("kind").get<std::string>();
            if (js.contains("position_m"))
                c.source.position = vec3_from(js.at("position_m"), "source.position_m");
            if (js.contains("divergence_angle_deg"))
                c.source.divergence_angle_deg = js.at("divergence_angle_deg").get<double>();
            if (js.contains("elements_per_ring"))
                c.source.elements_per_ring = js.at("elements_per_ring").get<int>();
            if (js.contains("element_amplitude"))
                c.source.element_amplitude = js.at("element_amplitude").get<double>();
        }

        if (j.contains("assignments"))
        {
            c.assignments.clear();
            for (const json &ja : j.at("assignments"))
            {
                reject_unknown_keys(ja, {"mode", "target_m"}, "assignments");
                AssignmentConfig a;
                a.mode = ja.at("mode").get<int>();
                a.target = vec3_from(ja.at("target_m"), "assignments.target_m");
                c.assignments.push_back(a);
            }
        }

        if (j.contains("amplitudes"))
        {
            const json &ja = j.at("amplitudes");
            reject_unknown_keys(ja, {"beta_ref", "beta_obj"}, "amplitudes");
            if (ja.contains("beta_ref"))
                c.amplitudes.beta_ref = complex_map_from(ja.at("beta_ref"), "amplitudes.beta_ref");
            if (ja.contains("beta_obj"))
                c.amplitudes.beta_obj = complex_map_from(ja.at("beta_obj"), "amplitudes.beta_obj");
        }

        if (j.contains("mask"))
        {
            const json &jm = j.at("mask");
            reject_unknown_keys(jm, {"alpha_deg"}, "mask");
            if (jm.contains("alpha_deg"))
                c.mask.alpha_deg = jm.at("alpha_deg").get<double>();
        }

        if (j.contains("hologram"))
        {
            const json &jh = j.at("hologram");
            reject_unknown_keys(jh, {"normalize_amplitudes"}, "hologram");
            if (jh.contains("normalize_amplitudes"))
                c.hologram.normalize_amplitudes = jh.at("normalize_amplitudes").get<bool>();
        }

        if (j.contains("quantization"))
        {
            const json &jq = j.at("quantization");
            reject_unknown_keys(jq, {"levels", "insertion_loss_db"}, "quantization");
            if (jq.contains("levels"))
                c.quantization.levels = jq.at("levels").get<int>();
            if (jq.contains("insertion_loss_db"))
                c.quantization.insertion_loss_db = jq.at("insertion_loss_db").get<double>();
        }

        if (j.contains("scan"))
        {
            const json &js = j.at("scan");
            reject_unknown_keys(js,
                                {"plane", "fixed_m", "axis1_range_m", "axis1_samples",
                                 "axis2_range_m", "axis2_samples", "spot_floor_db"},
                                "scan");
            if (js.contains("plane"))
                c.scan.plane = js.at("plane").get<std::string>();
            if (js.contains("fixed_m"))
                c.scan.fixed_m = js.at("fixed_m").get<double>();
            if (js.contains("axis1_range_m"))
            {
                c.scan.axis1_min_m = js.at("axis1_range_m").at(0).get<double>();
                c.scan.axis1_max_m = js.at("axis1_range_m").at(1).get<double>();
            }
            if (js.contains("axis1_samples"))
                c.scan.axis1_samples = js.at("axis1_samples").get<int>();
            if (js.contains("axis2_range_m"))
            {
                c.scan.axis2_min_m = js.at("axis2_range_m").at(0).get<double>();
                c.scan.axis2_max_m = js.at("axis2_range_m").at(1).get<double>();
            }
            if (js.contains("axis2_samples"))
                c.scan.axis2_samples = js.at("axis2_samples").get<int>();
            if (js.contains("spot_floor_db"))
                c.scan.spot_floor_db = js.at("spot_floor_db").get<double>();
        }

        if (j.contains("link"))
        {
            const json &jl = j.at("link");
            reject_unknown_keys(jl,
                                {"snr_grid_db", "min_errors", "max_bits", "seed",
                                 "fec_reference_ber", "constellation_cap"},
                                "link");
            if (jl.contains("snr_grid_db"))
                c.link.snr_grid_db = jl.at("snr_grid_db").get<std::vector<double>>();
            if (jl.contains("min_errors"))
                c.link.min_errors = jl.at("min_errors").get<std::uint64_t>();
            if (jl.contains("max_bits"))
                c.link.max_bits = jl.at("max_bits").get<std::uint64_t>();
            if (jl.contains("seed"))
                c.link.seed = jl.at("seed").get<std::uint64_t>();
            if (jl.contains("fec_reference_ber"))
                c.link.fec_reference_ber = jl.at("fec_reference_ber").get<double>();
            if (jl.contains("constellation_cap"))
                c.link.constellation_cap = jl.at("constellation_cap").get<int>();
        }

        c.validate();
        return c;
    }
} // namespace

ScenarioConfig config_from_json_text(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ParseError(std::string("config: ") + e.what());
    }
    try
    {
        return config_from_json(j);
    }
    catch (const json::exception &e)
    {
        throw ParseError(std::string("config: ") + e.what());
    }
}

ScenarioConfig load_config(const std::string &path)
{
    return config_from_json_text(io::read_file(path));
}

std::string config_to_json_text(const ScenarioConfig &config, int indent)
{
    return config_to_json(config).dump(indent) + "\n";
}

void save_config(const ScenarioConfig &config, const std::string &path)
{
    io::write_file(path, config_to_json_text(config));
}

std::string canonical_json(const ScenarioConfig &config)
{
    return config_to_json(config).dump();
}

std::string config_hash(const ScenarioConfig &config)
{
    return sha256_hex(canonical_json(config));
}

} // namespace vortexsim::scenario
