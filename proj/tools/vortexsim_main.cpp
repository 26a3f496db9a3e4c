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
//
// Subcommand pipeline:
//   design  synthesize the surface phases and write pattern files
//   scan    propagate through a pattern and map a plane (CSV + PGM)
//   spots   detect focal spots of a scan
//   xtalk   per-mode focal gains, crosstalk matrix and isolation
//   ber     Monte-Carlo QPSK sweep over the channel from xtalk
//
// Exit codes: 0 success, 2 validation/parse error, 3 numerical degeneracy.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vortexsim/io.hpp"
#include "vortexsim/scenario.hpp"
#include "vortexsim/version.hpp"

namespace
{

namespace vs = vortexsim;
using vs::scenario::ScenarioConfig;

struct CommonArgs
{
    std::string config_path;
    std::string out_dir = ".";
    std::string pattern_path; // optional
    bool quantized = false;
    int mode = 0;
    bool mode_set = false;
    bool both = false;
};

std::string join_path(const std::string &dir, const std::string &name)
{
    return (std::filesystem::path(dir) / name).string();
}

vs::io::OutputMeta make_meta(const ScenarioConfig &config)
{
    return {vs::version_string, vs::scenario::config_hash(config)};
}

// Pattern for the propagation stages: taken from --pattern when given,
// otherwise synthesized from the config (quantized on request).
vs::propagation::PatternVariant resolve_pattern(const ScenarioConfig &config,
                                                const CommonArgs &args)
{
    if (!args.pattern_path.empty())
    {
        auto pattern = vs::io::pattern_from_json(vs::io::read_file(args.pattern_path));
        const auto *geom = std::visit(
            [](const auto &p) { return &p.geometry; }, pattern);
        if (geom->rows != config.surface.rows || geom->cols != config.surface.cols ||
            geom->period_m != config.surface.period_m)
            throw vs::ValidationError("pattern", "pattern geometry does not match the config");
        return pattern;
    }
    auto continuous = config.synthesize();
    if (args.quantized)
        return vs::hologram::quantize_phase(continuous, config.quantization.levels,
                                            config.quantization.insertion_loss_db);
    return continuous;
}

// Modes illuminated for scan/spots: one ring (--mode) or all of them
// coherently (--both, the default).
std::vector<vs::waves::VortexMode> selected_modes(const ScenarioConfig &config,
                                                  const CommonArgs &args)
{
    if (args.mode_set)
    {
        for (const auto &a : config.assignments)
            if (a.mode == args.mode)
                return {{args.mode}};
        throw vs::ValidationError("mode", "mode l = " + std::to_string(args.mode) +
                                              " is not assigned in the config");
    }
    std::vector<vs::waves::VortexMode> modes;
    for (const auto &a : config.assignments)
        modes.push_back({a.mode});
    return modes;
}

std::string selection_tag(const ScenarioConfig &config, const CommonArgs &args)
{
    if (args.mode_set)
        return "mode" + std::to_string(args.mode);
    (void)config;
    return "both";
}

std::vector<vs::waves::cdouble> illuminate(const ScenarioConfig &config, const CommonArgs &args)
{
    const auto constants = config.constants();
    const auto geometry = config.geometry();
    const auto source = config.source_model();
    const auto amplitudes = config.source_amplitudes();

    std::vector<vs::waves::cdouble> incident(static_cast<size_t>(geometry.unit_count()),
                                             {0.0, 0.0});
    for (const auto mode : selected_modes(config, args))
    {
        const auto one =
            vs::propagation::incident_field_on_surface(source, mode, geometry, amplitudes,
                                                       constants);
        for (size_t i = 0; i < incident.size(); ++i)
            incident[i] += one[i];
    }
    return incident;
}

int cmd_design(const CommonArgs &args)
{
    const auto config = vs::scenario::load_config(args.config_path);
    const auto meta = make_meta(config);

    const auto pattern = config.synthesize();
    const auto quantized = vs::hologram::quantize_phase(pattern, config.quantization.levels,
                                                        config.quantization.insertion_loss_db);

    vs::io::write_file(join_path(args.out_dir, "pattern_continuous.json"),
                       vs::io::pattern_to_json(pattern, meta));
    vs::io::write_file(join_path(args.out_dir, "pattern_continuous.csv"),
                       vs::io::pattern_to_csv(pattern, meta));
    vs::io::write_file(join_path(args.out_dir, "pattern_quantized.json"),
                       vs::io::pattern_to_json(quantized, meta));
    vs::io::write_file(join_path(args.out_dir, "pattern_quantized.csv"),
                       vs::io::pattern_to_csv(quantized, meta));

    std::cout << "design: wrote " << config.surface.rows << "x" << config.surface.cols
              << " pattern (continuous + " << config.quantization.levels
              << "-level quantized) to " << args.out_dir << "\n";
    return 0;
}

int cmd_scan(const CommonArgs &args)
{
    const auto config = vs::scenario::load_config(args.config_path);
    const auto meta = make_meta(config);

    const auto pattern = resolve_pattern(config, args);
    const auto incident = illuminate(config, args);
    const auto transmitted = vs::propagation::transmit_through(incident, pattern);
    const auto map = vs::propagation::scan_plane(config.scan_plane(), transmitted,
                                                 config.geometry(), config.constants());

    const std::string tag = selection_tag(config, args);
    vs::io::write_file(join_path(args.out_dir, "scan_" + tag + ".csv"),
                       vs::io::field_map_to_csv(map, meta));
    vs::io::write_file(join_path(args.out_dir, "scan_" + tag + ".pgm"),
                       vs::io::field_map_to_pgm(map, config.scan.spot_floor_db, meta));

    std::cout << "scan: " << map.plane.axis1_samples << "x" << map.plane.axis2_samples << " "
              << config.scan.plane << " map (" << tag << ") written to " << args.out_dir << "\n";
    return 0;
}

int cmd_spots(const CommonArgs &args)
{
    const auto config = vs::scenario::load_config(args.config_path);
    const auto meta = make_meta(config);

    const auto pattern = resolve_pattern(config, args);
    const auto incident = illuminate(config, args);
    const auto transmitted = vs::propagation::transmit_through(incident, pattern);
    const auto map = vs::propagation::scan_plane(config.scan_plane(), transmitted,
                                                 config.geometry(), config.constants());
    const auto spots = vs::propagation::find_focal_spots(map, config.scan.spot_floor_db);

    const std::string tag = selection_tag(config, args);
    vs::io::write_file(join_path(args.out_dir, "spots_" + tag + ".json"),
                       vs::io::spots_to_json(spots, config.scan.spot_floor_db, meta));

    std::cout << "spots: " << spots.size() << " spot(s) above " << config.scan.spot_floor_db
              << " dB (" << tag << ")\n";
    for (const auto &s : spots)
        std::printf("  (%.4f, %.4f, %.4f) m  %.2f dB  extent (%.1f, %.1f) mm\n", s.position.x,
                    s.position.y, s.position.z, s.peak_power_db, s.extent_axis1_m * 1e3,
                    s.extent_axis2_m * 1e3);
    return 0;
}

int cmd_xtalk(const CommonArgs &args)
{
    const auto config = vs::scenario::load_config(args.config_path);
    const auto meta = make_meta(config);

    const auto pattern = resolve_pattern(config, args);
    const auto matrix = vs::propagation::crosstalk_matrix(
        config.source_model(), config.source_amplitudes(), pattern, config.targets(),
        config.geometry(), config.constants());

    if (matrix.degenerate_targets)
        std::cerr << "warning: receivers share a position; isolation is degenerate\n";

    vs::io::write_file(join_path(args.out_dir, "crosstalk.json"),
                       vs::io::crosstalk_to_json(matrix, meta));

    std::cout << "xtalk: isolation per receiver:";
    for (size_t p = 0; p < matrix.isolation_db.size(); ++p)
        std::printf(" rx%zu=%.2f dB", p, matrix.isolation_db[p]);
    std::cout << "\n";
    return 0;
}

int cmd_ber(const CommonArgs &args, const std::string &channel_path, bool identity)
{
    const auto config = vs::scenario::load_config(args.config_path);
    const auto meta = make_meta(config);

    vs::link::LinkConfig link_config;
    link_config.seed = config.link.seed;
    link_config.constellation_cap = config.link.constellation_cap;

    std::string channel_hash = "identity";
    if (identity)
    {
        const size_t n = config.assignments.size();
        link_config.h.assign(n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
        for (size_t p = 0; p < n; ++p)
            link_config.h[p][p] = {1.0, 0.0};
    }
    else
    {
        const auto channel = vs::io::crosstalk_from_json(vs::io::read_file(channel_path));
        if (channel.config_hash != meta.config_hash)
            throw vs::ValidationError("channel",
                                      "crosstalk file was produced from a different config");
        link_config.h = channel.gains;
        channel_hash = channel.gains_hash;
    }

    const auto result =
        vs::link::ber_sweep(link_config, config.link.snr_grid_db, config.stopping());

    vs::io::write_file(join_path(args.out_dir, "ber.csv"),
                       vs::io::ber_to_csv(result.curve, meta));
    vs::io::write_file(join_path(args.out_dir, "constellation.csv"),
                       vs::io::constellation_to_csv(result.constellation, meta));
    vs::io::write_file(join_path(args.out_dir, "ber.json"),
                       vs::io::ber_to_json(result, config.link.fec_reference_ber, channel_hash,
                                           meta));

    std::cout << "ber: " << config.link.snr_grid_db.size() << " grid points, "
              << result.curve.per_stream.size() << " stream(s); final BER";
    for (const auto &stream : result.curve.per_stream)
        std::printf(" %.3g", stream.back().ber);
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"vortexsim: multi-mode vortex-wave metasurface link simulator"};
    app.set_version_flag("--version", vortexsim::version_string);
    app.require_subcommand(1);

    CommonArgs args;
    std::string channel_path;
    bool identity = false;

    auto add_common = [&](CLI::App *cmd, bool with_pattern, bool with_modes) {
        cmd->add_option("--config", args.config_path, "scenario JSON file")->required();
        cmd->add_option("--out", args.out_dir, "output directory (default .)");
        if (with_pattern)
        {
            cmd->add_option("--pattern", args.pattern_path,
                            "pattern JSON from `design` (default: synthesize from config)");
            cmd->add_flag("--quantized", args.quantized,
                          "use the quantized pattern when synthesizing");
        }
        if (with_modes)
        {
            auto *mode_opt =
                cmd->add_option("--mode", args.mode, "illuminate a single vortex mode l");
            auto *both_flag =
                cmd->add_flag("--both", args.both, "illuminate all modes coherently (default)");
            mode_opt->excludes(both_flag);
        }
    };

    auto *design = app.add_subcommand("design", "synthesize surface phase patterns");
    add_common(design, false, false);

    auto *scan = app.add_subcommand("scan", "field map over the configured plane");
    add_common(scan, true, true);

    auto *spots = app.add_subcommand("spots", "detect focal spots of the configured scan");
    add_common(spots, true, true);

    auto *xtalk = app.add_subcommand("xtalk", "per-mode focal gains and isolation");
    add_common(xtalk, true, false);

    auto *ber = app.add_subcommand("ber", "Monte-Carlo QPSK BER sweep");
    add_common(ber, false, false);
    auto *chan_opt =
        ber->add_option("--channel", channel_path, "crosstalk.json emitted by `xtalk`");
    auto *ident_flag =
        ber->add_flag("--identity", identity, "interference-free reference channel");
    chan_opt->excludes(ident_flag);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        for (auto *cmd : {scan, spots})
            if (cmd->parsed() && cmd->count("--mode"))
                args.mode_set = true;

        if (design->parsed())
            return cmd_design(args);
        if (scan->parsed())
            return cmd_scan(args);
        if (spots->parsed())
            return cmd_spots(args);
        if (xtalk->parsed())
            return cmd_xtalk(args);
        if (ber->parsed())
        {
            if (channel_path.empty() && !identity)
                throw vortexsim::ValidationError("channel",
                                                 "ber needs --channel <crosstalk.json> or "
                                                 "--identity");
            return cmd_ber(args, channel_path, identity);
        }
    }
    catch (const vortexsim::DegenerateSumError &e)
    {
        std::cerr << "degeneracy: " << e.what() << "\n";
        return 3;
    }
    catch (const vortexsim::SingularityError &e)
    {
        std::cerr << "degeneracy: " << e.what() << "\n";
        return 3;
    }
    catch (const vortexsim::ValidationError &e)
    {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    }
    catch (const vortexsim::ParseError &e)
    {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
