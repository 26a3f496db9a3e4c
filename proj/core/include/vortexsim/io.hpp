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

#include <string>
#include <vector>

#include "vortexsim/link.hpp"
#include "vortexsim/propagation.hpp"

namespace vortexsim::io
{
    // Stamp embedded in every emitted file: tool version plus the SHA-256 of
    // the canonical scenario config, so artifacts can be traced to their
    // inputs and reruns compare byte-identical.
    struct OutputMeta
    {
        std::string tool_version;
        std::string config_hash;
    };

    // --- pattern files ----------------------------------------------------

    /// JSON with geometry, assignments, mask and a row-major phase array
    /// (radians, 9 significant digits).
    std::string pattern_to_json(const hologram::PhasePattern &pattern, const OutputMeta &meta);

    /// JSON with geometry, assignments, mask, level count, insertion loss and
    /// the row-major state-index array.
    std::string pattern_to_json(const hologram::QuantizedPattern &pattern, const OutputMeta &meta);

    /// CSV with columns m,n,x,y,phase_rad (continuous) or
    /// m,n,x,y,phase_rad,state (quantized; phase_rad is the represented one).
    std::string pattern_to_csv(const hologram::PhasePattern &pattern, const OutputMeta &meta);
    std::string pattern_to_csv(const hologram::QuantizedPattern &pattern, const OutputMeta &meta);

    /// Reads back either pattern flavor from its JSON form.
    propagation::PatternVariant pattern_from_json(const std::string &text);

    // --- field maps -------------------------------------------------------

    /// CSV with header <axis1>_m,<axis2>_m,re,im,power_db (e.g. x_m,z_m,...).
    std::string field_map_to_csv(const propagation::FieldMap &map, const OutputMeta &meta);

    /// Binary 16-bit PGM (P5, maxval 65535, big-endian samples). Power is
    /// clipped to [floor_db, 0] and mapped linearly onto [0, 65535]; row 0 is
    /// the axis2 maximum so the propagation axis points up in image viewers.
    std::vector<unsigned char> field_map_to_pgm(const propagation::FieldMap &map, double floor_db,
                                                const OutputMeta &meta);

    /// JSON list of detected spots with positions, peak powers and extents.
    std::string spots_to_json(const std::vector<propagation::FocalSpot> &spots, double floor_db,
                              const OutputMeta &meta);

    // --- crosstalk and link ----------------------------------------------

    /// JSON with mode/receiver labels, the dB matrix, per-receiver isolation
    /// and the complex focal gains (17 significant digits, lossless). The
    /// embedded "gains_sha256" checksum ties downstream link runs to exactly
    /// these gains.
    std::string crosstalk_to_json(const propagation::CrosstalkMatrix &matrix,
                                  const OutputMeta &meta);

    struct CrosstalkFile
    {
        link::ChannelMatrix gains;     // gains[p][q]
        std::vector<int> modes;
        std::vector<int> receiver_indices;
        std::string config_hash;
        std::string gains_hash;
    };

    CrosstalkFile crosstalk_from_json(const std::string &text);

    /// Canonical byte string of a gain matrix (17 significant digits); its
    /// SHA-256 is the checksum stored and verified across the pipeline.
    std::string gains_canonical(const link::ChannelMatrix &gains);

    /// CSV with columns stream,snr_db,bits,errors,ber.
    std::string ber_to_csv(const link::BerCurve &curve, const OutputMeta &meta);

    /// CSV with columns stream,re,im, capped per stream.
    std::string constellation_to_csv(const link::ConstellationDump &dump, const OutputMeta &meta);

    /// JSON run summary: per-point results, the reference curve, the FEC
    /// display threshold and the channel checksum consumed.
    std::string ber_to_json(const link::BerResult &result, double fec_reference_ber,
                            const std::string &channel_hash, const OutputMeta &meta);

    // --- files ------------------------------------------------------------

    void write_file(const std::string &path, const std::string &content);
    void write_file(const std::string &path, const std::vector<unsigned char> &content);
    std::string read_file(const std::string &path);

} // namespace vortexsim::io
