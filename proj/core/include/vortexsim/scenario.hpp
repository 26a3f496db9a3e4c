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
#include <map>
#include <string>
#include <vector>

#include "vortexsim/hologram.hpp"
#include "vortexsim/link.hpp"
#include "vortexsim/propagation.hpp"

namespace vortexsim::scenario
{
    // Scenario file schema. Every field has a default; a config file only
    // overrides what it names. Unknown keys are rejected on load.

    struct SurfaceConfig
    {
        int rows = 28;
        int cols = 28;
        double period_m = 0.015;
    };

    struct SourceConfig
    {
        std::string kind = "discrete-uca"; // or "analytic"
        Vec3 position{0.0, 0.0, -0.5};
        double divergence_angle_deg = 20.0;
        int elements_per_ring = 8;
        double element_amplitude = 1.0;
    };

    struct AssignmentConfig
    {
        int mode = 1;
        Vec3 target{0.0, 0.0, 0.15};
    };

    struct AmplitudesConfig
    {
        std::map<int, std::complex<double>> beta_ref; // by mode, default 1+0j
        std::map<int, std::complex<double>> beta_obj; // by receiver index
    };

    struct MaskConfig
    {
        double alpha_deg = 0.0;
    };

    struct HologramConfig
    {
        bool normalize_amplitudes = true;
    };

    struct QuantizationConfig
    {
        int levels = 4;
        double insertion_loss_db = 0.0;
    };

    struct ScanConfig
    {
        std::string plane = "xz"; // "xz", "xy" or "yz"
        double fixed_m = 0.0;
        double axis1_min_m = -0.3, axis1_max_m = 0.3;
        int axis1_samples = 201;
        double axis2_min_m = 0.05, axis2_max_m = 0.8;
        int axis2_samples = 251;
        double spot_floor_db = -15.0;
    };

    struct LinkSimConfig
    {
        std::vector<double> snr_grid_db = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        std::uint64_t min_errors = 100;
        std::uint64_t max_bits = 10'000'000;
        std::uint64_t seed = 20260810;
        double fec_reference_ber = 3.8e-3; // plotted reference line only
        int constellation_cap = 2000;
    };

    struct ScenarioConfig
    {
        double frequency_hz = 1.0e10;
        SurfaceConfig surface;
        SourceConfig source;
        std::vector<AssignmentConfig> assignments = {
            {1, {0.0, 0.0, 0.15}},
            {2, {0.0, 0.0, 0.26}},
        };
        AmplitudesConfig amplitudes;
        MaskConfig mask;
        HologramConfig hologram;
        QuantizationConfig quantization;
        ScanConfig scan;
        LinkSimConfig link;

        // Two stock focal layouts: spots along the propagation axis, or
        // mirrored left/right of it at one depth.
        static ScenarioConfig axial_default();
        static ScenarioConfig lateral_default();

        void validate() const; // throws ValidationError naming the field

        // Builders for the simulation types.
        SimulationConstants constants() const;
        hologram::MetasurfaceGeometry geometry() const;
        std::vector<hologram::ReceiverTarget> targets() const;
        hologram::SourceAmplitudes source_amplitudes() const;
        hologram::BesselMaskConfig mask_config() const;
        propagation::SourceModel source_model() const;
        propagation::ScanPlane scan_plane() const;
        hologram::PhasePattern synthesize() const;
        link::SweepStopping stopping() const;
    };

    /// Parses and validates a scenario file; defaults fill absent fields.
    ScenarioConfig load_config(const std::string &path);
    ScenarioConfig config_from_json_text(const std::string &text);

    std::string config_to_json_text(const ScenarioConfig &config, int indent = 2);
    void save_config(const ScenarioConfig &config, const std::string &path);

    /// Compact canonical serialization (defaults filled, keys sorted); the
    /// config hash embedded in every output file is the SHA-256 of this.
    std::string canonical_json(const ScenarioConfig &config);
    std::string config_hash(const ScenarioConfig &config);

} // namespace vortexsim::scenario
