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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace vortexsim
{
    // Minimal FIPS 180-4 SHA-256, used to fingerprint configs and to tie
    // pipeline artifacts together. Not a general-purpose crypto library.
    class Sha256
    {
      public:
        Sha256();
        void update(const void *data, std::size_t len);
        std::array<std::uint8_t, 32> digest(); // finalizes; object is spent afterwards

      private:
        void process_block(const std::uint8_t *block);

        std::array<std::uint32_t, 8> state_;
        std::array<std::uint8_t, 64> buffer_;
        std::size_t buffer_len_ = 0;
        std::uint64_t total_len_ = 0;
    };

    /// Lowercase hex SHA-256 of a byte string.
    std::string sha256_hex(std::string_view data);

} // namespace vortexsim
