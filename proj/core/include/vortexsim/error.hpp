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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vortexsim
{
    // Base class for all errors raised by the library.
    class Error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    // Argument outside the supported range of an operation.
    class DomainError : public Error
    {
      public:
        using Error::Error;
    };

    // Evaluation point coincides with a radiator or an axis where the
    // field phase is undefined.
    class SingularityError : public Error
    {
      public:
        using Error::Error;
    };

    // Ring element count violates the azimuthal sampling bound N >= 2|l|+1.
    class SamplingError : public Error
    {
      public:
        using Error::Error;
    };

    // Array extents of two coupled quantities disagree.
    class ShapeError : public Error
    {
      public:
        using Error::Error;
    };

    // Multi-mode vector sum collapsed below the representable phase
    // threshold at one or more surface units; carries the unit indices.
    class DegenerateSumError : public Error
    {
      public:
        DegenerateSumError(const std::string &msg, std::vector<std::pair<int, int>> units)
            : Error(msg), units_(std::move(units)) {}

        const std::vector<std::pair<int, int>> &units() const { return units_; }

      private:
        std::vector<std::pair<int, int>> units_; // (row m, col n) of offending units
    };

    // A configuration value violates an invariant; names the field.
    class ValidationError : public Error
    {
      public:
        ValidationError(const std::string &field, const std::string &msg)
            : Error(field + ": " + msg), field_(field) {}

        const std::string &field() const { return field_; }

      private:
        std::string field_;
    };

    // Malformed input file (JSON syntax, missing required key, bad type).
    class ParseError : public Error
    {
      public:
        using Error::Error;
    };

} // namespace vortexsim
