// SPDX-License-Identifier: Apache-2.0
//
// rissim - two-path RIS-assisted propagation simulator
// Copyright (C) 2026 The rissim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISSIM_ERRORS_HPP
#define RISSIM_ERRORS_HPP

#include <stdexcept>

namespace rissim
{
    // Invalid or inconsistent configuration value (bad range, unknown key, size mismatch)
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Cell index outside the RIS grid
    class IndexError : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    // Geometry that has no defined propagation path (e.g. coincident Tx and Rx)
    class GeometryError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Argument outside the mathematical domain of an operation
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Problem too large for an exhaustive method
    class CapacityError : public std::length_error
    {
    public:
        using std::length_error::length_error;
    };

    // Output could not be written
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
