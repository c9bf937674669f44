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


#ifndef RISSIM_OUTPUT_HPP
#define RISSIM_OUTPUT_HPP

#include "rissim/experiment.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

namespace rissim
{
    // Header `d2_m,<strategy>_dbm,...`, values in 6-significant-digit scientific notation, LF endings
    std::string format_csv(const SweepResult &result);

    // Standalone SVG of dBm vs d2; log distance axis when the range spans at least one decade
    std::string format_svg(const SweepResult &result);

    // Writes to a sibling temporary file, then renames over `path`. Throws IoError.
    void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

    // Return the number of bytes written
    std::size_t emit_csv(const SweepResult &result, const std::filesystem::path &path);
    std::size_t emit_plot(const SweepResult &result, const std::filesystem::path &path);
}

#endif
