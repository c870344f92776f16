// SPDX-License-Identifier: Apache-2.0
//
// wisim: radar sensing channel simulator and micro-Doppler toolkit
// Copyright (C) 2026 The wisim authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace wisim {

// Machine-parsable error categories; the CLI prints `error: <category>: <message>`.
enum class ErrorCategory
{
    config,
    bounds,
    range,
    io,
    parse,
    simulation,
};

const char *to_string(ErrorCategory category);

class Error : public std::runtime_error
{
public:
    Error(ErrorCategory category, const std::string &message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

// Invalid or inconsistent configuration values.
struct ConfigError : Error
{
    explicit ConfigError(const std::string &m) : Error(ErrorCategory::config, m) {}
};

// Geometry leaves the room or the unambiguous delay range.
struct BoundsError : Error
{
    explicit BoundsError(const std::string &m) : Error(ErrorCategory::bounds, m) {}
};

// Argument outside its admissible range, or shapes that do not agree.
struct RangeError : Error
{
    explicit RangeError(const std::string &m) : Error(ErrorCategory::range, m) {}
};

struct IoError : Error
{
    explicit IoError(const std::string &m) : Error(ErrorCategory::io, m) {}
};

class ParseError : public Error
{
public:
    ParseError(const std::string &m, std::size_t line = 0)
        : Error(ErrorCategory::parse, line ? m + " (line " + std::to_string(line) + ")" : m), line_(line) {}

    // 1-based line of the offending input, 0 when not line-oriented.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct SimulationError : Error
{
    explicit SimulationError(const std::string &m) : Error(ErrorCategory::simulation, m) {}
};

} // namespace wisim
