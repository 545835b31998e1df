// SPDX-License-Identifier: Apache-2.0
//
// rhsim: holographic-surface beamforming simulator for aerial platforms
// Copyright (C) 2026 The rhsim authors
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

#ifndef RHSIM_ERROR_HPP
#define RHSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rhsim
{

enum class ErrorCode
{
    invalid_config,
    invalid_input,
    singular_geometry,
    shape_mismatch,
    rank_deficiency,
    infeasible_task,
    infeasible,
    io
};

const char *to_string(ErrorCode code) noexcept;

// All library failures derive from this; the C API maps `code()` onto its status values.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised by the scenario loader; carries the offending key (dotted path) and source line when known.
class ConfigError : public Error
{
public:
    ConfigError(std::string key, int line, const std::string &what)
        : Error(ErrorCode::invalid_config, what), key_(std::move(key)), line_(line) {}
    const std::string &key() const noexcept { return key_; }
    int line() const noexcept { return line_; } // 1-based, 0 if unknown

private:
    std::string key_;
    int line_;
};

} // namespace rhsim

#endif
