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

#include "rhsim/error.hpp"

namespace rhsim
{

const char *to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::invalid_config:
        return "invalid-config";
    case ErrorCode::invalid_input:
        return "invalid-input";
    case ErrorCode::singular_geometry:
        return "singular-geometry";
    case ErrorCode::shape_mismatch:
        return "shape-mismatch";
    case ErrorCode::rank_deficiency:
        return "rank-deficiency";
    case ErrorCode::infeasible_task:
        return "infeasible-task";
    case ErrorCode::infeasible:
        return "infeasible";
    case ErrorCode::io:
        return "io";
    }
    return "unknown";
}

} // namespace rhsim
