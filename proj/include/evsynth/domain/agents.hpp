// Copyright 2026 The evsynth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "evsynth/domain/types.hpp"

// Agent ids name who produced an event or made a model call. They have the
// form "<scope>.<role>", e.g. "civic.bioexpert" or
// "integration.critical_reviewer".
namespace evsynth::agents {

inline constexpr std::string_view kRunOrchestrator = "run.orchestrator";
inline constexpr std::string_view kIntegrationOrchestrator =
    "integration.orchestrator";
inline constexpr std::string_view kComposer = "integration.composer";
inline constexpr std::string_view kContentValidator =
    "integration.content_validator";
inline constexpr std::string_view kCriticalReviewer =
    "integration.critical_reviewer";
inline constexpr std::string_view kRelevanceValidator =
    "integration.relevance_validator";

std::string orchestrator(SourceId source);
std::string bioexpert(SourceId source);
std::string evaluator(SourceId source);

// Orchestrators are deterministic code and never call a model.
bool is_orchestrator(std::string_view agent_id) noexcept;

}  // namespace evsynth::agents
