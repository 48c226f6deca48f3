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

#include <optional>
#include <string>
#include <string_view>

#include "evsynth/domain/types.hpp"

namespace evsynth::llm {

enum class AgentRole {
  BioExpert,
  Evaluator,
  ReportComposer,
  ContentValidator,
  CriticalReviewer,
  RelevanceValidator,
};

std::string_view to_string(AgentRole role) noexcept;

// Appended to every system message.
inline constexpr std::string_view kAntiHallucinationClause =
    "Use only the evidence provided; do not introduce outside information.";

// Bumped whenever any role text below changes; recorded with each run.
inline constexpr std::string_view kPromptSetVersion = "roles-2026.10";

struct RoleSpec {
  AgentRole role = AgentRole::BioExpert;
  std::string agent_id;
  std::string instructions;
};

// BioExpert and Evaluator instructions are specialized per evidence source;
// `source` is required for those two roles and ignored otherwise.
RoleSpec make_role(AgentRole role, std::optional<SourceId> source = {});

}  // namespace evsynth::llm
