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

#include <array>
#include <string>
#include <string_view>

namespace evsynth::service {

// The seven live terminals. Each evidence source folds its orchestrator,
// BioExpert and Evaluator into one channel; run-level and integration
// orchestration share the composer channel.
inline constexpr std::array<std::string_view, 7> kChannels = {
    "civic",    "pharmgkb",          "enrichment",         "composer",
    "content_validator", "critical_reviewer", "relevance_validator"};

// Total over agent ids: anything unrecognized lands on "composer".
std::string_view channel_for(std::string_view agent_id) noexcept;

bool is_channel(std::string_view name) noexcept;

}  // namespace evsynth::service
