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

#include "evsynth/service/channels.hpp"

#include <algorithm>

#include "evsynth/domain/agents.hpp"

namespace evsynth::service {

std::string_view channel_for(std::string_view agent_id) noexcept {
  if (agent_id.starts_with("civic.")) return "civic";
  if (agent_id.starts_with("pharmgkb.")) return "pharmgkb";
  if (agent_id.starts_with("enrichment.")) return "enrichment";
  if (agent_id == agents::kContentValidator) return "content_validator";
  if (agent_id == agents::kCriticalReviewer) return "critical_reviewer";
  if (agent_id == agents::kRelevanceValidator) return "relevance_validator";
  return "composer";
}

bool is_channel(std::string_view name) noexcept {
  return std::find(kChannels.begin(), kChannels.end(), name) != kChannels.end();
}

}  // namespace evsynth::service
