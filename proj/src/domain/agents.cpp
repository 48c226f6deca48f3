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

#include "evsynth/domain/agents.hpp"

namespace evsynth::agents {

std::string orchestrator(SourceId source) {
  return std::string(slug(source)) + ".orchestrator";
}

std::string bioexpert(SourceId source) {
  return std::string(slug(source)) + ".bioexpert";
}

std::string evaluator(SourceId source) {
  return std::string(slug(source)) + ".evaluator";
}

bool is_orchestrator(std::string_view agent_id) noexcept {
  return agent_id.ends_with(".orchestrator");
}

}  // namespace evsynth::agents
