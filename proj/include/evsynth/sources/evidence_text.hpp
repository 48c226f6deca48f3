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

#include "evsynth/domain/types.hpp"

namespace evsynth::sources {

// Plain-text evidence block placed in generator and evaluator prompts. Every
// item is introduced by its bracketed id so the model can cite it.
std::string render_evidence_block(const EvidenceBundle& bundle);

}  // namespace evsynth::sources
