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

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/types.hpp"
#include "evsynth/sources/evidence_source.hpp"

namespace evsynth::service {

struct RunRequest {
  ResearchBrief brief;
  sources::SourceMode source_mode = sources::SourceMode::Fixture;
  std::string fixture_set;  // sub-directory of the fixture root, e.g. "S1"
  std::optional<int> max_iterations;
  std::optional<std::size_t> token_ceiling;
};

// Body of POST /runs:
//   {"context": "...", "question": "...",
//    "genes": "BRAF, KRAS" | ["BRAF", "KRAS"],
//    "upload": {"context", "question", "genes": [...]} | "<same as text>",
//    "source_mode": "fixture" | "live",
//    "fixture_set": "S1",
//    "max_iterations": 3, "token_ceiling": 200000}
// An upload supplies the brief; explicit context/question fields override
// it. Throws ValidationFailed whose detail names the field.
RunRequest parse_run_request(const Json& body);
RunRequest parse_run_request_text(std::string_view body_text);

}  // namespace evsynth::service
