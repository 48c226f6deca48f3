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

#include <string_view>

#include "evsynth/domain/types.hpp"

namespace evsynth::analysis {

// Feedback used when a critic's reply carries no recognizable decision.
inline constexpr std::string_view kUnparseableFeedback =
    "evaluator output unparseable; restate verdict";

// Feedback used when a critic rejects without saying why.
inline constexpr std::string_view kNoReasonFeedback =
    "reviewer rejected the output without feedback; re-check accuracy, "
    "citations and completeness";

// Reads the leading decision of a critic reply, case-insensitively after
// trimming. "NOT APPROVED" is tested first. Feedback is every bullet line
// (-, * or •) after it; an unbulleted line continues the previous bullet, and
// unbulleted text with no bullets at all becomes one bullet.
// Throws UnrecognizedVerdict otherwise.
Verdict parse_verdict(std::string_view raw);

}  // namespace evsynth::analysis
