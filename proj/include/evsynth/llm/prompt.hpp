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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evsynth/domain/types.hpp"
#include "evsynth/llm/roles.hpp"

namespace evsynth::llm {

enum class IterationMode { Initial, Revision };

inline constexpr std::size_t kDefaultPromptBudget = 100'000;

// Section headings of the user message, in the order they appear.
namespace blocks {
inline constexpr std::string_view kContext = "### ANALYSIS CONTEXT";
inline constexpr std::string_view kQuestion = "### RESEARCH QUESTION";
inline constexpr std::string_view kGenes = "### GENE SET";
inline constexpr std::string_view kEvidence = "### EVIDENCE";
inline constexpr std::string_view kUnderReview = "### OUTPUT UNDER REVIEW";
inline constexpr std::string_view kPrevious = "### PREVIOUS OUTPUT";
inline constexpr std::string_view kFeedback = "### FEEDBACK TO ADDRESS";
inline constexpr std::string_view kRevisionTask = "### REVISION INSTRUCTIONS";
}  // namespace blocks

struct PromptEnvelope {
  std::string agent_id;
  std::string system_message;
  std::string user_message;
  IterationMode mode = IterationMode::Initial;
  int iteration = 1;

  // Whitespace tokens of both messages; the unit of the prompt budget.
  std::size_t token_estimate() const noexcept;
};

// System message = role instructions + anti-hallucination clause. User message
// = context, question, gene set, evidence. Throws EvidenceTooLarge when the
// envelope exceeds `budget` tokens.
PromptEnvelope build_initial_prompt(const RoleSpec& role,
                                    const ResearchBrief& brief,
                                    std::string_view evidence,
                                    std::size_t budget = kDefaultPromptBudget);

// Initial layout plus the previous output, every feedback bullet, and the
// instruction to address each point while preserving valid content. Requires
// iteration >= 2 and non-empty feedback (PreconditionViolated otherwise).
PromptEnvelope build_revision_prompt(const RoleSpec& role,
                                     const ResearchBrief& brief,
                                     std::string_view evidence,
                                     std::string_view previous,
                                     const std::vector<std::string>& feedback,
                                     int iteration,
                                     std::size_t budget = kDefaultPromptBudget);

// Review package for critic roles: initial layout plus the output to judge.
// `iteration` is the round of the output under review.
PromptEnvelope build_review_prompt(const RoleSpec& role,
                                   const ResearchBrief& brief,
                                   std::string_view evidence,
                                   std::string_view under_review, int iteration,
                                   std::size_t budget = kDefaultPromptBudget);

bool has_revision_blocks(std::string_view user_message) noexcept;

}  // namespace evsynth::llm
