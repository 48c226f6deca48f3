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

#include "evsynth/llm/prompt.hpp"

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"

namespace evsynth::llm {

namespace {

std::string system_message(const RoleSpec& role) {
  return role.instructions + "\n\n" + std::string(kAntiHallucinationClause);
}

void append_block(std::string& out, std::string_view heading,
                  std::string_view body) {
  if (!out.empty()) out += "\n\n";
  out += heading;
  out += "\n";
  out += body.empty() ? std::string_view("(none provided)") : body;
}

std::string base_user_message(const ResearchBrief& brief,
                              std::string_view evidence) {
  std::string out;
  append_block(out, blocks::kContext, brief.context);
  append_block(out, blocks::kQuestion, brief.question);
  append_block(out, blocks::kGenes, brief.genes.render());
  append_block(out, blocks::kEvidence, evidence);
  return out;
}

PromptEnvelope finish(PromptEnvelope env, std::size_t budget) {
  const auto tokens = env.token_estimate();
  if (tokens > budget) {
    throw Error(ErrorCode::EvidenceTooLarge, env.agent_id,
                "prompt needs " + std::to_string(tokens) +
                    " tokens, budget is " + std::to_string(budget));
  }
  return env;
}

}  // namespace

std::size_t PromptEnvelope::token_estimate() const noexcept {
  return text::count_words(system_message) + text::count_words(user_message);
}

PromptEnvelope build_initial_prompt(const RoleSpec& role,
                                    const ResearchBrief& brief,
                                    std::string_view evidence,
                                    std::size_t budget) {
  return finish({role.agent_id, system_message(role),
                 base_user_message(brief, evidence), IterationMode::Initial, 1},
                budget);
}

PromptEnvelope build_revision_prompt(const RoleSpec& role,
                                     const ResearchBrief& brief,
                                     std::string_view evidence,
                                     std::string_view previous,
                                     const std::vector<std::string>& feedback,
                                     int iteration, std::size_t budget) {
  if (iteration < 2) {
    throw Error(ErrorCode::PreconditionViolated, "iteration",
                "revision prompts start at iteration 2");
  }
  if (feedback.empty()) {
    throw Error(ErrorCode::PreconditionViolated, "feedback",
                "a revision needs at least one feedback bullet");
  }
  auto user = base_user_message(brief, evidence);
  append_block(user, blocks::kPrevious, previous);
  std::string bullets;
  for (const auto& b : feedback) {
    if (!bullets.empty()) bullets += "\n";
    bullets += "- " + b;
  }
  append_block(user, blocks::kFeedback, bullets);
  append_block(user, blocks::kRevisionTask,
               "Revise your previous output. Address each feedback point "
               "above while preserving any valid content from prior "
               "iterations. Return the complete revised output in the "
               "required format.");
  return finish({role.agent_id, system_message(role), std::move(user),
                 IterationMode::Revision, iteration},
                budget);
}

PromptEnvelope build_review_prompt(const RoleSpec& role,
                                   const ResearchBrief& brief,
                                   std::string_view evidence,
                                   std::string_view under_review, int iteration,
                                   std::size_t budget) {
  if (iteration < 1) {
    throw Error(ErrorCode::PreconditionViolated, "iteration",
                "iterations are numbered from 1");
  }
  auto user = base_user_message(brief, evidence);
  append_block(user, blocks::kUnderReview, under_review);
  return finish({role.agent_id, system_message(role), std::move(user),
                 IterationMode::Initial, iteration},
                budget);
}

bool has_revision_blocks(std::string_view user_message) noexcept {
  return user_message.find(blocks::kPrevious) != std::string_view::npos ||
         user_message.find(blocks::kFeedback) != std::string_view::npos;
}

}  // namespace evsynth::llm
