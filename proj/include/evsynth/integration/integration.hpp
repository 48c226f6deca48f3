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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evsynth/analysis/pipeline.hpp"
#include "evsynth/domain/types.hpp"
#include "evsynth/ledger/event.hpp"
#include "evsynth/llm/gateway.hpp"

namespace evsynth::integration {

struct ConsolidatedEntry {
  SourceId source = SourceId::Civic;
  StructuredAnalysis analysis;
  int iterations_used = 0;
  bool unapproved = false;  // upstream loop hit its iteration limit
};

struct ConsolidatedEvidence {
  ResearchBrief brief;
  std::vector<ConsolidatedEntry> entries;  // configured source order
  CitationIndex citations;                 // union over entries
};

// Deterministic merge of the per-source outputs. Throws DuplicateSource if a
// source appears twice and MissingSource (naming the first absent source, in
// configured order) if one is absent.
ConsolidatedEvidence consolidate(
    std::span<const analysis::AnalysisOutcome> outcomes,
    const ResearchBrief& brief,
    std::span<const SourceId> configured = kAllSources);

// Text block given to the composer and reviewers in place of raw evidence.
std::string render_consolidated(const ConsolidatedEvidence& c);

enum class FeedbackOrigin {
  ContentValidator,
  CriticalReviewer,
  RelevanceValidator,
  StructureCheck,
};

std::string_view to_string(FeedbackOrigin o) noexcept;

inline constexpr std::array<FeedbackOrigin, 3> kReviewers = {
    FeedbackOrigin::ContentValidator, FeedbackOrigin::CriticalReviewer,
    FeedbackOrigin::RelevanceValidator};

struct FeedbackItem {
  FeedbackOrigin origin = FeedbackOrigin::StructureCheck;
  std::string bullet;

  // "[CriticalReviewer] bullet". Structure-check bullets already carry their
  // own tag and are returned unchanged.
  std::string labeled() const;

  friend bool operator==(const FeedbackItem&, const FeedbackItem&) = default;
};

std::string agent_id(FeedbackOrigin reviewer);

// Version 1 takes no feedback; later versions need feedback and the previous
// draft (PreconditionViolated otherwise). Returns the composer's raw text.
std::string compose_report(const ConsolidatedEvidence& c,
                           const std::vector<FeedbackItem>* feedback,
                           int version, std::string_view previous_draft,
                           llm::LlmGateway& gateway, ledger::EventSink& sink);

struct ReviewOutcome {
  FeedbackOrigin reviewer = FeedbackOrigin::ContentValidator;
  Verdict verdict = Verdict::approved();
  double latency_seconds = 0.0;
};

// Runs the three reviewers concurrently on a validated report and waits for
// all of them. A reviewer whose call fails or whose reply cannot be parsed is
// recorded as NotApproved with an anomaly bullet.
std::vector<ReviewOutcome> review_parallel(const IntegratedReport& report,
                                           const ConsolidatedEvidence& c,
                                           llm::LlmGateway& gateway,
                                           ledger::EventSink& sink);

struct ConsensusResult {
  bool approved = false;
  std::vector<FeedbackItem> combined_feedback;
};

// Unanimity gate. Throws WrongArity unless given exactly one outcome per
// reviewer. Feedback is concatenated in kReviewers order.
ConsensusResult consensus(std::span<const ReviewOutcome> outcomes);

struct IntegrationConfig {
  int max_iterations = analysis::kDefaultMaxIterations;
};

struct IntegrationResult {
  IntegratedReport report;
  RunStatus status;  // Completed or ExhaustedIterations; "integration" count
  int rounds = 0;
};

// compose -> structure check -> parallel review -> consensus, until approved
// or out of rounds. An exhausted loop returns the highest version that passed
// the structure check, or an empty report at the last version if none did.
// Throws if the composer is unreachable.
IntegrationResult run_integration(const ConsolidatedEvidence& c,
                                  const IntegrationConfig& config,
                                  llm::LlmGateway& gateway,
                                  ledger::EventSink& sink);

}  // namespace evsynth::integration
