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
#include <vector>

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/types.hpp"
#include "evsynth/ledger/event.hpp"
#include "evsynth/llm/gateway.hpp"

namespace evsynth::analysis {

inline constexpr int kDefaultMaxIterations = 3;

struct PipelineConfig {
  int max_iterations = kDefaultMaxIterations;
  SourceId source = SourceId::Civic;

  // Throws ValidationFailed("max_iterations") when below 1.
  void validate() const;
};

enum class OutcomeStatus { Approved, ExhaustedIterations };

std::string_view to_string(OutcomeStatus s) noexcept;

struct AnalysisOutcome {
  StructuredAnalysis final;
  OutcomeStatus status = OutcomeStatus::Approved;
  int iterations_used = 0;
  // One verdict per iteration, synthetic structure-check rejections included.
  std::vector<Verdict> verdict_history;
};

// The per-source BioExpert/Evaluator revision loop. The orchestrator side
// (validation, feedback routing, status) is plain code; only the two expert
// roles reach the gateway. Gateway errors propagate.
//
// If the loop ends without approval, `final` is the last analysis that passed
// structural validation, or a placeholder whose summary explains that none
// did.
AnalysisOutcome run_analysis(const ResearchBrief& brief,
                             const EvidenceBundle& bundle,
                             const PipelineConfig& config,
                             llm::LlmGateway& gateway, ledger::EventSink& sink);

// Per-source output document handed to the integration stage.
Json to_json(const AnalysisOutcome& outcome);
AnalysisOutcome outcome_from_json(const Json& j);

}  // namespace evsynth::analysis
