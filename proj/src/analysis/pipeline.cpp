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

#include "evsynth/analysis/pipeline.hpp"

#include <optional>

#include "evsynth/analysis/model_call.hpp"
#include "evsynth/analysis/verdict.hpp"
#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"
#include "evsynth/domain/validation.hpp"
#include "evsynth/llm/prompt.hpp"
#include "evsynth/llm/roles.hpp"
#include "evsynth/sources/evidence_text.hpp"

namespace evsynth::analysis {

using ledger::EventKind;

void PipelineConfig::validate() const {
  if (max_iterations < 1) {
    throw Error(ErrorCode::ValidationFailed, "max_iterations",
                "must be at least 1");
  }
}

std::string_view to_string(OutcomeStatus s) noexcept {
  return s == OutcomeStatus::Approved ? "approved" : "exhausted_iterations";
}

namespace {

StructuredAnalysis placeholder_analysis(SourceId source, int iterations) {
  StructuredAnalysis a;
  a.source = source;
  a.iteration = iterations;
  a.summary = "No " + std::string(to_string(source)) +
              " analysis passed structural validation within " +
              std::to_string(iterations) + " iterations.";
  return a;
}

}  // namespace

AnalysisOutcome run_analysis(const ResearchBrief& brief,
                             const EvidenceBundle& bundle,
                             const PipelineConfig& config,
                             llm::LlmGateway& gateway,
                             ledger::EventSink& sink) {
  config.validate();
  if (bundle.source() != config.source) {
    throw Error(ErrorCode::PreconditionViolated,
                std::string(to_string(bundle.source())),
                "bundle does not belong to the configured source");
  }
  const auto orchestrator = agents::orchestrator(config.source);
  const auto expert = llm::make_role(llm::AgentRole::BioExpert, config.source);
  const auto evaluator = llm::make_role(llm::AgentRole::Evaluator, config.source);
  const auto evidence = sources::render_evidence_block(bundle);

  sink.append({orchestrator, EventKind::Status,
               "analysis started: " + std::to_string(bundle.items().size()) +
                   " evidence items, " + std::to_string(bundle.total_words()) +
                   " words",
               std::nullopt, std::nullopt, std::nullopt});

  AnalysisOutcome out;
  std::optional<StructuredAnalysis> last_valid;
  std::string previous;
  std::vector<std::string> feedback;

  for (int k = 1; k <= config.max_iterations; ++k) {
    const auto envelope =
        k == 1 ? llm::build_initial_prompt(expert, brief, evidence)
               : llm::build_revision_prompt(expert, brief, evidence, previous,
                                            feedback, k);
    const auto draft = call_model(gateway, sink, envelope);
    out.iterations_used = k;

    auto checked =
        check_structured_analysis(draft.text, bundle, brief.genes, k);
    std::optional<Verdict> verdict;
    std::string verdict_agent = orchestrator;
    if (!checked.ok()) {
      verdict = Verdict::not_approved(issues_to_feedback(checked.issues));
    } else {
      last_valid = std::move(*checked.value);
      const auto review =
          llm::build_review_prompt(evaluator, brief, evidence, draft.text, k);
      const auto reply = call_model(gateway, sink, review);
      verdict_agent = evaluator.agent_id;
      try {
        verdict = parse_verdict(reply.text);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnrecognizedVerdict) throw;
        sink.append({evaluator.agent_id, EventKind::Anomaly, e.what(),
                     std::nullopt, std::nullopt, k});
        verdict = Verdict::not_approved({std::string(kUnparseableFeedback)});
      }
    }
    sink.append({verdict_agent, EventKind::Verdict, to_json(*verdict).dump(),
                 std::nullopt, std::nullopt, k});
    out.verdict_history.push_back(*verdict);
    if (verdict->is_approved()) {
      out.status = OutcomeStatus::Approved;
      out.final = *last_valid;
      break;
    }
    previous = draft.text;
    feedback = verdict->feedback();
    out.status = OutcomeStatus::ExhaustedIterations;
  }

  if (out.status == OutcomeStatus::ExhaustedIterations) {
    out.final = last_valid ? *last_valid
                           : placeholder_analysis(config.source,
                                                  out.iterations_used);
  }
  sink.append({orchestrator, EventKind::Status,
               "analysis " + std::string(to_string(out.status)) + " after " +
                   std::to_string(out.iterations_used) + " iteration(s)",
               std::nullopt, std::nullopt, out.iterations_used});
  return out;
}

Json to_json(const AnalysisOutcome& o) {
  Json history = Json::array();
  for (const auto& v : o.verdict_history) history.push_back(evsynth::to_json(v));
  return Json{{"source_id", to_string(o.final.source)},
              {"status", to_string(o.status)},
              {"iterations_used", o.iterations_used},
              {"verdict_history", std::move(history)},
              {"analysis", evsynth::to_json(o.final)}};
}

AnalysisOutcome outcome_from_json(const Json& j) {
  AnalysisOutcome o;
  try {
    const auto status = j.at("status").get<std::string>();
    if (status == "approved") {
      o.status = OutcomeStatus::Approved;
    } else if (status == "exhausted_iterations") {
      o.status = OutcomeStatus::ExhaustedIterations;
    } else {
      throw Error(ErrorCode::ValidationFailed, "status",
                  "unknown outcome status '" + status + "'");
    }
    o.iterations_used = j.at("iterations_used").get<int>();
    for (const auto& v : j.at("verdict_history")) {
      const auto decision = v.at("decision").get<std::string>();
      o.verdict_history.push_back(
          decision == "APPROVED"
              ? Verdict::approved()
              : Verdict::not_approved(
                    v.at("feedback").get<std::vector<std::string>>()));
    }
    o.final = analysis_from_json(j.at("analysis"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ValidationFailed, "analysis outcome", e.what());
  }
  return o;
}

}  // namespace evsynth::analysis
