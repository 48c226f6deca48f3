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

#include "evsynth/integration/integration.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <future>
#include <set>

#include "evsynth/analysis/model_call.hpp"
#include "evsynth/analysis/verdict.hpp"
#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/validation.hpp"
#include "evsynth/llm/prompt.hpp"
#include "evsynth/llm/roles.hpp"

namespace evsynth::integration {

using analysis::AnalysisOutcome;
using analysis::OutcomeStatus;
using ledger::EventKind;

ConsolidatedEvidence consolidate(std::span<const AnalysisOutcome> outcomes,
                                 const ResearchBrief& brief,
                                 std::span<const SourceId> configured) {
  std::set<SourceId> seen;
  for (const auto& o : outcomes) {
    if (!seen.insert(o.final.source).second) {
      throw Error(ErrorCode::DuplicateSource,
                  std::string(to_string(o.final.source)),
                  "more than one analysis for this source");
    }
    if (std::find(configured.begin(), configured.end(), o.final.source) ==
        configured.end()) {
      throw Error(ErrorCode::PreconditionViolated,
                  std::string(to_string(o.final.source)),
                  "analysis for a source that is not configured");
    }
  }
  ConsolidatedEvidence c{brief, {}, {}};
  for (auto source : configured) {
    auto it = std::find_if(outcomes.begin(), outcomes.end(), [&](const auto& o) {
      return o.final.source == source;
    });
    if (it == outcomes.end()) {
      throw Error(ErrorCode::MissingSource, std::string(to_string(source)),
                  "no analysis for this source");
    }
    c.entries.push_back({source, it->final, it->iterations_used,
                         it->status == OutcomeStatus::ExhaustedIterations});
    for (const auto& cite : it->final.citations) {
      c.citations.emplace(cite.evidence_id, cite.url);
    }
  }
  return c;
}

std::string render_consolidated(const ConsolidatedEvidence& c) {
  std::string out = "Upstream analyses: " + std::to_string(c.entries.size()) +
                    " sources\n";
  for (const auto& e : c.entries) {
    const auto& a = e.analysis;
    out += "\n== " + std::string(to_string(e.source)) + " analysis (";
    if (e.unapproved) {
      out += "unapproved upstream analysis: no evaluator approval after " +
             std::to_string(e.iterations_used) + " iterations";
    } else {
      out += "approved at iteration " + std::to_string(e.iterations_used);
    }
    out += ") ==\nSummary: " + a.summary + "\nRelevance by gene:\n";
    if (a.relevance_explanations.empty()) out += "- (none)\n";
    for (const auto& r : a.relevance_explanations) {
      out += "- " + r.gene + ": " + r.explanation + "\n";
    }
    out += "Conclusions:\n";
    if (a.conclusions.empty()) out += "- (none)\n";
    for (const auto& s : a.conclusions) out += "- " + s + "\n";
    out += "Cited evidence:\n";
    if (a.citations.empty()) out += "- (none)\n";
    for (const auto& cite : a.citations) {
      out += "- [" + cite.evidence_id + "] " + cite.url.value_or("(no link)") +
             "\n";
    }
  }
  out += "\n== Citable evidence ids ==\n";
  if (c.citations.empty()) out += "- (none)\n";
  for (const auto& [id, url] : c.citations) {
    out += "- " + id + " " + url.value_or("(no link)") + "\n";
  }
  return out;
}

std::string_view to_string(FeedbackOrigin o) noexcept {
  switch (o) {
    case FeedbackOrigin::ContentValidator: return "ContentValidator";
    case FeedbackOrigin::CriticalReviewer: return "CriticalReviewer";
    case FeedbackOrigin::RelevanceValidator: return "RelevanceValidator";
    case FeedbackOrigin::StructureCheck: return "StructureCheck";
  }
  return "";
}

std::string FeedbackItem::labeled() const {
  if (origin == FeedbackOrigin::StructureCheck) return bullet;
  return "[" + std::string(to_string(origin)) + "] " + bullet;
}

namespace {

llm::AgentRole role_of(FeedbackOrigin reviewer) {
  switch (reviewer) {
    case FeedbackOrigin::ContentValidator:
      return llm::AgentRole::ContentValidator;
    case FeedbackOrigin::CriticalReviewer:
      return llm::AgentRole::CriticalReviewer;
    case FeedbackOrigin::RelevanceValidator:
      return llm::AgentRole::RelevanceValidator;
    case FeedbackOrigin::StructureCheck:
      break;
  }
  throw Error(ErrorCode::PreconditionViolated, "StructureCheck",
              "not a reviewer");
}

}  // namespace

std::string agent_id(FeedbackOrigin reviewer) {
  if (reviewer == FeedbackOrigin::StructureCheck) {
    return std::string(agents::kIntegrationOrchestrator);
  }
  return llm::make_role(role_of(reviewer)).agent_id;
}

std::string compose_report(const ConsolidatedEvidence& c,
                           const std::vector<FeedbackItem>* feedback,
                           int version, std::string_view previous_draft,
                           llm::LlmGateway& gateway, ledger::EventSink& sink) {
  if (version < 1) {
    throw Error(ErrorCode::PreconditionViolated, "version",
                "report versions start at 1");
  }
  if (version == 1 && feedback) {
    throw Error(ErrorCode::PreconditionViolated, "feedback",
                "the first draft takes no feedback");
  }
  if (version >= 2 && (!feedback || feedback->empty())) {
    throw Error(ErrorCode::PreconditionViolated, "feedback",
                "a revision needs the previous round's feedback");
  }
  const auto role = llm::make_role(llm::AgentRole::ReportComposer);
  const auto evidence = render_consolidated(c);
  llm::PromptEnvelope envelope;
  if (version == 1) {
    envelope = llm::build_initial_prompt(role, c.brief, evidence);
  } else {
    std::vector<std::string> bullets;
    for (const auto& f : *feedback) bullets.push_back(f.labeled());
    envelope = llm::build_revision_prompt(role, c.brief, evidence,
                                          previous_draft, bullets, version);
  }
  return analysis::call_model(gateway, sink, envelope).text;
}

std::vector<ReviewOutcome> review_parallel(const IntegratedReport& report,
                                           const ConsolidatedEvidence& c,
                                           llm::LlmGateway& gateway,
                                           ledger::EventSink& sink) {
  const auto evidence = render_consolidated(c);
  const auto under_review = to_json(report).dump(2);

  auto review_one = [&](FeedbackOrigin reviewer) {
    const auto role = llm::make_role(role_of(reviewer));
    const auto start = std::chrono::steady_clock::now();
    ReviewOutcome out{reviewer, Verdict::approved(), 0.0};
    try {
      const auto envelope = llm::build_review_prompt(
          role, c.brief, evidence, under_review, report.version);
      const auto reply = analysis::call_model(gateway, sink, envelope);
      try {
        out.verdict = analysis::parse_verdict(reply.text);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnrecognizedVerdict) throw;
        sink.append({role.agent_id, EventKind::Anomaly, e.what(), std::nullopt,
                     std::nullopt, report.version});
        out.verdict = Verdict::not_approved(
            {std::string(analysis::kUnparseableFeedback)});
      }
    } catch (const std::exception& e) {
      // call_model has already logged the anomaly.
      out.verdict = Verdict::not_approved(
          {"reviewer unavailable (" + std::string(e.what()) +
           "); review could not be completed"});
    }
    out.latency_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    sink.append({role.agent_id, EventKind::Verdict,
                 to_json(out.verdict).dump(), std::nullopt, std::nullopt,
                 report.version});
    return out;
  };

  std::vector<std::future<ReviewOutcome>> pending;
  for (auto reviewer : kReviewers) {
    pending.push_back(std::async(std::launch::async, review_one, reviewer));
  }
  std::vector<ReviewOutcome> outcomes;
  for (auto& f : pending) outcomes.push_back(f.get());
  return outcomes;
}

ConsensusResult consensus(std::span<const ReviewOutcome> outcomes) {
  if (outcomes.size() != kReviewers.size()) {
    throw Error(ErrorCode::WrongArity, std::to_string(outcomes.size()),
                "expected exactly one outcome per reviewer");
  }
  ConsensusResult result{true, {}};
  for (auto reviewer : kReviewers) {
    const auto n = std::count_if(outcomes.begin(), outcomes.end(),
                                 [&](const auto& o) { return o.reviewer == reviewer; });
    if (n != 1) {
      throw Error(ErrorCode::WrongArity, std::string(to_string(reviewer)),
                  "expected exactly one outcome per reviewer");
    }
    const auto& o = *std::find_if(
        outcomes.begin(), outcomes.end(),
        [&](const auto& x) { return x.reviewer == reviewer; });
    if (o.verdict.is_approved()) continue;
    result.approved = false;
    for (const auto& b : o.verdict.feedback()) {
      result.combined_feedback.push_back({reviewer, b});
    }
  }
  return result;
}

IntegrationResult run_integration(const ConsolidatedEvidence& c,
                                  const IntegrationConfig& config,
                                  llm::LlmGateway& gateway,
                                  ledger::EventSink& sink) {
  if (config.max_iterations < 1) {
    throw Error(ErrorCode::ValidationFailed, "max_iterations",
                "must be at least 1");
  }
  const std::string orchestrator(agents::kIntegrationOrchestrator);
  std::size_t flagged = 0;
  for (const auto& e : c.entries) flagged += e.unapproved ? 1 : 0;
  sink.append({orchestrator, EventKind::Status,
               "integration started: " + std::to_string(c.entries.size()) +
                   " analyses (" + std::to_string(flagged) +
                   " unapproved), " + std::to_string(c.citations.size()) +
                   " citable evidence ids",
               std::nullopt, std::nullopt, std::nullopt});

  IntegrationResult result;
  std::optional<IntegratedReport> last_valid;
  std::vector<FeedbackItem> feedback;
  std::string previous;
  bool approved = false;

  for (int v = 1; v <= config.max_iterations && !approved; ++v) {
    result.rounds = v;
    const auto draft = compose_report(c, v == 1 ? nullptr : &feedback, v,
                                      previous, gateway, sink);
    previous = draft;
    auto checked = check_report_structure(draft, c.citations, v);
    if (!checked.ok()) {
      feedback.clear();
      for (auto& b : issues_to_feedback(checked.issues)) {
        feedback.push_back({FeedbackOrigin::StructureCheck, std::move(b)});
      }
      std::vector<std::string> bullets;
      for (const auto& f : feedback) bullets.push_back(f.bullet);
      sink.append({orchestrator, EventKind::Verdict,
                   to_json(Verdict::not_approved(std::move(bullets))).dump(),
                   std::nullopt, std::nullopt, v});
      continue;
    }
    last_valid = *checked.value;
    const auto reviews = review_parallel(*last_valid, c, gateway, sink);
    auto decision = consensus(reviews);
    approved = decision.approved;
    feedback = std::move(decision.combined_feedback);
    sink.append({orchestrator, EventKind::Status,
                 "round " + std::to_string(v) + ": " +
                     (approved ? std::string("unanimous approval")
                               : std::to_string(feedback.size()) +
                                     " feedback bullet(s) from reviewers"),
                 std::nullopt, std::nullopt, v});
  }

  result.status.state =
      approved ? RunState::Completed : RunState::ExhaustedIterations;
  result.status.iterations["integration"] = result.rounds;
  if (last_valid) {
    result.report = *last_valid;
  } else {
    result.report.version = result.rounds;
  }
  sink.append({orchestrator, EventKind::Status,
               "integration " + std::string(to_string(result.status.state)) +
                   " at report version " +
                   std::to_string(result.report.version),
               std::nullopt, std::nullopt, result.rounds});
  return result;
}

}  // namespace evsynth::integration
