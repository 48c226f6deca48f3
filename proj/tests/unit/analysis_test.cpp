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

#include <gtest/gtest.h>

#include "evsynth/analysis/model_call.hpp"
#include "evsynth/analysis/pipeline.hpp"
#include "evsynth/analysis/verdict.hpp"
#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"
#include "evsynth/domain/validation.hpp"
#include "test_support.hpp"

namespace evsynth::analysis {
namespace {

using ledger::EventKind;
using testing::analysis_text;
using testing::brief_for;
using testing::bundle_for;
using testing::error_code;
using testing::Gen;
using testing::MemorySink;
using testing::rejection;
using testing::scripted;

TEST(ParseVerdictTest, SpecExamples) {
  EXPECT_EQ(parse_verdict("APPROVED"), Verdict::approved());
  auto v = parse_verdict(
      "NOT APPROVED\n- cite CIViC item for BRAF claim\n- clarify summary");
  EXPECT_EQ(v, Verdict::not_approved(
                   {"cite CIViC item for BRAF claim", "clarify summary"}));
  EXPECT_EQ(parse_verdict("  approved \xE2\x80\x94 nice work"),
            Verdict::approved());
  EXPECT_EQ(error_code([] { parse_verdict("maybe fine"); }),
            ErrorCode::UnrecognizedVerdict);
}

TEST(ParseVerdictTest, BulletStylesAndRemainders) {
  EXPECT_EQ(parse_verdict("not approved\n* a\n\xE2\x80\xA2 b\n-c").feedback(),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(parse_verdict("NOT APPROVED: the summary is vague").feedback(),
            std::vector<std::string>{"the summary is vague"});
  EXPECT_EQ(parse_verdict("NOT APPROVED\nfix the\ncitations").feedback(),
            std::vector<std::string>{"fix the citations"});
  EXPECT_EQ(parse_verdict("NOT APPROVED\n- first\n  continued").feedback(),
            std::vector<std::string>{"first continued"});
  EXPECT_EQ(parse_verdict("NOT APPROVED").feedback(),
            std::vector<std::string>{std::string(kNoReasonFeedback)});
  EXPECT_EQ(error_code([] { parse_verdict(""); }),
            ErrorCode::UnrecognizedVerdict);
}

TEST(ParseVerdictTest, PropertyBulletsRoundTrip) {
  Gen gen(3);
  for (int i = 0; i < 500; ++i) {
    const auto bullets = gen.bullets(1, 8);
    std::string raw = gen.coin() ? "Not Approved" : "NOT APPROVED";
    for (const auto& b : bullets) {
      raw += gen.coin() ? "\n- " : "\r\n* ";
      raw += b;
      if (gen.coin(0.2)) raw += "\n";
    }
    ASSERT_EQ(parse_verdict(raw).feedback(), bullets) << raw;
  }
}

const std::vector<std::string> kGenes{"BRAF", "KRAS", "TP53"};

std::string valid_civic() {
  return analysis_text(kGenes, {"civic:1", "civic:2"});
}

// Analysis JSON without the "summary" section.
std::string missing_summary() {
  auto j = Json::parse(valid_civic());
  j.erase("summary");
  return j.dump();
}

struct Harness {
  std::shared_ptr<llm::ScriptedBackend> backend;
  std::unique_ptr<llm::LlmGateway> gateway;
  MemorySink sink;

  explicit Harness(const Json& script)
      : backend(scripted(script)), gateway(testing::gateway_for(backend)) {}

  AnalysisOutcome run(int max_iterations = kDefaultMaxIterations,
                      SourceId source = SourceId::Civic) {
    return run_analysis(brief_for(kGenes), bundle_for(source, kGenes),
                        PipelineConfig{max_iterations, source}, *gateway, sink);
  }

  std::size_t calls(const std::string& agent) const {
    auto log = gateway->call_log();
    return static_cast<std::size_t>(std::count(log.begin(), log.end(), agent));
  }
};

TEST(RunAnalysisTest, ApprovedAtFirstIteration) {
  Harness h({{"civic.bioexpert/1", valid_civic()},
             {"civic.evaluator/1", "APPROVED"}});
  auto out = h.run();
  EXPECT_EQ(out.status, OutcomeStatus::Approved);
  EXPECT_EQ(out.iterations_used, 1);
  EXPECT_EQ(out.verdict_history, std::vector<Verdict>{Verdict::approved()});
  EXPECT_EQ(out.final.summary, "Summary of the evidence.");
  ASSERT_EQ(out.final.citations.size(), 2u);
  EXPECT_EQ(out.final.citations[0].url, "https://example.org/civic:1");
}

TEST(RunAnalysisTest, ExhaustsAfterThreeRejections) {
  Harness h({{"civic.bioexpert/*", valid_civic()},
             {"civic.evaluator/*", "NOT APPROVED\n- x"}});
  auto out = h.run(3);
  EXPECT_EQ(out.status, OutcomeStatus::ExhaustedIterations);
  EXPECT_EQ(out.iterations_used, 3);
  EXPECT_EQ(h.calls("civic.bioexpert"), 3u);
  EXPECT_EQ(h.calls("civic.evaluator"), 3u);
  for (const auto& v : out.verdict_history) {
    EXPECT_EQ(v, Verdict::not_approved({"x"}));
  }
  // The last valid analysis is kept.
  EXPECT_EQ(out.final.iteration, 3);
  EXPECT_EQ(out.final.summary, "Summary of the evidence.");
}

// Hand-enumerated trace for: v1 lacks a section, v2 valid, evaluator approves.
TEST(RunAnalysisTest, StructureFailureShortCircuitsTrace) {
  Harness h({{"civic.bioexpert/1", missing_summary()},
             {"civic.bioexpert/2", valid_civic()},
             {"civic.evaluator/2", "APPROVED"}});
  auto out = h.run();
  EXPECT_EQ(out.status, OutcomeStatus::Approved);
  EXPECT_EQ(out.iterations_used, 2);
  EXPECT_EQ(h.calls("civic.evaluator"), 1u);

  struct Step {
    const char* agent;
    EventKind kind;
    std::optional<int> iteration;
  };
  const std::vector<Step> expected{
      {"civic.orchestrator", EventKind::Status, std::nullopt},
      {"civic.bioexpert", EventKind::Prompt, 1},
      {"civic.bioexpert", EventKind::Response, 1},
      {"civic.orchestrator", EventKind::Verdict, 1},
      {"civic.bioexpert", EventKind::Prompt, 2},
      {"civic.bioexpert", EventKind::Response, 2},
      {"civic.evaluator", EventKind::Prompt, 2},
      {"civic.evaluator", EventKind::Response, 2},
      {"civic.evaluator", EventKind::Verdict, 2},
      {"civic.orchestrator", EventKind::Status, 2},
  };
  const auto events = h.sink.events();
  ASSERT_EQ(events.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(events[i].agent_id, expected[i].agent) << i;
    EXPECT_EQ(events[i].kind, expected[i].kind) << i;
    EXPECT_EQ(events[i].iteration, expected[i].iteration) << i;
  }

  const auto prompts = h.sink.prompts("civic.bioexpert");
  ASSERT_EQ(prompts.size(), 2u);
  const auto synthetic = out.verdict_history.front().feedback();
  ASSERT_EQ(synthetic.size(), 1u);
  EXPECT_NE(synthetic[0].find("summary"), std::string::npos);
  EXPECT_NE(prompts[1].find(synthetic[0]), std::string::npos);
  EXPECT_NE(prompts[1].find(missing_summary()), std::string::npos);
}

TEST(RunAnalysisTest, UnparseableVerdictBecomesFeedbackAndAnomaly) {
  Harness h({{"civic.bioexpert/*", valid_civic()},
             {"civic.evaluator/1", "looks fine to me"},
             {"civic.evaluator/2", "APPROVED"}});
  auto out = h.run();
  EXPECT_EQ(out.iterations_used, 2);
  EXPECT_EQ(out.verdict_history[0],
            Verdict::not_approved({std::string(kUnparseableFeedback)}));
  const auto events = h.sink.events();
  EXPECT_EQ(std::count_if(events.begin(), events.end(),
                          [](const auto& e) {
                            return e.kind == EventKind::Anomaly &&
                                   e.agent_id == "civic.evaluator";
                          }),
            1);
  EXPECT_NE(h.sink.prompts("civic.bioexpert")[1].find(kUnparseableFeedback),
            std::string::npos);
}

TEST(RunAnalysisTest, NeverValidGivesPlaceholder) {
  Harness h(Json{{"pharmgkb.bioexpert/*", "not json at all"}});
  auto out = h.run(2, SourceId::PharmGkb);
  EXPECT_EQ(out.status, OutcomeStatus::ExhaustedIterations);
  EXPECT_EQ(out.iterations_used, 2);
  EXPECT_EQ(h.calls("pharmgkb.evaluator"), 0u);
  EXPECT_EQ(out.final.summary,
            "No PHARMGKB analysis passed structural validation within 2 "
            "iterations.");
  EXPECT_TRUE(out.final.citations.empty());
}

TEST(RunAnalysisTest, EmptyBundleStillRunsTheLoop) {
  auto backend = scripted(
      {{"enrichment.bioexpert/1", analysis_text({}, {})},
       {"enrichment.evaluator/1", "APPROVED"}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  auto empty = EvidenceBundle::make(SourceId::Enrichment, {}, testing::at_ms(0));
  auto out = run_analysis(brief_for(kGenes), empty,
                          PipelineConfig{3, SourceId::Enrichment}, *gw, sink);
  EXPECT_EQ(out.status, OutcomeStatus::Approved);
  EXPECT_NE(sink.prompts("enrichment.bioexpert")[0].find("No evidence items"),
            std::string::npos);
}

TEST(RunAnalysisTest, PreconditionsAndGatewayErrors) {
  Harness h(Json{{"civic.bioexpert/*", valid_civic()}});
  EXPECT_EQ(error_code([&] { h.run(0); }), ErrorCode::ValidationFailed);
  EXPECT_EQ(error_code([&] {
              run_analysis(brief_for(kGenes),
                           bundle_for(SourceId::PharmGkb, kGenes),
                           PipelineConfig{3, SourceId::Civic}, *h.gateway,
                           h.sink);
            }),
            ErrorCode::PreconditionViolated);
  // No evaluator script: the evaluator call fails and the error propagates.
  EXPECT_EQ(error_code([&] { h.run(); }), ErrorCode::BackendUnavailable);
  const auto events = h.sink.events();
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.back().kind, EventKind::Anomaly);
}

TEST(RunAnalysisTest, OutcomeDocumentRoundTrips) {
  Harness h({{"civic.bioexpert/*", valid_civic()},
             {"civic.evaluator/1", "NOT APPROVED\n- a\n- b"},
             {"civic.evaluator/2", "APPROVED"}});
  auto out = h.run();
  auto back = outcome_from_json(to_json(out));
  EXPECT_EQ(back.final, out.final);
  EXPECT_EQ(back.status, out.status);
  EXPECT_EQ(back.iterations_used, out.iterations_used);
  EXPECT_EQ(back.verdict_history, out.verdict_history);
}

// Random scripts: each iteration the expert output is valid or broken and the
// evaluator approves, rejects with random bullets, or replies with noise.
struct RandomScript {
  Json script = Json::object();
  int max_iterations = 1;
};

RandomScript random_script(Gen& gen, SourceId source) {
  RandomScript r;
  r.max_iterations = gen.range(1, 6);
  const auto slug_s = std::string(slug(source));
  const auto good = analysis_text(kGenes, {slug_s + ":1"});
  for (int k = 1; k <= r.max_iterations; ++k) {
    const auto key = std::to_string(k);
    r.script[slug_s + ".bioexpert/" + key] =
        gen.coin(0.75) ? good : (gen.coin() ? missing_summary() : "{broken");
    const int pick = gen.range(0, 9);
    r.script[slug_s + ".evaluator/" + key] =
        pick < 2 ? "APPROVED"
                 : (pick < 9 ? rejection(gen.bullets(1, 5)) : "hmm, unsure");
  }
  return r;
}

TEST(RunAnalysisTest, PropertyLoopInvariantsAndFeedbackThreading) {
  Gen gen(2026);
  for (int trial = 0; trial < 250; ++trial) {
    const auto source = kAllSources[static_cast<std::size_t>(trial % 3)];
    const auto slug_s = std::string(slug(source));
    auto rs = random_script(gen, source);
    Harness h(rs.script);
    auto out = h.run(rs.max_iterations, source);

    const auto experts = h.calls(agents::bioexpert(source));
    const auto evaluators = h.calls(agents::evaluator(source));
    ASSERT_GE(experts, 1u);
    ASSERT_LE(experts, static_cast<std::size_t>(rs.max_iterations));
    ASSERT_LE(evaluators, experts);
    ASSERT_EQ(static_cast<std::size_t>(out.iterations_used), experts);
    ASSERT_EQ(out.verdict_history.size(), experts);

    if (out.status == OutcomeStatus::Approved) {
      ASSERT_TRUE(out.verdict_history.back().is_approved());
      auto again = check_structured_analysis(
          to_json(out.final).dump(), bundle_for(source, kGenes),
          GeneSet::from_symbols(kGenes), out.final.iteration);
      ASSERT_TRUE(again.ok());
    } else {
      ASSERT_EQ(out.iterations_used, rs.max_iterations);
      for (const auto& v : out.verdict_history) ASSERT_FALSE(v.is_approved());
    }

    const auto prompts = h.sink.prompts(agents::bioexpert(source));
    for (std::size_t k = 1; k < prompts.size(); ++k) {
      for (const auto& b : out.verdict_history[k - 1].feedback()) {
        ASSERT_NE(prompts[k].find(b), std::string::npos)
            << "trial " << trial << " iteration " << k + 1 << ": " << b;
      }
    }

    for (const auto& id : h.gateway->call_log()) {
      ASSERT_FALSE(agents::is_orchestrator(id));
    }
    const auto events = h.sink.events();
    for (std::size_t i = 1; i < events.size(); ++i) {
      ASSERT_LT(events[i - 1].seq, events[i].seq);
    }
    ASSERT_EQ(events.back().kind, EventKind::Status);
    ASSERT_EQ(events.back().agent_id, agents::orchestrator(source));
  }
}

TEST(ModelCallTest, PromptAndResponseEventsCarryUsage) {
  auto backend = scripted({{"civic.bioexpert/1", "two words"}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  llm::PromptEnvelope env{"civic.bioexpert", "sys msg", "user msg here",
                          llm::IterationMode::Initial, 1};
  auto r = call_model(*gw, sink, env);
  const auto events = sink.events();
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].kind, EventKind::Prompt);
  EXPECT_EQ(events[0].payload, prompt_payload(env));
  EXPECT_NE(events[0].payload.find("user msg here"), std::string::npos);
  EXPECT_EQ(events[1].kind, EventKind::Response);
  EXPECT_EQ(events[1].payload, "two words");
  ASSERT_TRUE(events[1].usage);
  EXPECT_EQ(events[1].usage->prompt_tokens, r.prompt_tokens);
  EXPECT_EQ(events[1].usage->prompt_tokens, 5u);
  EXPECT_EQ(events[1].usage->completion_tokens, 2u);
  EXPECT_EQ(events[1].usage->backend_id, "mock");
}

}  // namespace
}  // namespace evsynth::analysis
