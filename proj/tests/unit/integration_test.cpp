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

#include <map>

#include "evsynth/analysis/verdict.hpp"
#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"
#include "evsynth/domain/validation.hpp"
#include "evsynth/integration/integration.hpp"
#include "test_support.hpp"

namespace evsynth::integration {
namespace {

using analysis::AnalysisOutcome;
using analysis::OutcomeStatus;
using ledger::EventKind;
using testing::brief_for;
using testing::error_code;
using testing::Gen;
using testing::MemorySink;
using testing::rejection;
using testing::report_text;
using testing::scripted;

const std::vector<std::string> kGenes{"BRAF", "KRAS", "EGFR", "PIK3CA"};

AnalysisOutcome outcome(SourceId s, bool approved = true, int iterations = 1) {
  AnalysisOutcome o;
  const std::string sl(slug(s));
  o.final.source = s;
  o.final.iteration = iterations;
  o.final.summary = "Summary from " + sl + ".";
  o.final.relevance_explanations = {{"BRAF", "BRAF matters for " + sl}};
  o.final.conclusions = {"Conclusion from " + sl};
  o.final.citations = {{sl + ":1", "https://example.org/" + sl + ":1"},
                       {sl + ":2", std::nullopt}};
  o.status = approved ? OutcomeStatus::Approved
                      : OutcomeStatus::ExhaustedIterations;
  o.iterations_used = iterations;
  for (int k = 1; k < iterations; ++k) {
    o.verdict_history.push_back(Verdict::not_approved({"again"}));
  }
  o.verdict_history.push_back(approved ? Verdict::approved()
                                       : Verdict::not_approved({"again"}));
  return o;
}

ConsolidatedEvidence three_sources() {
  std::vector<AnalysisOutcome> v{outcome(SourceId::Civic),
                                 outcome(SourceId::PharmGkb),
                                 outcome(SourceId::Enrichment)};
  return consolidate(v, brief_for(kGenes));
}

std::string good_report() {
  return report_text({"PIK3CA"}, {"BRAF", "KRAS"}, "pharmgkb:1");
}

const std::string kContent(agents::kContentValidator);
const std::string kCritical(agents::kCriticalReviewer);
const std::string kRelevance(agents::kRelevanceValidator);
const std::string kComposer(agents::kComposer);

std::string key(const std::string& agent, int v) {
  return agent + "/" + std::to_string(v);
}

TEST(ConsolidateTest, ThreeApprovedOutcomes) {
  auto c = three_sources();
  ASSERT_EQ(c.entries.size(), 3u);
  EXPECT_EQ(c.entries[0].source, SourceId::Civic);
  EXPECT_EQ(c.entries[2].source, SourceId::Enrichment);
  EXPECT_EQ(c.citations.size(), 6u);
  EXPECT_EQ(c.citations.at("civic:1"), "https://example.org/civic:1");
  EXPECT_FALSE(c.citations.at("enrichment:2").has_value());
  for (const auto& e : c.entries) EXPECT_FALSE(e.unapproved);
}

TEST(ConsolidateTest, MissingAndDuplicateSources) {
  std::vector<AnalysisOutcome> two{outcome(SourceId::Civic),
                                   outcome(SourceId::PharmGkb)};
  try {
    consolidate(two, brief_for(kGenes));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingSource);
    EXPECT_EQ(e.detail(), "ENRICHMENT");
  }
  std::vector<AnalysisOutcome> dup{outcome(SourceId::Civic),
                                   outcome(SourceId::Civic),
                                   outcome(SourceId::Enrichment)};
  EXPECT_EQ(error_code([&] { consolidate(dup, brief_for(kGenes)); }),
            ErrorCode::DuplicateSource);
  const std::array<SourceId, 1> civic_only{SourceId::Civic};
  std::vector<AnalysisOutcome> one{outcome(SourceId::Civic)};
  EXPECT_EQ(consolidate(one, brief_for(kGenes), civic_only).entries.size(), 1u);
  EXPECT_EQ(error_code([&] {
              consolidate(two, brief_for(kGenes), civic_only);
            }),
            ErrorCode::PreconditionViolated);
}

TEST(ConsolidateTest, ExhaustedOutcomeIsFlagged) {
  std::vector<AnalysisOutcome> v{outcome(SourceId::Civic),
                                 outcome(SourceId::PharmGkb, false, 3),
                                 outcome(SourceId::Enrichment)};
  auto c = consolidate(v, brief_for(kGenes));
  ASSERT_EQ(c.entries.size(), 3u);
  EXPECT_TRUE(c.entries[1].unapproved);
  EXPECT_FALSE(c.entries[0].unapproved);
  const auto text = render_consolidated(c);
  EXPECT_NE(text.find("== PHARMGKB analysis (unapproved upstream analysis: no "
                      "evaluator approval after 3 iterations) =="),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("== CIVIC analysis (approved at iteration 1) =="),
            std::string::npos);
}

TEST(ComposeTest, FirstVersionPromptHasAnalysesAndSections) {
  auto c = three_sources();
  auto backend = scripted({{key(kComposer, 1), good_report()}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  EXPECT_EQ(compose_report(c, nullptr, 1, "", *gw, sink), good_report());
  const auto prompt = sink.prompts(kComposer).at(0);
  for (const auto* s : {"Summary from civic.", "Summary from pharmgkb.",
                        "Summary from enrichment."}) {
    EXPECT_NE(prompt.find(s), std::string::npos) << s;
  }
  for (auto sec : kReportSections) {
    EXPECT_NE(prompt.find(section_title(sec)), std::string::npos)
        << section_title(sec);
  }
}

TEST(ComposeTest, RevisionLabelsEveryBullet) {
  auto c = three_sources();
  auto backend = scripted({{key(kComposer, 2), good_report()}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  const std::vector<FeedbackItem> fb{
      {FeedbackOrigin::ContentValidator, "add the missing section"},
      {FeedbackOrigin::CriticalReviewer, "unsupported claim on KRAS"},
      {FeedbackOrigin::CriticalReviewer, "biased toward BRAF"}};
  compose_report(c, &fb, 2, "{\"previous\": true}", *gw, sink);
  const auto prompt = sink.prompts(kComposer).at(0);
  EXPECT_NE(prompt.find("[ContentValidator] add the missing section"),
            std::string::npos);
  EXPECT_NE(prompt.find("[CriticalReviewer] unsupported claim on KRAS"),
            std::string::npos);
  EXPECT_NE(prompt.find("[CriticalReviewer] biased toward BRAF"),
            std::string::npos);
  EXPECT_NE(prompt.find("{\"previous\": true}"), std::string::npos);

  const std::vector<FeedbackItem> none;
  EXPECT_EQ(error_code([&] { compose_report(c, nullptr, 2, "x", *gw, sink); }),
            ErrorCode::PreconditionViolated);
  EXPECT_EQ(error_code([&] { compose_report(c, &none, 2, "x", *gw, sink); }),
            ErrorCode::PreconditionViolated);
  EXPECT_EQ(error_code([&] { compose_report(c, &fb, 1, "", *gw, sink); }),
            ErrorCode::PreconditionViolated);
}

IntegratedReport validated_report(const ConsolidatedEvidence& c) {
  return validate_report_structure(good_report(), c.citations, 1);
}

TEST(ReviewParallelTest, AllApprove) {
  auto c = three_sources();
  auto backend = scripted({{key(kContent, 1), "APPROVED"},
                           {key(kCritical, 1), "APPROVED"},
                           {key(kRelevance, 1), "APPROVED"}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  auto out = review_parallel(validated_report(c), c, *gw, sink);
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(out[i].reviewer, kReviewers[i]);
    EXPECT_TRUE(out[i].verdict.is_approved());
    EXPECT_GE(out[i].latency_seconds, 0.0);
  }
}

TEST(ReviewParallelTest, OneRejection) {
  auto c = three_sources();
  auto backend =
      scripted({{key(kContent, 1), "APPROVED"},
                {key(kCritical, 1), "NOT APPROVED\n- unsupported claim on KRAS"},
                {key(kRelevance, 1), "APPROVED"}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  auto out = review_parallel(validated_report(c), c, *gw, sink);
  EXPECT_TRUE(out[0].verdict.is_approved());
  EXPECT_EQ(out[1].verdict,
            Verdict::not_approved({"unsupported claim on KRAS"}));
  EXPECT_TRUE(out[2].verdict.is_approved());
}

TEST(ReviewParallelTest, BackendFailureIsIsolated) {
  auto c = three_sources();
  auto backend = scripted({{key(kContent, 1), "APPROVED"},
                           {key(kCritical, 1), Json{{"fail", "permanent"}}},
                           {key(kRelevance, 1), "APPROVED"}});
  auto gw = testing::gateway_for(backend);
  MemorySink sink;
  auto out = review_parallel(validated_report(c), c, *gw, sink);
  EXPECT_TRUE(out[0].verdict.is_approved());
  EXPECT_TRUE(out[2].verdict.is_approved());
  ASSERT_FALSE(out[1].verdict.is_approved());
  ASSERT_EQ(out[1].verdict.feedback().size(), 1u);
  EXPECT_NE(out[1].verdict.feedback()[0].find("reviewer unavailable"),
            std::string::npos);
  const auto events = sink.events();
  EXPECT_EQ(std::count_if(events.begin(), events.end(),
                          [](const auto& e) {
                            return e.kind == EventKind::Anomaly &&
                                   e.agent_id == kCritical;
                          }),
            1);
  EXPECT_EQ(std::count_if(events.begin(), events.end(),
                          [](const auto& e) { return e.kind == EventKind::Verdict; }),
            3);
}

ReviewOutcome ro(FeedbackOrigin r, std::vector<std::string> fb = {}) {
  return {r, fb.empty() ? Verdict::approved()
                        : Verdict::not_approved(std::move(fb)),
          0.0};
}

TEST(ConsensusTest, SpecExamples) {
  using O = FeedbackOrigin;
  std::vector<ReviewOutcome> aaa{ro(O::ContentValidator),
                                 ro(O::CriticalReviewer),
                                 ro(O::RelevanceValidator)};
  auto r = consensus(aaa);
  EXPECT_TRUE(r.approved);
  EXPECT_TRUE(r.combined_feedback.empty());

  std::vector<ReviewOutcome> ana{ro(O::ContentValidator),
                                 ro(O::CriticalReviewer, {"b1"}),
                                 ro(O::RelevanceValidator)};
  r = consensus(ana);
  EXPECT_FALSE(r.approved);
  EXPECT_EQ(r.combined_feedback,
            (std::vector<FeedbackItem>{{O::CriticalReviewer, "b1"}}));

  // Completion order must not matter: shuffled input, fixed output order.
  std::vector<ReviewOutcome> nna{ro(O::RelevanceValidator),
                                 ro(O::CriticalReviewer, {"y", "z"}),
                                 ro(O::ContentValidator, {"x"})};
  r = consensus(nna);
  EXPECT_EQ(r.combined_feedback, (std::vector<FeedbackItem>{
                                     {O::ContentValidator, "x"},
                                     {O::CriticalReviewer, "y"},
                                     {O::CriticalReviewer, "z"}}));
}

TEST(ConsensusTest, ExhaustiveOverAllEightCombinations) {
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<ReviewOutcome> v;
    std::vector<FeedbackItem> expected;
    for (int i = 0; i < 3; ++i) {
      const bool rejects = (mask >> i) & 1;
      const auto who = kReviewers[static_cast<std::size_t>(i)];
      if (rejects) {
        const auto b = "bullet from " + std::string(to_string(who));
        v.push_back(ro(who, {b}));
        expected.push_back({who, b});
      } else {
        v.push_back(ro(who));
      }
    }
    auto r = consensus(v);
    EXPECT_EQ(r.approved, mask == 0) << mask;
    EXPECT_EQ(r.combined_feedback, expected) << mask;
    if (r.approved) EXPECT_TRUE(r.combined_feedback.empty());
  }
}

TEST(ConsensusTest, WrongArity) {
  using O = FeedbackOrigin;
  std::vector<ReviewOutcome> two{ro(O::ContentValidator),
                                 ro(O::CriticalReviewer)};
  EXPECT_EQ(error_code([&] { consensus(two); }), ErrorCode::WrongArity);
  std::vector<ReviewOutcome> dup{ro(O::ContentValidator),
                                 ro(O::ContentValidator),
                                 ro(O::RelevanceValidator)};
  EXPECT_EQ(error_code([&] { consensus(dup); }), ErrorCode::WrongArity);
  std::vector<ReviewOutcome> four{ro(O::ContentValidator),
                                  ro(O::CriticalReviewer),
                                  ro(O::RelevanceValidator),
                                  ro(O::RelevanceValidator)};
  EXPECT_EQ(error_code([&] { consensus(four); }), ErrorCode::WrongArity);
}

struct Harness {
  std::shared_ptr<llm::ScriptedBackend> backend;
  std::unique_ptr<llm::LlmGateway> gateway;
  MemorySink sink;
  ConsolidatedEvidence c = three_sources();

  explicit Harness(const Json& script)
      : backend(scripted(script)), gateway(testing::gateway_for(backend)) {}

  IntegrationResult run(int max_iterations = 3) {
    return run_integration(c, IntegrationConfig{max_iterations}, *gateway, sink);
  }
};

TEST(RunIntegrationTest, ApprovedFirstRound) {
  Harness h(Json{{key(kComposer, 1), good_report()},
                 {kContent + "/*", "APPROVED"},
                 {kCritical + "/*", "APPROVED"},
                 {kRelevance + "/*", "APPROVED"}});
  auto r = h.run();
  EXPECT_EQ(r.status.state, RunState::Completed);
  EXPECT_EQ(r.report.version, 1);
  EXPECT_EQ(r.rounds, 1);
  EXPECT_EQ(r.status.iterations.at("integration"), 1);
  ASSERT_EQ(r.report.novel_biomarkers.size(), 1u);
  EXPECT_EQ(r.report.novel_biomarkers[0].citations[0].url,
            "https://example.org/pharmgkb:1");
}

TEST(RunIntegrationTest, RevisionAfterOneRejection) {
  Harness h(Json{{kComposer + "/*", good_report()},
                 {kContent + "/*", "APPROVED"},
                 {key(kCritical, 1), "NOT APPROVED\n- unsupported claim on KRAS"},
                 {kCritical + "/*", "APPROVED"},
                 {kRelevance + "/*", "APPROVED"}});
  auto r = h.run();
  EXPECT_EQ(r.status.state, RunState::Completed);
  EXPECT_EQ(r.report.version, 2);
  const auto prompts = h.sink.prompts(kComposer);
  ASSERT_EQ(prompts.size(), 2u);
  EXPECT_NE(prompts[1].find("[CriticalReviewer] unsupported claim on KRAS"),
            std::string::npos);
}

TEST(RunIntegrationTest, NeverUnanimousKeepsVersionThree) {
  Harness h(Json{{kComposer + "/*", good_report()},
                 {kContent + "/*", "APPROVED"},
                 {kCritical + "/*", "APPROVED"},
                 {kRelevance + "/*", "NOT APPROVED\n- misclassified PIK3CA"}});
  auto r = h.run(3);
  EXPECT_EQ(r.status.state, RunState::ExhaustedIterations);
  EXPECT_EQ(r.report.version, 3);
  EXPECT_EQ(r.rounds, 3);
  EXPECT_EQ(h.backend->calls(), 12u);
}

TEST(RunIntegrationTest, StructureFailureSkipsReviewers) {
  auto broken = Json::parse(good_report());
  broken.erase("implications");
  Harness h(Json{{key(kComposer, 1), broken.dump()},
                 {key(kComposer, 2), good_report()},
                 {kContent + "/*", "APPROVED"},
                 {kCritical + "/*", "APPROVED"},
                 {kRelevance + "/*", "APPROVED"}});
  auto r = h.run();
  EXPECT_EQ(r.status.state, RunState::Completed);
  EXPECT_EQ(r.report.version, 2);
  // Round 1: composer only. Round 2: composer and three reviewers.
  EXPECT_EQ(h.backend->calls(), 5u);
  EXPECT_NE(h.sink.prompts(kComposer)[1].find("implications"),
            std::string::npos);
  for (const auto& id : h.gateway->call_log()) {
    EXPECT_NE(id, std::string(agents::kIntegrationOrchestrator));
  }
}

TEST(RunIntegrationTest, ComposerUnreachablePropagates) {
  Harness h(Json{{kComposer + "/*", Json{{"fail", "permanent"}}}});
  EXPECT_EQ(error_code([&] { h.run(); }), ErrorCode::BackendUnavailable);
}

TEST(RunIntegrationTest, ReviewerIndependence) {
  // Each reviewer's reply carries a marker no other prompt may contain.
  Harness h(Json{{kComposer + "/*", good_report()},
                 {key(kContent, 1), "NOT APPROVED\n- marker-content-r1"},
                 {key(kCritical, 1), "NOT APPROVED\n- marker-critical-r1"},
                 {key(kRelevance, 1), "NOT APPROVED\n- marker-relevance-r1"},
                 {key(kContent, 2), "NOT APPROVED\n- marker-content-r2"},
                 {key(kCritical, 2), "NOT APPROVED\n- marker-critical-r2"},
                 {key(kRelevance, 2), "NOT APPROVED\n- marker-relevance-r2"}});
  h.run(2);
  const std::vector<std::string> reviewers{kContent, kCritical, kRelevance};
  std::set<std::string> systems;
  for (const auto& rv : reviewers) {
    const auto prompts = h.sink.prompts(rv);
    ASSERT_EQ(prompts.size(), 2u);
    for (const auto& p : prompts) {
      systems.insert(p.substr(0, p.find("[user]")));
      for (const auto* m :
           {"marker-content", "marker-critical", "marker-relevance"}) {
        EXPECT_EQ(p.find(m), std::string::npos) << rv << " saw " << m;
      }
    }
  }
  EXPECT_EQ(systems.size(), 3u);
}

// Random rounds: composer output valid or broken, each reviewer approving,
// rejecting with random bullets, or failing.
TEST(RunIntegrationTest, PropertyFeedbackCompletenessAndVersions) {
  Gen gen(99);
  const std::map<std::string, std::string> label{
      {kContent, "[ContentValidator] "},
      {kCritical, "[CriticalReviewer] "},
      {kRelevance, "[RelevanceValidator] "},
      {std::string(agents::kIntegrationOrchestrator), ""}};
  auto broken = Json::parse(good_report());
  broken["novel_biomarkers"][0]["citations"] =
      Json::array({{{"evidence_id", "civic:999"}}});

  for (int trial = 0; trial < 220; ++trial) {
    const int max_rounds = gen.range(1, 5);
    Json script = Json::object();
    for (int v = 1; v <= max_rounds; ++v) {
      script[key(kComposer, v)] = gen.coin(0.8) ? good_report() : broken.dump();
      for (const auto& rv : {kContent, kCritical, kRelevance}) {
        const int p = gen.range(0, 9);
        script[key(rv, v)] = p < 5 ? Json("APPROVED")
                             : p < 9 ? Json(rejection(gen.bullets(1, 4)))
                                     : Json{{"fail", "permanent"}};
      }
    }
    Harness h(script);
    auto r = h.run(max_rounds);
    ASSERT_GE(r.rounds, 1);
    ASSERT_LE(r.rounds, max_rounds);

    // Feedback of round v, in event order, keyed by round.
    std::map<int, std::vector<std::pair<std::string, std::string>>> fb;
    std::map<int, std::map<std::string, Json>> verdicts;
    for (const auto& e : h.sink.events()) {
      if (e.kind != EventKind::Verdict) continue;
      verdicts[*e.iteration][e.agent_id] = Json::parse(e.payload);
    }
    for (auto& [v, by_agent] : verdicts) {
      // Orchestrator first (structure checks replace reviews), then the
      // fixed reviewer order.
      for (const auto& a : {std::string(agents::kIntegrationOrchestrator),
                            kContent, kCritical, kRelevance}) {
        auto it = by_agent.find(a);
        if (it == by_agent.end()) continue;
        for (const auto& b : it->second.at("feedback")) {
          fb[v].push_back({a, b.get<std::string>()});
        }
      }
    }
    const auto prompts = h.sink.prompts(kComposer);
    ASSERT_EQ(prompts.size(), static_cast<std::size_t>(r.rounds));
    for (int v = 1; v < r.rounds; ++v) {
      const auto& next = prompts[static_cast<std::size_t>(v)];
      std::size_t last_pos = 0;
      ASSERT_FALSE(fb[v].empty()) << "round " << v << " continued without feedback";
      for (const auto& [agent, bullet] : fb[v]) {
        const auto pos = next.find(label.at(agent) + bullet);
        ASSERT_NE(pos, std::string::npos)
            << "trial " << trial << " round " << v << ": " << bullet;
        ASSERT_GE(pos, last_pos) << "feedback out of reviewer order";
        last_pos = pos;
      }
    }
    if (r.status.state == RunState::Completed) {
      ASSERT_EQ(r.report.version, r.rounds);
    } else {
      ASSERT_EQ(r.rounds, max_rounds);
      ASSERT_LE(r.report.version, r.rounds);
    }
    for (const auto& id : h.gateway->call_log()) {
      ASSERT_FALSE(agents::is_orchestrator(id));
    }
  }
}

}  // namespace
}  // namespace evsynth::integration
