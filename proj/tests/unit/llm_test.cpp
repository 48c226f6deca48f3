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

#include <atomic>
#include <set>
#include <thread>

#include "httplib.h"

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/domain/agents.hpp"
#include "evsynth/llm/gateway.hpp"
#include "evsynth/llm/http_backend.hpp"
#include "evsynth/llm/mock_backend.hpp"
#include "evsynth/llm/pricing.hpp"
#include "evsynth/llm/prompt.hpp"
#include "evsynth/llm/roles.hpp"
#include "evsynth/sources/evidence_text.hpp"
#include "test_support.hpp"

namespace evsynth::llm {
namespace {

using std::chrono::milliseconds;
using testing::brief_for;
using testing::bundle_for;
using testing::error_code;
using testing::Gen;
using testing::scripted;

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

const std::vector<AgentRole> kLlmRoles{
    AgentRole::BioExpert,        AgentRole::Evaluator,
    AgentRole::ReportComposer,   AgentRole::ContentValidator,
    AgentRole::CriticalReviewer, AgentRole::RelevanceValidator};

TEST(PromptTest, InitialPromptHoldsQuestionAndEveryEvidenceId) {
  const auto brief = brief_for({"BRAF", "KRAS", "TP53"});
  const auto bundle = bundle_for(SourceId::Civic, {"BRAF", "KRAS", "TP53"});
  const auto env =
      build_initial_prompt(make_role(AgentRole::BioExpert, SourceId::Civic),
                           brief, sources::render_evidence_block(bundle));
  EXPECT_EQ(env.agent_id, "civic.bioexpert");
  EXPECT_EQ(env.mode, IterationMode::Initial);
  EXPECT_EQ(env.iteration, 1);
  EXPECT_TRUE(contains(env.user_message, brief.question));
  for (const auto& it : bundle.items()) {
    EXPECT_TRUE(contains(env.user_message, it.id())) << it.id();
  }
  EXPECT_FALSE(has_revision_blocks(env.user_message));

  const auto ctx = env.user_message.find(blocks::kContext);
  const auto q = env.user_message.find(blocks::kQuestion);
  const auto ev = env.user_message.find(blocks::kEvidence);
  ASSERT_NE(ctx, std::string::npos);
  EXPECT_LT(ctx, q);
  EXPECT_LT(q, ev);
}

TEST(PromptTest, EveryRoleCarriesTheClause) {
  const auto brief = brief_for({"BRAF"});
  for (auto role : kLlmRoles) {
    for (auto s : kAllSources) {
      auto env = build_initial_prompt(make_role(role, s), brief, "evidence");
      EXPECT_TRUE(contains(env.system_message, kAntiHallucinationClause))
          << to_string(role);
      EXPECT_FALSE(agents::is_orchestrator(env.agent_id));
    }
  }
  EXPECT_EQ(error_code([] { make_role(AgentRole::Evaluator); }),
            ErrorCode::PreconditionViolated);
}

TEST(PromptTest, LlmAgentIdsAreDistinct) {
  std::set<std::string> ids;
  for (auto role : kLlmRoles) {
    for (auto s : kAllSources) ids.insert(make_role(role, s).agent_id);
  }
  // Three bioexperts, three evaluators, the composer and three reviewers.
  EXPECT_EQ(ids.size(), 10u);
  for (const auto& id : ids) EXPECT_FALSE(agents::is_orchestrator(id)) << id;
}

TEST(PromptTest, BudgetIsEnforcedLoudly) {
  const auto brief = brief_for({"BRAF"});
  const auto role = make_role(AgentRole::BioExpert, SourceId::Civic);
  std::string evidence;
  for (int i = 0; i < 200; ++i) evidence += "word ";
  const auto env = build_initial_prompt(role, brief, evidence);
  EXPECT_EQ(error_code([&] {
              build_initial_prompt(role, brief, evidence,
                                   env.token_estimate() - 1);
            }),
            ErrorCode::EvidenceTooLarge);
  EXPECT_NO_THROW(
      build_initial_prompt(role, brief, evidence, env.token_estimate()));
}

TEST(PromptTest, RevisionCarriesPreviousAndFeedback) {
  const auto brief = brief_for({"BRAF"});
  const auto role = make_role(AgentRole::BioExpert, SourceId::PharmGkb);
  const auto env = build_revision_prompt(role, brief, "ev", "{\"old\": 1}",
                                         {"b1 fix it", "b2 cite"}, 2);
  EXPECT_EQ(env.mode, IterationMode::Revision);
  EXPECT_EQ(env.iteration, 2);
  EXPECT_TRUE(contains(env.user_message, "b1 fix it"));
  EXPECT_TRUE(contains(env.user_message, "b2 cite"));
  EXPECT_TRUE(contains(env.user_message, "{\"old\": 1}"));
  EXPECT_TRUE(contains(env.user_message, blocks::kPrevious));
  EXPECT_TRUE(contains(env.user_message, "preserving any valid content"));
  EXPECT_TRUE(has_revision_blocks(env.user_message));

  EXPECT_EQ(error_code([&] {
              build_revision_prompt(role, brief, "ev", "prev", {}, 2);
            }),
            ErrorCode::PreconditionViolated);
  EXPECT_EQ(error_code([&] {
              build_revision_prompt(role, brief, "ev", "prev", {"b"}, 1);
            }),
            ErrorCode::PreconditionViolated);
}

TEST(PromptTest, PropertyContainment) {
  Gen gen(11);
  const auto role = make_role(AgentRole::ReportComposer);
  for (int i = 0; i < 300; ++i) {
    const auto question = gen.bullet() + "?";
    auto brief = ResearchBrief::make(gen.bullet(), question,
                                     GeneSet::from_symbols({"EGFR"}));
    const auto fb = gen.bullets(1, 6);
    const int iteration = gen.range(2, 9);
    auto env = build_revision_prompt(role, brief, gen.bullet(), gen.bullet(),
                                     fb, iteration);
    ASSERT_TRUE(contains(env.user_message, question));
    for (const auto& b : fb) ASSERT_TRUE(contains(env.user_message, b)) << b;
    ASSERT_EQ(env.iteration, iteration);
  }
}

PromptEnvelope envelope(const std::string& agent, int iteration,
                        const std::string& user = "three word prompt") {
  PromptEnvelope e;
  e.agent_id = agent;
  e.system_message = "sys";
  e.user_message = user;
  e.iteration = iteration;
  return e;
}

TEST(MockBackendTest, ScriptedResponseAndTokenCounts) {
  auto backend = scripted({{"civic.evaluator/1", "APPROVED"}});
  auto gw = testing::gateway_for(backend);
  auto r = gw->complete(envelope("civic.evaluator", 1));
  EXPECT_EQ(r.text, "APPROVED");
  // "sys" + "three word prompt".
  EXPECT_EQ(r.prompt_tokens, 4u);
  EXPECT_EQ(r.completion_tokens, 1u);
  EXPECT_EQ(r.backend_id, "mock");
  EXPECT_GE(r.latency_seconds, 0.0);
}

TEST(MockBackendTest, ListsFallbacksAndMisses) {
  auto backend = scripted({{"a.bioexpert/1", {"first", "second"}},
                           {"a.bioexpert/*", "any"}});
  EXPECT_EQ(backend->send(envelope("a.bioexpert", 1)).text, "first");
  EXPECT_EQ(backend->send(envelope("a.bioexpert", 1)).text, "second");
  EXPECT_EQ(backend->send(envelope("a.bioexpert", 1)).text, "second");
  EXPECT_EQ(backend->send(envelope("a.bioexpert", 7)).text, "any");
  EXPECT_EQ(error_code([&] { backend->send(envelope("b.evaluator", 1)); }),
            ErrorCode::BackendUnavailable);
  EXPECT_EQ(backend->calls(), 5u);
  EXPECT_EQ(error_code([] { ScriptedBackend(Json{{"k/1", 5}}); }),
            ErrorCode::ParseError);
  EXPECT_EQ(error_code([] { ScriptedBackend::from_file("/nonexistent.json"); }),
            ErrorCode::FixtureMissing);
}

TEST(GatewayTest, RetriesTransientFailuresWithBackoff) {
  auto backend = scripted(
      {{"x.composer/1",
        {Json{{"fail", "transient"}}, Json{{"fail", "transient"}}, "done"}}});
  std::vector<milliseconds> slept;
  LlmGateway gw(backend, nullptr, RetryPolicy{},
                [&](milliseconds d) { slept.push_back(d); });
  EXPECT_EQ(gw.complete(envelope("x.composer", 1)).text, "done");
  EXPECT_EQ(slept, (std::vector<milliseconds>{milliseconds(1000),
                                              milliseconds(2000)}));
  EXPECT_EQ(gw.attempts(), 3u);
}

TEST(GatewayTest, BackendUnavailableAfterRetries) {
  auto backend = scripted({{"x.composer/1", Json{{"fail", "transient"}}}});
  std::vector<milliseconds> slept;
  LlmGateway gw(backend, nullptr, RetryPolicy{},
                [&](milliseconds d) { slept.push_back(d); });
  EXPECT_EQ(error_code([&] { gw.complete(envelope("x.composer", 1)); }),
            ErrorCode::BackendUnavailable);
  EXPECT_EQ(slept, (std::vector<milliseconds>{milliseconds(1000),
                                              milliseconds(2000),
                                              milliseconds(4000)}));
  EXPECT_EQ(backend->calls(), 4u);
  EXPECT_TRUE(gw.call_log().empty());
  EXPECT_EQ(gw.totals().total(), 0u);
}

TEST(GatewayTest, PermanentFailureIsNotRetried) {
  auto backend = scripted({{"x.composer/1", Json{{"fail", "permanent"}}}});
  int sleeps = 0;
  LlmGateway gw(backend, nullptr, RetryPolicy{},
                [&](milliseconds) { ++sleeps; });
  EXPECT_EQ(error_code([&] { gw.complete(envelope("x.composer", 1)); }),
            ErrorCode::BackendUnavailable);
  EXPECT_EQ(sleeps, 0);
  EXPECT_EQ(backend->calls(), 1u);
}

TEST(GatewayTest, OrchestratorsAreRefused) {
  auto backend = scripted({{"civic.orchestrator/*", "x"}});
  auto gw = testing::gateway_for(backend);
  for (const std::string id :
       {"civic.orchestrator", "run.orchestrator", "integration.orchestrator"}) {
    EXPECT_EQ(error_code([&] { gw->complete(envelope(id, 1)); }),
              ErrorCode::PreconditionViolated);
  }
  EXPECT_EQ(backend->calls(), 0u);
}

TEST(GatewayTest, CeilingStopsTheCallBeforeSending) {
  auto backend = scripted({{"x.composer/*", "ok"}});
  std::string big;
  for (int i = 0; i < 9'000; ++i) big += "t ";
  auto budget = std::make_shared<TokenBudget>(10'000);
  auto gw = testing::gateway_for(backend, budget);
  gw->complete(envelope("x.composer", 1, big));  // 9001 + 1 tokens
  EXPECT_EQ(budget->used(), 9'002u);
  EXPECT_EQ(error_code([&] { gw->complete(envelope("x.composer", 2, big)); }),
            ErrorCode::BudgetExceeded);
  EXPECT_EQ(backend->calls(), 1u);
  EXPECT_EQ(budget->used(), 9'002u);
}

TEST(GatewayTest, ConcurrentReservationsNeverOverspend) {
  for (int round = 0; round < 20; ++round) {
    auto backend = scripted({{"x.composer/*", "ok"}});
    // Each call costs 4 prompt + 1 completion tokens; the ceiling fits 37.
    auto budget = std::make_shared<TokenBudget>(5 * 37 + 3);
    auto gw = testing::gateway_for(backend, budget);
    std::atomic<int> ok{0}, refused{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&] {
        for (int i = 0; i < 10; ++i) {
          try {
            gw->complete(envelope("x.composer", 1));
            ++ok;
          } catch (const Error& e) {
            if (e.code() == ErrorCode::BudgetExceeded) ++refused;
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    EXPECT_LE(budget->used(), *budget->ceiling());
    EXPECT_EQ(ok.load() + refused.load(), 80);
    EXPECT_EQ(budget->used(), static_cast<std::size_t>(ok.load()) * 5);
    EXPECT_EQ(gw->totals().total(), budget->used());
    EXPECT_EQ(gw->call_log().size(), static_cast<std::size_t>(ok.load()));
  }
}

TEST(PricingTest, CostArithmetic) {
  PriceTable table;
  table.set("http:gpt", {0.40, 1.60});
  EXPECT_DOUBLE_EQ(estimate_cost({}, table), 0.0);
  EXPECT_DOUBLE_EQ(estimate_cost({{"http:gpt", {0, 0}}}, table), 0.0);
  EXPECT_NEAR(estimate_cost({{"http:gpt", {1000, 1000}}}, table), 2.00, 1e-12);
  table.set("mock", {0.0, 0.0});
  EXPECT_NEAR(estimate_cost({{"http:gpt", {2500, 500}}, {"mock", {9, 9}}}, table),
              2.5 * 0.40 + 0.5 * 1.60, 1e-12);
  EXPECT_EQ(error_code([&] { estimate_cost({{"other", {1, 1}}}, table); }),
            ErrorCode::UnknownBackend);
  EXPECT_EQ(error_code([&] { table.set("neg", {-0.1, 0.0}); }),
            ErrorCode::ValidationFailed);
  auto back = PriceTable::from_json(table.to_json());
  ASSERT_NE(back.find("http:gpt"), nullptr);
  EXPECT_DOUBLE_EQ(back.find("http:gpt")->completion_per_1k, 1.60);
}

TEST(HttpBackendTest, ParsesChoicesAndUsage) {
  auto r = parse_chat_response(
      R"({"choices":[{"message":{"role":"assistant","content":"APPROVED"}}],
          "usage":{"prompt_tokens":1200,"completion_tokens":340}})");
  EXPECT_EQ(r.text, "APPROVED");
  ASSERT_TRUE(r.usage);
  EXPECT_EQ(r.usage->prompt_tokens, 1200u);
  EXPECT_EQ(r.usage->completion_tokens, 340u);
  EXPECT_EQ(parse_chat_response(R"({"text":"hi"})").text, "hi");
  EXPECT_FALSE(parse_chat_response(R"({"text":"hi"})").usage);
  EXPECT_EQ(error_code([] { parse_chat_response("{}"); }),
            ErrorCode::BackendUnavailable);
  EXPECT_EQ(error_code([] { parse_chat_response("<html>"); }),
            ErrorCode::BackendUnavailable);
}

// Local chat endpoint: the first request gets a 503, later ones succeed.
TEST(HttpBackendTest, UsagePassthroughAndRetryOn5xx) {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string seen_auth, seen_model;
  server.Post("/v1/chat/completions",
              [&](const httplib::Request& req, httplib::Response& res) {
                if (hits++ == 0) {
                  res.status = 503;
                  return;
                }
                seen_auth = req.get_header_value("Authorization");
                seen_model = Json::parse(req.body).at("model");
                res.set_content(
                    R"({"choices":[{"message":{"content":"NOT APPROVED\n- x"}}],
                        "usage":{"prompt_tokens":1200,"completion_tokens":340}})",
                    "application/json");
              });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto backend = std::make_shared<HttpChatBackend>(HttpBackendConfig{
      "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions",
      "gpt-4.1-mini", "secret", std::chrono::seconds(5)});
  EXPECT_EQ(backend->id(), "http:gpt-4.1-mini");
  std::vector<milliseconds> slept;
  LlmGateway gw(backend, nullptr, RetryPolicy{},
                [&](milliseconds d) { slept.push_back(d); });
  auto r = gw.complete(envelope("integration.composer", 1));
  server.stop();
  t.join();

  EXPECT_EQ(r.prompt_tokens, 1200u);
  EXPECT_EQ(r.completion_tokens, 340u);
  EXPECT_EQ(r.backend_id, "http:gpt-4.1-mini");
  EXPECT_EQ(slept.size(), 1u);
  EXPECT_EQ(seen_auth, "Bearer secret");
  EXPECT_EQ(seen_model, "gpt-4.1-mini");
}

}  // namespace
}  // namespace evsynth::llm
