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

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "evsynth/common/clock.hpp"
#include "evsynth/common/error.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/types.hpp"
#include "evsynth/ledger/event.hpp"
#include "evsynth/llm/gateway.hpp"
#include "evsynth/llm/mock_backend.hpp"

namespace evsynth::testing {

inline std::filesystem::path fixture_root() {
  return std::filesystem::path(EVSYNTH_FIXTURE_DIR);
}

inline std::filesystem::path scenario_dir(const std::string& name) {
  return fixture_root() / "scenarios" / name;
}

inline Timestamp at_ms(long long ms) {
  return Timestamp(std::chrono::milliseconds(ms));
}

// Code of the evsynth::Error thrown by f; fails the test if none is thrown.
inline ErrorCode error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an evsynth::Error";
  return ErrorCode::IoError;
}

// In-memory sink with its own gap-free seq numbering.
class MemorySink final : public ledger::EventSink {
 public:
  ledger::AgentEvent append(ledger::EventDraft d) override {
    std::lock_guard lock(mu_);
    ledger::AgentEvent e;
    e.run_id = "mem";
    e.seq = events_.size() + 1;
    e.agent_id = std::move(d.agent_id);
    e.kind = d.kind;
    e.payload = std::move(d.payload);
    e.usage = std::move(d.usage);
    e.state = d.state;
    e.iteration = d.iteration;
    events_.push_back(e);
    return e;
  }

  std::vector<ledger::AgentEvent> events() const {
    std::lock_guard lock(mu_);
    return events_;
  }

  // Prompt payloads of one agent, in order.
  std::vector<std::string> prompts(const std::string& agent_id) const {
    std::vector<std::string> out;
    for (const auto& e : events()) {
      if (e.kind == ledger::EventKind::Prompt && e.agent_id == agent_id) {
        out.push_back(e.payload);
      }
    }
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::vector<ledger::AgentEvent> events_;
};

inline EvidenceItem item(const std::string& id, SourceId source,
                         std::vector<std::string> genes,
                         const std::string& body = "supporting evidence text") {
  return EvidenceItem::make(id, source, std::move(genes), "Title for " + id,
                            body, "https://example.org/" + id);
}

// Bundle with one item per gene: "<slug>:<n>" for n = 1..genes.size().
inline EvidenceBundle bundle_for(SourceId source,
                                 const std::vector<std::string>& genes) {
  std::vector<EvidenceItem> items;
  int n = 1;
  for (const auto& g : genes) {
    items.push_back(item(std::string(slug(source)) + ":" + std::to_string(n++),
                         source, {g}));
  }
  return EvidenceBundle::make(source, std::move(items), at_ms(0));
}

inline ResearchBrief brief_for(const std::vector<std::string>& genes) {
  return ResearchBrief::make("Metastatic tumor cohort",
                             "Which genes are actionable?",
                             GeneSet::from_symbols(genes));
}

// Structurally valid analysis JSON citing `cites`.
inline std::string analysis_text(const std::vector<std::string>& genes,
                                 const std::vector<std::string>& cites) {
  Json expl = Json::array();
  for (const auto& g : genes) {
    expl.push_back({{"gene", g}, {"explanation", g + " matters here."}});
  }
  Json c = Json::array();
  for (const auto& id : cites) c.push_back({{"evidence_id", id}});
  return Json{{"relevance_explanations", expl},
              {"summary", "Summary of the evidence."},
              {"conclusions", Json::array({"A conclusion."})},
              {"citations", c}}
      .dump();
}

// Valid report JSON: one cited novel and well-known finding per gene.
inline std::string report_text(const std::vector<std::string>& novel,
                               const std::vector<std::string>& known,
                               const std::string& cite) {
  auto findings = [&](const std::vector<std::string>& genes,
                      const std::string& what) {
    Json arr = Json::array();
    for (const auto& g : genes) {
      arr.push_back({{"text", g + " " + what},
                     {"citations", Json::array({{{"evidence_id", cite}}})}});
    }
    return arr;
  };
  return Json{{"novel_biomarkers", findings(novel, "is a potential biomarker.")},
              {"implications",
               Json::array({{{"text", "Therapy choice is affected."},
                             {"citations", Json::array()}}})},
              {"well_known_interactions",
               findings(known, "has a known drug interaction.")},
              {"conclusions", Json::array({{{"text", "Actionable genes exist."}}})}}
      .dump();
}

inline std::shared_ptr<llm::ScriptedBackend> scripted(const Json& script) {
  return std::make_shared<llm::ScriptedBackend>(script);
}

// Gateway that never really sleeps between retries.
inline std::unique_ptr<llm::LlmGateway> gateway_for(
    std::shared_ptr<llm::ChatBackend> backend,
    std::shared_ptr<llm::TokenBudget> budget = nullptr) {
  return std::make_unique<llm::LlmGateway>(
      std::move(backend), std::move(budget), llm::RetryPolicy{},
      [](std::chrono::milliseconds) {});
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("evsynth-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int range(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
  }

  // One feedback bullet: printable text without newlines, including
  // punctuation, quotes, braces and a non-ASCII word now and then.
  std::string bullet() {
    static const std::vector<std::string> words = {
        "cite",   "the",     "CIViC",   "item",  "for",      "BRAF",
        "claim",  "clarify", "summary", "{json}", "\"quoted\"", "50%",
        "p<0.05", "KRAS/G12D", "naïve",  "α-helix", "[ref]",    "x\\y",
        "$var",   "≥",       "#tag",    "a*b",   "(note)",   "12"};
    std::string s;
    const int n = range(1, 12);
    for (int i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += pick(words);
    }
    return s + " #" + std::to_string(range(0, 1'000'000));
  }

  std::vector<std::string> bullets(int lo, int hi) {
    std::vector<std::string> out;
    const int n = range(lo, hi);
    for (int i = 0; i < n; ++i) out.push_back(bullet());
    return out;
  }

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// "NOT APPROVED" reply listing the bullets.
inline std::string rejection(const std::vector<std::string>& bullets) {
  std::string s = "NOT APPROVED";
  for (const auto& b : bullets) s += "\n- " + b;
  return s;
}

}  // namespace evsynth::testing
