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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "evsynth/llm/backend.hpp"
#include "evsynth/llm/prompt.hpp"

namespace evsynth::llm {

struct CompletionResult {
  std::string text;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  double latency_seconds = 0.0;
  std::string backend_id;

  TokenUsage usage() const noexcept { return {prompt_tokens, completion_tokens}; }
};

// Per-run token ceiling. Reservation is a single compare-and-swap, so
// concurrent pipelines cannot jointly overspend.
class TokenBudget {
 public:
  explicit TokenBudget(std::optional<std::size_t> ceiling = std::nullopt)
      : ceiling_(ceiling) {}

  bool try_reserve(std::size_t tokens) noexcept;
  // Replaces a reservation by the tokens actually consumed.
  void settle(std::size_t reserved, std::size_t actual) noexcept;

  std::size_t used() const noexcept { return used_.load(); }
  std::optional<std::size_t> ceiling() const noexcept { return ceiling_; }

 private:
  std::optional<std::size_t> ceiling_;
  std::atomic<std::size_t> used_{0};
};

struct RetryPolicy {
  // Retries after the first attempt, each preceded by the matching delay.
  std::vector<std::chrono::milliseconds> backoff{
      std::chrono::seconds(1), std::chrono::seconds(2), std::chrono::seconds(4)};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Sends prompts to one backend on behalf of one run. Safe for concurrent use
// by that run's pipelines.
class LlmGateway {
 public:
  LlmGateway(std::shared_ptr<ChatBackend> backend,
             std::shared_ptr<TokenBudget> budget = nullptr,
             RetryPolicy retry = {}, Sleeper sleeper = {});

  // Reserves the prompt's estimated tokens against the budget first
  // (BudgetExceeded, no call made), retries transient failures per the
  // policy, and throws BackendUnavailable once they are exhausted.
  // Orchestrator agent ids are refused with PreconditionViolated.
  CompletionResult complete(const PromptEnvelope& envelope);

  const std::string& backend_id() const noexcept { return backend_id_; }
  TokenUsage totals() const;
  // Agent id of every successful call, in completion order.
  std::vector<std::string> call_log() const;
  std::size_t attempts() const noexcept { return attempts_.load(); }

 private:
  std::shared_ptr<ChatBackend> backend_;
  std::shared_ptr<TokenBudget> budget_;
  RetryPolicy retry_;
  Sleeper sleeper_;
  std::string backend_id_;

  std::atomic<std::size_t> attempts_{0};
  mutable std::mutex mu_;
  TokenUsage totals_;
  std::vector<std::string> call_log_;
};

}  // namespace evsynth::llm
