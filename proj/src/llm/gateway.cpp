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

#include "evsynth/llm/gateway.hpp"

#include <thread>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/domain/agents.hpp"

namespace evsynth::llm {

bool TokenBudget::try_reserve(std::size_t tokens) noexcept {
  auto current = used_.load();
  do {
    if (ceiling_ && current + tokens > *ceiling_) return false;
  } while (!used_.compare_exchange_weak(current, current + tokens));
  return true;
}

void TokenBudget::settle(std::size_t reserved, std::size_t actual) noexcept {
  if (actual >= reserved) {
    used_.fetch_add(actual - reserved);
  } else {
    used_.fetch_sub(reserved - actual);
  }
}

LlmGateway::LlmGateway(std::shared_ptr<ChatBackend> backend,
                       std::shared_ptr<TokenBudget> budget, RetryPolicy retry,
                       Sleeper sleeper)
    : backend_(std::move(backend)),
      budget_(budget ? std::move(budget) : std::make_shared<TokenBudget>()),
      retry_(std::move(retry)),
      sleeper_(sleeper ? std::move(sleeper)
                       : Sleeper([](std::chrono::milliseconds d) {
                           std::this_thread::sleep_for(d);
                         })),
      backend_id_(backend_->id()) {}

CompletionResult LlmGateway::complete(const PromptEnvelope& envelope) {
  if (agents::is_orchestrator(envelope.agent_id)) {
    throw Error(ErrorCode::PreconditionViolated, envelope.agent_id,
                "orchestrators do not call language models");
  }
  const auto reserved = envelope.token_estimate();
  if (!budget_->try_reserve(reserved)) {
    throw Error(ErrorCode::BudgetExceeded, envelope.agent_id,
                "call needs ~" + std::to_string(reserved) + " tokens; " +
                    std::to_string(budget_->used()) + " of " +
                    std::to_string(budget_->ceiling().value_or(0)) +
                    " already used");
  }

  const auto started = std::chrono::steady_clock::now();
  BackendReply reply;
  for (std::size_t attempt = 0;; ++attempt) {
    ++attempts_;
    try {
      reply = backend_->send(envelope);
      break;
    } catch (const TransientBackendError& e) {
      if (attempt >= retry_.backoff.size()) {
        budget_->settle(reserved, 0);
        throw Error(ErrorCode::BackendUnavailable, envelope.agent_id,
                    std::string(e.what()) + " (after " +
                        std::to_string(attempt + 1) + " attempts)");
      }
      sleeper_(retry_.backoff[attempt]);
    } catch (...) {
      budget_->settle(reserved, 0);
      throw;
    }
  }

  CompletionResult result;
  result.text = std::move(reply.text);
  const auto usage = reply.usage.value_or(
      TokenUsage{reserved, text::count_words(result.text)});
  result.prompt_tokens = usage.prompt_tokens;
  result.completion_tokens = usage.completion_tokens;
  result.latency_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  result.backend_id = backend_id_;
  budget_->settle(reserved, usage.total());
  {
    std::lock_guard lock(mu_);
    totals_ += usage;
    call_log_.push_back(envelope.agent_id);
  }
  return result;
}

TokenUsage LlmGateway::totals() const {
  std::lock_guard lock(mu_);
  return totals_;
}

std::vector<std::string> LlmGateway::call_log() const {
  std::lock_guard lock(mu_);
  return call_log_;
}

}  // namespace evsynth::llm
