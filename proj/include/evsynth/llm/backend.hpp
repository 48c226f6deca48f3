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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "evsynth/llm/prompt.hpp"

namespace evsynth::llm {

struct TokenUsage {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;

  std::size_t total() const noexcept { return prompt_tokens + completion_tokens; }
  TokenUsage& operator+=(const TokenUsage& o) noexcept {
    prompt_tokens += o.prompt_tokens;
    completion_tokens += o.completion_tokens;
    return *this;
  }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct BackendReply {
  std::string text;
  std::optional<TokenUsage> usage;  // absent when the backend reports none
};

// Raised by backends for failures worth retrying: transport errors and 5xx.
// Anything else is raised as Error(BackendUnavailable) and not retried.
class TransientBackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Stable id used to look up prices, e.g. "mock" or "http:gpt-4.1-mini".
  virtual std::string id() const = 0;
  virtual BackendReply send(const PromptEnvelope& envelope) = 0;
};

}  // namespace evsynth::llm
