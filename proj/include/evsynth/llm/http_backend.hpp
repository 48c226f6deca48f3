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

#include <chrono>
#include <string>

#include "evsynth/llm/backend.hpp"

namespace evsynth::llm {

struct HttpBackendConfig {
  std::string url;      // full chat-completion endpoint URL
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  std::chrono::seconds timeout{120};
};

// Chat-completion client for the common wire shape:
//   request  {"model", "messages": [{"role", "content"}]}
//   response {"choices": [{"message": {"content"}}] | "text",
//             "usage": {"prompt_tokens", "completion_tokens"}}
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);

  std::string id() const override { return "http:" + config_.model; }
  BackendReply send(const PromptEnvelope& envelope) override;

 private:
  HttpBackendConfig config_;
};

// Response decoding, exposed for tests. Throws BackendUnavailable when no
// completion text can be found.
BackendReply parse_chat_response(const std::string& body);

}  // namespace evsynth::llm
