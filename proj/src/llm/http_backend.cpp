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

#include "evsynth/llm/http_backend.hpp"

#include "httplib.h"

#include "evsynth/common/error.hpp"
#include "evsynth/common/url.hpp"
#include "evsynth/domain/json_codec.hpp"

namespace evsynth::llm {

HttpChatBackend::HttpChatBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  split_url(config_.url);  // fail early on a malformed URL
}

BackendReply parse_chat_response(const std::string& body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::BackendUnavailable, "response",
                "chat endpoint returned a non-JSON body");
  }
  BackendReply reply;
  bool found = false;
  if (j.contains("choices") && j.at("choices").is_array() &&
      !j.at("choices").empty()) {
    const auto& choice = j.at("choices").front();
    if (choice.contains("message") && choice.at("message").contains("content") &&
        choice.at("message").at("content").is_string()) {
      reply.text = choice.at("message").at("content").get<std::string>();
      found = true;
    } else if (choice.contains("text") && choice.at("text").is_string()) {
      reply.text = choice.at("text").get<std::string>();
      found = true;
    }
  }
  if (!found && j.contains("text") && j.at("text").is_string()) {
    reply.text = j.at("text").get<std::string>();
    found = true;
  }
  if (!found) {
    throw Error(ErrorCode::BackendUnavailable, "response",
                "no completion text in chat response");
  }
  if (j.contains("usage") && j.at("usage").is_object()) {
    const auto& u = j.at("usage");
    reply.usage = TokenUsage{u.value("prompt_tokens", std::size_t{0}),
                             u.value("completion_tokens", std::size_t{0})};
  }
  return reply;
}

BackendReply HttpChatBackend::send(const PromptEnvelope& envelope) {
  const auto url = split_url(config_.url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  Json request{
      {"model", config_.model},
      {"messages",
       Json::array({Json{{"role", "system"}, {"content", envelope.system_message}},
                    Json{{"role", "user"}, {"content", envelope.user_message}}})}};
  auto res = client.Post(url.path, headers, request.dump(), "application/json");
  if (!res) {
    throw TransientBackendError("chat endpoint unreachable: " +
                                httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw TransientBackendError("chat endpoint returned HTTP " +
                                std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::BackendUnavailable, config_.url,
                "chat endpoint returned HTTP " + std::to_string(res->status));
  }
  return parse_chat_response(res->body);
}

}  // namespace evsynth::llm
