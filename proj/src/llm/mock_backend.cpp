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

#include "evsynth/llm/mock_backend.hpp"

#include <fstream>
#include <sstream>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"

namespace evsynth::llm {

ScriptedBackend::ScriptedBackend(const Json& script) {
  if (!script.is_object()) {
    throw Error(ErrorCode::ParseError, "script",
                "mock script must be a JSON object");
  }
  for (const auto& [k, v] : script.items()) {
    Entry e;
    if (v.is_array()) {
      for (const auto& r : v) e.responses.push_back(r);
    } else {
      e.responses.push_back(v);
    }
    for (const auto& r : e.responses) {
      if (!r.is_string() && !(r.is_object() && r.contains("fail"))) {
        throw Error(ErrorCode::ParseError, k,
                    "responses must be strings or {\"fail\": ...}");
      }
    }
    if (e.responses.empty()) {
      throw Error(ErrorCode::ParseError, k, "empty response list");
    }
    script_.emplace(k, std::move(e));
  }
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::FixtureMissing, path.string(),
                "mock script not found");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ParseError, path.string(), "mock script is not JSON");
  }
  return std::make_shared<ScriptedBackend>(j);
}

std::string ScriptedBackend::key(const std::string& agent_id, int iteration) {
  return agent_id + "/" + std::to_string(iteration);
}

std::size_t ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

BackendReply ScriptedBackend::send(const PromptEnvelope& envelope) {
  Json response;
  const auto k = key(envelope.agent_id, envelope.iteration);
  {
    std::lock_guard lock(mu_);
    ++calls_;
    auto it = script_.find(k);
    if (it == script_.end()) it = script_.find(envelope.agent_id + "/*");
    if (it == script_.end()) {
      throw Error(ErrorCode::BackendUnavailable, k,
                  "no scripted response for this agent and iteration");
    }
    auto& entry = it->second;
    response = entry.responses[std::min(entry.next, entry.responses.size() - 1)];
    ++entry.next;
  }
  if (response.is_object()) {
    const auto kind = response.at("fail").get<std::string>();
    if (kind == "transient") {
      throw TransientBackendError("scripted transient failure for " + k);
    }
    throw Error(ErrorCode::BackendUnavailable, k, "scripted permanent failure");
  }
  BackendReply reply;
  reply.text = response.get<std::string>();
  reply.usage = TokenUsage{envelope.token_estimate(),
                           text::count_words(reply.text)};
  return reply;
}

}  // namespace evsynth::llm
