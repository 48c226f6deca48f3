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
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/llm/backend.hpp"

namespace evsynth::llm {

// Deterministic backend answering from a script keyed by "agent_id/iteration".
//
// Script file: a JSON object whose values are either a response string, a
// list of responses served in order on repeated calls with the same key (the
// last one repeats), or {"fail": "transient" | "permanent"} to simulate a
// backend failure. "agent_id/*" is a fallback for any iteration.
//
// Token usage is the whitespace token count of the prompt messages and of
// the response text.
class ScriptedBackend final : public ChatBackend {
 public:
  explicit ScriptedBackend(const Json& script);
  // Throws FixtureMissing or ParseError.
  static std::shared_ptr<ScriptedBackend> from_file(
      const std::filesystem::path& path);

  std::string id() const override { return "mock"; }
  BackendReply send(const PromptEnvelope& envelope) override;

  static std::string key(const std::string& agent_id, int iteration);

  // Number of send() calls that reached the script.
  std::size_t calls() const;

 private:
  struct Entry {
    std::vector<Json> responses;
    std::size_t next = 0;
  };

  mutable std::mutex mu_;
  std::map<std::string, Entry> script_;
  std::size_t calls_ = 0;
};

}  // namespace evsynth::llm
