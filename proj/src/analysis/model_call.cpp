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

#include "evsynth/analysis/model_call.hpp"

#include <exception>

namespace evsynth::analysis {

std::string prompt_payload(const llm::PromptEnvelope& envelope) {
  return "[system]\n" + envelope.system_message + "\n\n[user]\n" +
         envelope.user_message;
}

llm::CompletionResult call_model(llm::LlmGateway& gateway,
                                 ledger::EventSink& sink,
                                 const llm::PromptEnvelope& envelope) {
  sink.append({envelope.agent_id, ledger::EventKind::Prompt,
               prompt_payload(envelope), std::nullopt, std::nullopt,
               envelope.iteration});
  llm::CompletionResult result;
  try {
    result = gateway.complete(envelope);
  } catch (const std::exception& e) {
    sink.append({envelope.agent_id, ledger::EventKind::Anomaly, e.what(),
                 std::nullopt, std::nullopt, envelope.iteration});
    throw;
  }
  sink.append({envelope.agent_id, ledger::EventKind::Response, result.text,
               ledger::EventUsage{result.prompt_tokens,
                                  result.completion_tokens, result.backend_id},
               std::nullopt, envelope.iteration});
  return result;
}

}  // namespace evsynth::analysis
