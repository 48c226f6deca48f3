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

#include "evsynth/ledger/event.hpp"
#include "evsynth/llm/gateway.hpp"

namespace evsynth::analysis {

// Appends a Prompt event, calls the gateway, then appends the Response event
// carrying the call's token usage. On failure an Anomaly event is appended and
// the error rethrown.
llm::CompletionResult call_model(llm::LlmGateway& gateway,
                                 ledger::EventSink& sink,
                                 const llm::PromptEnvelope& envelope);

// Payload stored for a Prompt event.
std::string prompt_payload(const llm::PromptEnvelope& envelope);

}  // namespace evsynth::analysis
