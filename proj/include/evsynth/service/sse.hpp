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

#include <string>

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/ledger/event.hpp"

namespace evsynth::service {

// Event JSON as sent to stream clients: the ledger record plus "channel".
Json stream_json(const ledger::AgentEvent& e);

// One server-sent-events frame:
//   id: <seq>
//   event: agent_event
//   data: <stream_json on one line>
//   <blank line>
std::string sse_event_frame(const ledger::AgentEvent& e);

// Final frame once the run is terminal and every event has been sent:
//   event: end
//   data: {"run_id": "...", "state": "...", "last_seq": N}
std::string sse_end_frame(const std::string& run_id, RunState state,
                          std::uint64_t last_seq);

}  // namespace evsynth::service
