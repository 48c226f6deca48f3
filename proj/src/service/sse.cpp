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

#include "evsynth/service/sse.hpp"

#include "evsynth/service/channels.hpp"

namespace evsynth::service {

Json stream_json(const ledger::AgentEvent& e) {
  auto j = to_json(e);
  j["channel"] = channel_for(e.agent_id);
  return j;
}

std::string sse_event_frame(const ledger::AgentEvent& e) {
  return "id: " + std::to_string(e.seq) + "\nevent: agent_event\ndata: " +
         stream_json(e).dump() + "\n\n";
}

std::string sse_end_frame(const std::string& run_id, RunState state,
                          std::uint64_t last_seq) {
  Json j{{"run_id", run_id}, {"state", to_string(state)}, {"last_seq", last_seq}};
  return "event: end\ndata: " + j.dump() + "\n\n";
}

}  // namespace evsynth::service
