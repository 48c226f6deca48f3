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

#include "evsynth/ledger/event.hpp"

#include "evsynth/common/error.hpp"

namespace evsynth::ledger {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Prompt: return "prompt";
    case EventKind::Response: return "response";
    case EventKind::Verdict: return "verdict";
    case EventKind::Status: return "status";
    case EventKind::Anomaly: return "anomaly";
  }
  return "status";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (auto k : {EventKind::Prompt, EventKind::Response, EventKind::Verdict,
                 EventKind::Status, EventKind::Anomaly}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

Json to_json(const AgentEvent& e) {
  Json j{{"run_id", e.run_id},
         {"seq", e.seq},
         {"timestamp", format_timestamp(e.timestamp)},
         {"agent_id", e.agent_id},
         {"kind", std::string(to_string(e.kind))},
         {"payload", e.payload}};
  j["token_usage"] =
      e.usage ? Json{{"prompt_tokens", e.usage->prompt_tokens},
                     {"completion_tokens", e.usage->completion_tokens},
                     {"backend_id", e.usage->backend_id}}
              : Json(nullptr);
  j["state"] = e.state ? Json(std::string(to_string(*e.state))) : Json(nullptr);
  j["iteration"] = e.iteration ? Json(*e.iteration) : Json(nullptr);
  return j;
}

AgentEvent event_from_json(const Json& j) {
  try {
    AgentEvent e;
    e.run_id = j.at("run_id").get<std::string>();
    e.seq = j.at("seq").get<std::uint64_t>();
    e.timestamp = parse_timestamp(j.at("timestamp").get<std::string>());
    e.agent_id = j.at("agent_id").get<std::string>();
    auto kind = parse_event_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::ParseError, "kind", "unknown event kind");
    e.kind = *kind;
    e.payload = j.at("payload").get<std::string>();
    if (j.contains("token_usage") && !j.at("token_usage").is_null()) {
      const auto& u = j.at("token_usage");
      e.usage = EventUsage{u.at("prompt_tokens").get<std::size_t>(),
                           u.at("completion_tokens").get<std::size_t>(),
                           u.at("backend_id").get<std::string>()};
    }
    if (j.contains("state") && !j.at("state").is_null()) {
      e.state = parse_run_state(j.at("state").get<std::string>());
      if (!e.state) throw Error(ErrorCode::ParseError, "state", "unknown state");
    }
    if (j.contains("iteration") && !j.at("iteration").is_null()) {
      e.iteration = j.at("iteration").get<int>();
    }
    return e;
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, "event", ex.what());
  }
}

}  // namespace evsynth::ledger
