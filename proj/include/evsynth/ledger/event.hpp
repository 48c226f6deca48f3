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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "evsynth/common/clock.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/types.hpp"

namespace evsynth::ledger {

enum class EventKind { Prompt, Response, Verdict, Status, Anomaly };

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view s);

struct EventUsage {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::string backend_id;

  friend bool operator==(const EventUsage&, const EventUsage&) = default;
};

// What a producer supplies; the ledger assigns run id, seq and timestamp.
struct EventDraft {
  std::string agent_id;
  EventKind kind = EventKind::Status;
  std::string payload;
  std::optional<EventUsage> usage;  // Response events of model calls only
  std::optional<RunState> state;    // Status events that move the run state
  std::optional<int> iteration;
};

struct AgentEvent {
  std::string run_id;
  std::uint64_t seq = 0;
  Timestamp timestamp{};
  std::string agent_id;
  EventKind kind = EventKind::Status;
  std::string payload;
  std::optional<EventUsage> usage;
  std::optional<RunState> state;
  std::optional<int> iteration;

  friend bool operator==(const AgentEvent&, const AgentEvent&) = default;
};

Json to_json(const AgentEvent& e);
AgentEvent event_from_json(const Json& j);

// Producers (pipelines) write through this interface.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual AgentEvent append(EventDraft draft) = 0;
};

}  // namespace evsynth::ledger
