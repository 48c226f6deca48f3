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
#include <map>
#include <span>
#include <string>

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/ledger/event.hpp"
#include "evsynth/llm/pricing.hpp"

namespace evsynth::ledger {

struct RunMetrics {
  std::size_t total_prompt_tokens = 0;
  std::size_t total_completion_tokens = 0;
  double wall_time_seconds = 0.0;
  double cost = 0.0;
  std::size_t genes_analyzed = 0;
  std::size_t model_calls = 0;
  // "civic", "pharmgkb", "enrichment" and "integration" rounds started.
  std::map<std::string, int> iterations;

  std::size_t total_tokens() const noexcept {
    return total_prompt_tokens + total_completion_tokens;
  }
  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

// Pure function of the event stream: token totals and call counts come from
// Response events, wall time spans the first to the last event, iterations
// are the highest generator round seen per pipeline.
RunMetrics compute_metrics(std::span<const AgentEvent> events,
                           std::size_t genes_analyzed,
                           const llm::PriceTable& prices);

std::map<std::string, int> iteration_counts(std::span<const AgentEvent> events);

Json to_json(const RunMetrics& m);
RunMetrics metrics_from_json(const Json& j);

}  // namespace evsynth::ledger
