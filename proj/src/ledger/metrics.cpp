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

#include "evsynth/ledger/metrics.hpp"

#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"

namespace evsynth::ledger {

std::map<std::string, int> iteration_counts(std::span<const AgentEvent> events) {
  std::map<std::string, int> counts;
  for (auto s : kAllSources) counts[std::string(slug(s))] = 0;
  counts["integration"] = 0;
  for (const auto& e : events) {
    if (e.kind != EventKind::Prompt || !e.iteration) continue;
    std::string key;
    if (e.agent_id == agents::kComposer) {
      key = "integration";
    } else {
      for (auto s : kAllSources) {
        if (e.agent_id == agents::bioexpert(s)) key = std::string(slug(s));
      }
    }
    if (!key.empty() && *e.iteration > counts[key]) counts[key] = *e.iteration;
  }
  return counts;
}

RunMetrics compute_metrics(std::span<const AgentEvent> events,
                           std::size_t genes_analyzed,
                           const llm::PriceTable& prices) {
  RunMetrics m;
  m.genes_analyzed = genes_analyzed;
  llm::UsageByBackend by_backend;
  for (const auto& e : events) {
    if (!e.usage) continue;
    m.total_prompt_tokens += e.usage->prompt_tokens;
    m.total_completion_tokens += e.usage->completion_tokens;
    ++m.model_calls;
    by_backend[e.usage->backend_id] +=
        llm::TokenUsage{e.usage->prompt_tokens, e.usage->completion_tokens};
  }
  m.cost = llm::estimate_cost(by_backend, prices);
  if (!events.empty()) {
    m.wall_time_seconds =
        seconds_between(events.front().timestamp, events.back().timestamp);
  }
  m.iterations = iteration_counts(events);
  return m;
}

Json to_json(const RunMetrics& m) {
  Json iters = Json::object();
  for (const auto& [k, v] : m.iterations) iters[k] = v;
  return Json{{"total_prompt_tokens", m.total_prompt_tokens},
              {"total_completion_tokens", m.total_completion_tokens},
              {"total_tokens", m.total_tokens()},
              {"wall_time_seconds", m.wall_time_seconds},
              {"cost", m.cost},
              {"genes_analyzed", m.genes_analyzed},
              {"model_calls", m.model_calls},
              {"iterations", std::move(iters)}};
}

RunMetrics metrics_from_json(const Json& j) {
  try {
    RunMetrics m;
    m.total_prompt_tokens = j.at("total_prompt_tokens").get<std::size_t>();
    m.total_completion_tokens =
        j.at("total_completion_tokens").get<std::size_t>();
    m.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    m.cost = j.at("cost").get<double>();
    m.genes_analyzed = j.at("genes_analyzed").get<std::size_t>();
    m.model_calls = j.at("model_calls").get<std::size_t>();
    for (const auto& [k, v] : j.at("iterations").items()) {
      m.iterations[k] = v.get<int>();
    }
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, "metrics", e.what());
  }
}

}  // namespace evsynth::ledger
