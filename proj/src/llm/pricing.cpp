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

#include "evsynth/llm/pricing.hpp"

#include "evsynth/common/error.hpp"

namespace evsynth::llm {

void PriceTable::set(const std::string& backend_id, Rate rate) {
  if (rate.prompt_per_1k < 0 || rate.completion_per_1k < 0) {
    throw Error(ErrorCode::ValidationFailed, backend_id,
                "token rates must be non-negative");
  }
  rates_[backend_id] = rate;
}

const Rate* PriceTable::find(const std::string& backend_id) const {
  auto it = rates_.find(backend_id);
  return it == rates_.end() ? nullptr : &it->second;
}

PriceTable PriceTable::from_json(const Json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::ParseError, "price_table", "expected an object");
  }
  PriceTable table;
  for (const auto& [id, r] : j.items()) {
    if (!r.is_object()) {
      throw Error(ErrorCode::ParseError, "price_table." + id,
                  "expected {prompt_per_1k, completion_per_1k}");
    }
    table.set(id, Rate{r.value("prompt_per_1k", 0.0),
                       r.value("completion_per_1k", 0.0)});
  }
  return table;
}

Json PriceTable::to_json() const {
  Json j = Json::object();
  for (const auto& [id, r] : rates_) {
    j[id] = Json{{"prompt_per_1k", r.prompt_per_1k},
                 {"completion_per_1k", r.completion_per_1k}};
  }
  return j;
}

double estimate_cost(const UsageByBackend& usage, const PriceTable& table) {
  double cost = 0.0;
  for (const auto& [backend, u] : usage) {
    const auto* rate = table.find(backend);
    if (!rate) {
      throw Error(ErrorCode::UnknownBackend, backend,
                  "no price entry for this backend");
    }
    cost += static_cast<double>(u.prompt_tokens) / 1000.0 * rate->prompt_per_1k +
            static_cast<double>(u.completion_tokens) / 1000.0 *
                rate->completion_per_1k;
  }
  return cost;
}

}  // namespace evsynth::llm
