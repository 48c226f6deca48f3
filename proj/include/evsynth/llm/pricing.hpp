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

#include <map>
#include <string>

#include "evsynth/domain/json_codec.hpp"
#include "evsynth/llm/backend.hpp"

namespace evsynth::llm {

struct Rate {
  double prompt_per_1k = 0.0;
  double completion_per_1k = 0.0;
};

class PriceTable {
 public:
  // Throws ValidationFailed on a negative rate.
  void set(const std::string& backend_id, Rate rate);
  const Rate* find(const std::string& backend_id) const;
  bool empty() const noexcept { return rates_.empty(); }

  // {"<backend id>": {"prompt_per_1k": x, "completion_per_1k": y}, ...}
  static PriceTable from_json(const Json& j);
  Json to_json() const;

 private:
  std::map<std::string, Rate> rates_;
};

using UsageByBackend = std::map<std::string, TokenUsage>;

// Sum over backends of tokens/1000 * rate. Throws UnknownBackend when usage
// names a backend missing from the table.
double estimate_cost(const UsageByBackend& usage, const PriceTable& table);

}  // namespace evsynth::llm
