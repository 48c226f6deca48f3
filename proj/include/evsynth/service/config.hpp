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

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "evsynth/llm/pricing.hpp"

namespace evsynth::service {

enum class BackendKind { Mock, Http };

struct ServiceConfig {
  BackendKind backend = BackendKind::Mock;
  std::string backend_url;  // OpenAI-style chat completions endpoint
  std::string model;
  std::string api_key;
  std::filesystem::path fixture_root = "fixtures/scenarios";
  std::optional<std::filesystem::path> runs_dir;
  int max_iterations = 3;
  int integration_max_iterations = 3;
  std::optional<std::size_t> token_ceiling;
  bool redact_payloads = false;
  llm::PriceTable prices;
  std::string host = "127.0.0.1";
  int port = 8080;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

// Loads an optional JSON config file, then applies environment overrides:
//   EVSYNTH_BACKEND_URL (selects the HTTP backend), EVSYNTH_MODEL,
//   EVSYNTH_API_KEY, EVSYNTH_FIXTURE_ROOT, EVSYNTH_RUNS_DIR,
//   EVSYNTH_MAX_ITERATIONS, EVSYNTH_TOKEN_CEILING, EVSYNTH_REDACT (1/true),
//   EVSYNTH_PRICE_TABLE (path to a price table JSON file).
// Throws ValidationFailed naming the bad setting.
ServiceConfig load_service_config(
    const std::optional<std::filesystem::path>& file,
    const EnvLookup& env = process_env);

// Backend id that runs under this config will report ("mock" or
// "http:<model>").
std::string backend_id(const ServiceConfig& config);

}  // namespace evsynth::service
