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

#include "evsynth/service/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"

namespace evsynth::service {

namespace fs = std::filesystem;

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

namespace {

Json read_json(const fs::path& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ValidationFailed, what,
                "cannot open " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ValidationFailed, what,
                path.string() + " is not valid JSON");
  }
  return j;
}

long long parse_int(const std::string& field, const std::string& raw) {
  long long v = 0;
  const auto t = text::trim(raw);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) {
    throw Error(ErrorCode::ValidationFailed, field,
                "expected an integer, got '" + raw + "'");
  }
  return v;
}

bool parse_bool(const std::string& field, const std::string& raw) {
  const auto v = text::to_lower(text::trim(raw));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) {
    return false;
  }
  throw Error(ErrorCode::ValidationFailed, field,
              "expected a boolean, got '" + raw + "'");
}

void apply_file(ServiceConfig& c, const Json& j, const fs::path& base) {
  try {
    if (j.contains("backend")) {
      const auto& b = j.at("backend");
      const auto kind = b.value("kind", std::string("mock"));
      if (kind == "mock") {
        c.backend = BackendKind::Mock;
      } else if (kind == "http") {
        c.backend = BackendKind::Http;
      } else {
        throw Error(ErrorCode::ValidationFailed, "backend.kind",
                    "expected 'mock' or 'http'");
      }
      c.backend_url = b.value("url", c.backend_url);
      c.model = b.value("model", c.model);
      c.api_key = b.value("api_key", c.api_key);
    }
    auto rel = [&](const std::string& p) {
      fs::path path(p);
      return path.is_absolute() ? path : base / path;
    };
    if (j.contains("fixture_root")) {
      c.fixture_root = rel(j.at("fixture_root").get<std::string>());
    }
    if (j.contains("runs_dir")) c.runs_dir = rel(j.at("runs_dir").get<std::string>());
    c.max_iterations = j.value("max_iterations", c.max_iterations);
    c.integration_max_iterations =
        j.value("integration_max_iterations", c.integration_max_iterations);
    if (j.contains("token_ceiling") && !j.at("token_ceiling").is_null()) {
      c.token_ceiling = j.at("token_ceiling").get<std::size_t>();
    }
    c.redact_payloads = j.value("redact_payloads", c.redact_payloads);
    if (j.contains("price_table")) {
      c.prices = llm::PriceTable::from_json(j.at("price_table"));
    }
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ValidationFailed, "config", e.what());
  }
}

}  // namespace

ServiceConfig load_service_config(const std::optional<fs::path>& file,
                                  const EnvLookup& env) {
  ServiceConfig c;
  if (file) apply_file(c, read_json(*file, "config"), file->parent_path());

  if (auto v = env("EVSYNTH_BACKEND_URL")) {
    c.backend = BackendKind::Http;
    c.backend_url = *v;
  }
  if (auto v = env("EVSYNTH_MODEL")) c.model = *v;
  if (auto v = env("EVSYNTH_API_KEY")) c.api_key = *v;
  if (auto v = env("EVSYNTH_FIXTURE_ROOT")) c.fixture_root = *v;
  if (auto v = env("EVSYNTH_RUNS_DIR")) c.runs_dir = fs::path(*v);
  if (auto v = env("EVSYNTH_MAX_ITERATIONS")) {
    c.max_iterations =
        static_cast<int>(parse_int("EVSYNTH_MAX_ITERATIONS", *v));
    c.integration_max_iterations = c.max_iterations;
  }
  if (auto v = env("EVSYNTH_TOKEN_CEILING")) {
    const auto n = parse_int("EVSYNTH_TOKEN_CEILING", *v);
    if (n <= 0) {
      throw Error(ErrorCode::ValidationFailed, "EVSYNTH_TOKEN_CEILING",
                  "must be positive");
    }
    c.token_ceiling = static_cast<std::size_t>(n);
  }
  if (auto v = env("EVSYNTH_REDACT")) {
    c.redact_payloads = parse_bool("EVSYNTH_REDACT", *v);
  }
  if (auto v = env("EVSYNTH_PRICE_TABLE")) {
    c.prices = llm::PriceTable::from_json(read_json(*v, "EVSYNTH_PRICE_TABLE"));
  }

  if (c.max_iterations < 1 || c.integration_max_iterations < 1) {
    throw Error(ErrorCode::ValidationFailed, "max_iterations",
                "must be at least 1");
  }
  if (c.backend == BackendKind::Http && (c.backend_url.empty() || c.model.empty())) {
    throw Error(ErrorCode::ValidationFailed, "backend",
                "the HTTP backend needs both a URL and a model name");
  }
  // Unpriced backends cost nothing rather than failing every metrics call.
  if (!c.prices.find(backend_id(c))) c.prices.set(backend_id(c), {});
  return c;
}

std::string backend_id(const ServiceConfig& config) {
  return config.backend == BackendKind::Mock ? "mock" : "http:" + config.model;
}

}  // namespace evsynth::service
