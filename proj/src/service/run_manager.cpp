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

#include "evsynth/service/run_manager.hpp"

#include <cstdio>
#include <iostream>
#include <random>

#include "evsynth/common/error.hpp"
#include "evsynth/ledger/render.hpp"
#include "evsynth/llm/http_backend.hpp"
#include "evsynth/llm/mock_backend.hpp"
#include "evsynth/workflow/executor.hpp"

namespace evsynth::service {

namespace fs = std::filesystem;

BackendProvider default_backend_provider(const ServiceConfig& config) {
  if (config.backend == BackendKind::Http) {
    llm::HttpBackendConfig http{config.backend_url, config.model,
                                config.api_key};
    return [http](const RunRequest&) -> std::shared_ptr<llm::ChatBackend> {
      return std::make_shared<llm::HttpChatBackend>(http);
    };
  }
  const auto root = config.fixture_root;
  return [root](const RunRequest& req) -> std::shared_ptr<llm::ChatBackend> {
    const auto script = root / req.fixture_set / "mock_script.json";
    if (!fs::exists(script)) {
      // Every model call will fail; retrieval usually fails first anyway.
      return std::make_shared<llm::ScriptedBackend>(Json::object());
    }
    return llm::ScriptedBackend::from_file(script);
  };
}

RunManager::RunManager(ServiceConfig config, BackendProvider backends,
                       std::shared_ptr<const Clock> clock,
                       llm::RetryPolicy retry, llm::Sleeper sleeper)
    : config_(std::move(config)),
      backends_(std::move(backends)),
      retry_(std::move(retry)),
      sleeper_(std::move(sleeper)),
      ledger_(std::move(clock), config_.prices,
              ledger::LedgerOptions{config_.runs_dir, config_.redact_payloads}) {
  std::random_device rd;
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", rd());
  instance_tag_ = buf;
}

RunManager::~RunManager() {
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(threads_mu_);
    threads.swap(threads_);
  }
  for (auto& t : threads) {
    if (t.joinable()) t.join();
  }
}

std::string RunManager::next_run_id() {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04llu",
                static_cast<unsigned long long>(++counter_));
  return "run-" + instance_tag_ + "-" + buf;
}

std::string RunManager::submit(const RunRequest& request) {
  const auto run_id = next_run_id();
  Json settings{
      {"source_mode",
       request.source_mode == sources::SourceMode::Live ? "live" : "fixture"},
      {"fixture_set", request.fixture_set},
      {"max_iterations", request.max_iterations.value_or(config_.max_iterations)},
      {"integration_max_iterations",
       request.max_iterations.value_or(config_.integration_max_iterations)},
      {"token_ceiling", request.token_ceiling
                            ? Json(*request.token_ceiling)
                            : (config_.token_ceiling ? Json(*config_.token_ceiling)
                                                     : Json(nullptr))},
      {"backend", backend_id(config_)}};
  ledger_.open_run(run_id, {request.brief, std::move(settings)});
  std::lock_guard lock(threads_mu_);
  threads_.emplace_back([this, run_id, request] { execute(run_id, request); });
  return run_id;
}

void RunManager::execute(const std::string& run_id, RunRequest request) {
  workflow::WorkflowConfig wc;
  wc.mode = request.source_mode;
  wc.fixture_dir = config_.fixture_root / request.fixture_set;
  wc.max_iterations = request.max_iterations.value_or(config_.max_iterations);
  wc.integration_max_iterations =
      request.max_iterations.value_or(config_.integration_max_iterations);
  wc.token_ceiling =
      request.token_ceiling ? request.token_ceiling : config_.token_ceiling;

  workflow::RunEnvironment env{nullptr, retry_, sleeper_};
  try {
    env.backend = backends_(request);
  } catch (const std::exception& e) {
    std::cerr << "evsynth: backend for " << run_id << " unavailable: "
              << e.what() << "\n";
    env.backend = std::make_shared<llm::ScriptedBackend>(Json::object());
  }
  const auto result = workflow::execute_run(ledger_, run_id, wc, env);

  if (config_.runs_dir) {
    try {
      const auto manifest = ledger_.persist_run(run_id, *config_.runs_dir);
      workflow::write_analysis_documents(manifest.directory, result.analyses);
    } catch (const std::exception& e) {
      std::cerr << "evsynth: could not persist " << run_id << ": " << e.what()
                << "\n";
    }
  }
}

RunStatus RunManager::status(const std::string& run_id) const {
  return ledger_.status(run_id);
}

ledger::RunMetrics RunManager::metrics(const std::string& run_id) const {
  return ledger_.snapshot_metrics(run_id);
}

RenderedReport RunManager::report(const std::string& run_id,
                                  ReportKind kind) const {
  const auto st = ledger_.status(run_id);
  if (!is_terminal(st.state)) {
    throw Error(ErrorCode::NotReady, run_id,
                "run is still " + std::string(to_string(st.state)));
  }
  const auto rep = ledger_.report(run_id);
  if (!rep) {
    throw Error(ErrorCode::NotReady, run_id, "run ended without a report");
  }
  switch (kind) {
    case ReportKind::Json:
      return {to_json(*rep).dump(2) + "\n", "application/json", st.state};
    case ReportKind::Markdown:
      return {ledger::render_report(*rep, ledger::ReportFormat::Markdown,
                                    st.state),
              "text/markdown; charset=utf-8", st.state};
    case ReportKind::Html:
      return {ledger::render_report(*rep, ledger::ReportFormat::Html, st.state),
              "text/html; charset=utf-8", st.state};
  }
  throw Error(ErrorCode::PreconditionViolated, "format", "unknown format");
}

bool RunManager::wait(const std::string& run_id,
                      std::chrono::milliseconds timeout) const {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::uint64_t seen = 0;
  while (true) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) return ledger_.is_closed(run_id);
    auto batch = ledger_.wait_events(
        run_id, seen,
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now));
    if (batch.closed) return true;
    seen += batch.events.size();
  }
}

}  // namespace evsynth::service
