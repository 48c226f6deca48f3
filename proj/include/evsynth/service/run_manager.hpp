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

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "evsynth/common/clock.hpp"
#include "evsynth/ledger/run_ledger.hpp"
#include "evsynth/llm/backend.hpp"
#include "evsynth/llm/gateway.hpp"
#include "evsynth/service/config.hpp"
#include "evsynth/service/request.hpp"

namespace evsynth::service {

// Builds the chat backend for one run.
using BackendProvider =
    std::function<std::shared_ptr<llm::ChatBackend>(const RunRequest&)>;

// Mock backends read <fixture root>/<fixture set>/mock_script.json; HTTP
// backends use the configured endpoint.
BackendProvider default_backend_provider(const ServiceConfig& config);

struct RenderedReport {
  std::string body;
  std::string content_type;
  RunState state = RunState::Completed;
};

enum class ReportKind { Json, Markdown, Html };

// Owns the ledger and the worker thread of every submitted run.
class RunManager {
 public:
  RunManager(ServiceConfig config, BackendProvider backends,
             std::shared_ptr<const Clock> clock = std::make_shared<SystemClock>(),
             llm::RetryPolicy retry = {}, llm::Sleeper sleeper = {});
  ~RunManager();  // waits for running workflows

  RunManager(const RunManager&) = delete;
  RunManager& operator=(const RunManager&) = delete;

  // Opens the run and starts it on its own thread; returns at once.
  std::string submit(const RunRequest& request);

  RunStatus status(const std::string& run_id) const;      // UnknownRun
  ledger::RunMetrics metrics(const std::string& run_id) const;
  // Throws UnknownRun, or NotReady while the run is in flight or when it
  // failed without a report.
  RenderedReport report(const std::string& run_id, ReportKind kind) const;

  // Blocks until the run is terminal or the timeout passes.
  bool wait(const std::string& run_id, std::chrono::milliseconds timeout) const;

  ledger::RunLedger& ledger() noexcept { return ledger_; }
  const ledger::RunLedger& ledger() const noexcept { return ledger_; }
  const ServiceConfig& config() const noexcept { return config_; }

 private:
  std::string next_run_id();
  void execute(const std::string& run_id, RunRequest request);

  ServiceConfig config_;
  BackendProvider backends_;
  llm::RetryPolicy retry_;
  llm::Sleeper sleeper_;
  ledger::RunLedger ledger_;
  std::atomic<std::uint64_t> counter_{0};
  std::string instance_tag_;

  std::mutex threads_mu_;
  std::vector<std::thread> threads_;
};

}  // namespace evsynth::service
