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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "evsynth/common/clock.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/domain/types.hpp"
#include "evsynth/ledger/event.hpp"
#include "evsynth/ledger/metrics.hpp"
#include "evsynth/llm/pricing.hpp"

namespace evsynth::ledger {

struct LedgerOptions {
  // When set, each run's events are also appended to
  // <live_dir>/<run_id>/events.jsonl as they happen.
  std::optional<std::filesystem::path> live_dir;
  // Replace prompt/response text with a length marker in written files.
  bool redact_payloads = false;
};

struct RunInputs {
  ResearchBrief brief;
  Json settings = Json::object();  // source mode, iteration caps, backend ...
};

struct ManifestEntry {
  std::string path;  // relative to the run directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct PersistManifest {
  std::filesystem::path directory;
  std::vector<ManifestEntry> files;
};

struct EventBatch {
  std::vector<AgentEvent> events;
  bool closed = false;  // the run reached a terminal state
};

// Append-only audit trail for any number of concurrent runs. Appends to one
// run are linearizable; readers always see a gap-free prefix.
class RunLedger {
 public:
  RunLedger(std::shared_ptr<const Clock> clock, llm::PriceTable prices,
            LedgerOptions options = {});
  ~RunLedger();

  RunLedger(const RunLedger&) = delete;
  RunLedger& operator=(const RunLedger&) = delete;

  // Throws ValidationFailed if the id is taken.
  void open_run(const std::string& run_id, RunInputs inputs);

  // Assigns the next seq (starting at 1). A Status event with a terminal
  // state closes the run. Throws UnknownRun, RunClosed, or
  // PreconditionViolated for a backwards state move.
  AgentEvent append_event(const std::string& run_id, EventDraft draft);

  // Must be called before the terminal status event.
  void attach_report(const std::string& run_id, IntegratedReport report);

  bool has_run(const std::string& run_id) const;
  std::vector<std::string> run_ids() const;
  RunInputs inputs(const std::string& run_id) const;
  std::optional<IntegratedReport> report(const std::string& run_id) const;
  RunStatus status(const std::string& run_id) const;
  bool is_closed(const std::string& run_id) const;

  std::vector<AgentEvent> events(const std::string& run_id,
                                 std::uint64_t after_seq = 0) const;

  // Returns events with seq > after_seq, waiting up to `timeout` for at least
  // one to arrive unless the run is already closed.
  EventBatch wait_events(const std::string& run_id, std::uint64_t after_seq,
                         std::chrono::milliseconds timeout) const;

  // Recomputed from the event stream on every call.
  RunMetrics snapshot_metrics(const std::string& run_id) const;

  // Writes events.jsonl, inputs.json, metrics.json and, when a report is
  // attached, report.json and report.md under <root>/<run_id>/. Requires a
  // closed run (PreconditionViolated otherwise); IoError on write failure.
  PersistManifest persist_run(const std::string& run_id,
                              const std::filesystem::path& root) const;

  const llm::PriceTable& prices() const noexcept { return prices_; }
  const Clock& clock() const noexcept { return *clock_; }

 private:
  struct RunLog {
    explicit RunLog(RunInputs in) : inputs(std::move(in)) {}
    mutable std::mutex mu;
    mutable std::condition_variable cv;
    RunInputs inputs;
    std::vector<AgentEvent> events;
    std::optional<IntegratedReport> report;
    RunState state = RunState::Pending;
    bool closed = false;
    std::ofstream live;
  };

  RunLog& log(const std::string& run_id) const;
  std::string event_line(const AgentEvent& e) const;

  std::shared_ptr<const Clock> clock_;
  llm::PriceTable prices_;
  LedgerOptions options_;
  mutable std::shared_mutex runs_mu_;
  std::map<std::string, std::unique_ptr<RunLog>> runs_;
};

// Trail bound to one run; what pipelines write through.
class RunTrail final : public EventSink {
 public:
  RunTrail(RunLedger& ledger, std::string run_id)
      : ledger_(ledger), run_id_(std::move(run_id)) {}

  AgentEvent append(EventDraft draft) override {
    return ledger_.append_event(run_id_, std::move(draft));
  }
  const std::string& run_id() const noexcept { return run_id_; }

 private:
  RunLedger& ledger_;
  std::string run_id_;
};

// A persisted run directory read back from disk.
struct ReplayedRun {
  std::string run_id;
  RunInputs inputs;
  std::vector<AgentEvent> events;
  std::optional<IntegratedReport> report;
  llm::PriceTable prices;
  RunMetrics metrics;  // recomputed from events.jsonl
  std::optional<RunState> final_state;
};

// Throws FixtureMissing when the directory lacks events.jsonl or inputs.json.
ReplayedRun load_run_directory(const std::filesystem::path& dir);

}  // namespace evsynth::ledger
