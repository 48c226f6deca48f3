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

#include "evsynth/ledger/run_ledger.hpp"

#include <sstream>

#include "evsynth/common/error.hpp"
#include "evsynth/common/hash.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/ledger/render.hpp"

namespace evsynth::ledger {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::FixtureMissing, p.string(), "file not found");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ManifestEntry write_file(const fs::path& dir, const std::string& name,
                         const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) {
    throw Error(ErrorCode::IoError, path.string(), "could not write file");
  }
  return {name, sha256_hex(content), content.size()};
}

Json inputs_json(const std::string& run_id, const RunInputs& inputs,
                 const llm::PriceTable& prices) {
  return Json{{"run_id", run_id},
              {"brief", to_json(inputs.brief)},
              {"settings", inputs.settings},
              {"price_table", prices.to_json()}};
}

}  // namespace

RunLedger::RunLedger(std::shared_ptr<const Clock> clock, llm::PriceTable prices,
                     LedgerOptions options)
    : clock_(std::move(clock)),
      prices_(std::move(prices)),
      options_(std::move(options)) {}

RunLedger::~RunLedger() = default;

RunLedger::RunLog& RunLedger::log(const std::string& run_id) const {
  std::shared_lock lock(runs_mu_);
  auto it = runs_.find(run_id);
  if (it == runs_.end()) {
    throw Error(ErrorCode::UnknownRun, run_id, "no such run");
  }
  return *it->second;
}

std::string RunLedger::event_line(const AgentEvent& e) const {
  if (options_.redact_payloads &&
      (e.kind == EventKind::Prompt || e.kind == EventKind::Response)) {
    auto copy = e;
    copy.payload =
        "[redacted: " + std::to_string(e.payload.size()) + " chars]";
    return to_json(copy).dump();
  }
  return to_json(e).dump();
}

void RunLedger::open_run(const std::string& run_id, RunInputs inputs) {
  if (text::trim(run_id).empty()) {
    throw Error(ErrorCode::ValidationFailed, "run_id", "run id is empty");
  }
  auto run = std::make_unique<RunLog>(std::move(inputs));
  if (options_.live_dir) {
    const auto dir = *options_.live_dir / run_id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    run->live.open(dir / "events.jsonl", std::ios::trunc);
    if (ec || !run->live) {
      throw Error(ErrorCode::IoError, dir.string(),
                  "cannot open live event file");
    }
  }
  std::unique_lock lock(runs_mu_);
  if (!runs_.emplace(run_id, std::move(run)).second) {
    throw Error(ErrorCode::ValidationFailed, run_id, "run id already in use");
  }
}

AgentEvent RunLedger::append_event(const std::string& run_id,
                                   EventDraft draft) {
  auto& run = log(run_id);
  std::unique_lock lock(run.mu);
  if (run.closed) {
    throw Error(ErrorCode::RunClosed, run_id,
                "run is terminal; no further events are accepted");
  }
  if (draft.state) {
    if (*draft.state != run.state &&
        !is_valid_transition(run.state, *draft.state)) {
      throw Error(ErrorCode::PreconditionViolated, run_id,
                  "illegal state change " + std::string(to_string(run.state)) +
                      " -> " + std::string(to_string(*draft.state)));
    }
  }
  AgentEvent e;
  e.run_id = run_id;
  e.seq = run.events.size() + 1;
  e.timestamp = clock_->now();
  e.agent_id = std::move(draft.agent_id);
  e.kind = draft.kind;
  e.payload = std::move(draft.payload);
  e.usage = std::move(draft.usage);
  e.state = draft.state;
  e.iteration = draft.iteration;
  if (e.state) {
    run.state = *e.state;
    run.closed = is_terminal(*e.state);
  }
  run.events.push_back(e);
  if (run.live.is_open()) {
    run.live << event_line(e) << '\n';
    run.live.flush();
    if (run.closed) run.live.close();
  }
  lock.unlock();
  run.cv.notify_all();
  return e;
}

void RunLedger::attach_report(const std::string& run_id,
                              IntegratedReport report) {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  if (run.closed) {
    throw Error(ErrorCode::RunClosed, run_id, "cannot attach to a closed run");
  }
  run.report = std::move(report);
}

bool RunLedger::has_run(const std::string& run_id) const {
  std::shared_lock lock(runs_mu_);
  return runs_.count(run_id) > 0;
}

std::vector<std::string> RunLedger::run_ids() const {
  std::shared_lock lock(runs_mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : runs_) ids.push_back(id);
  return ids;
}

RunInputs RunLedger::inputs(const std::string& run_id) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  return run.inputs;
}

std::optional<IntegratedReport> RunLedger::report(
    const std::string& run_id) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  return run.report;
}

RunStatus RunLedger::status(const std::string& run_id) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  return RunStatus{run.state, iteration_counts(run.events)};
}

bool RunLedger::is_closed(const std::string& run_id) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  return run.closed;
}

std::vector<AgentEvent> RunLedger::events(const std::string& run_id,
                                          std::uint64_t after_seq) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  if (after_seq >= run.events.size()) return {};
  return {run.events.begin() + static_cast<std::ptrdiff_t>(after_seq),
          run.events.end()};
}

EventBatch RunLedger::wait_events(const std::string& run_id,
                                  std::uint64_t after_seq,
                                  std::chrono::milliseconds timeout) const {
  auto& run = log(run_id);
  std::unique_lock lock(run.mu);
  run.cv.wait_for(lock, timeout, [&] {
    return run.closed || run.events.size() > after_seq;
  });
  EventBatch batch;
  batch.closed = run.closed;
  if (after_seq < run.events.size()) {
    batch.events.assign(
        run.events.begin() + static_cast<std::ptrdiff_t>(after_seq),
        run.events.end());
  }
  return batch;
}

RunMetrics RunLedger::snapshot_metrics(const std::string& run_id) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  return compute_metrics(run.events, run.inputs.brief.genes.size(), prices_);
}

PersistManifest RunLedger::persist_run(const std::string& run_id,
                                       const fs::path& root) const {
  auto& run = log(run_id);
  std::lock_guard lock(run.mu);
  if (!run.closed) {
    throw Error(ErrorCode::PreconditionViolated, run_id,
                "only terminal runs can be persisted");
  }
  PersistManifest manifest;
  manifest.directory = root / run_id;
  std::error_code ec;
  fs::create_directories(manifest.directory, ec);
  if (ec) {
    throw Error(ErrorCode::IoError, manifest.directory.string(), ec.message());
  }

  std::string lines;
  for (const auto& e : run.events) lines += event_line(e) + "\n";
  manifest.files.push_back(write_file(manifest.directory, "events.jsonl", lines));
  if (run.report) {
    manifest.files.push_back(write_file(manifest.directory, "report.json",
                                        to_json(*run.report).dump(2) + "\n"));
    manifest.files.push_back(write_file(
        manifest.directory, "report.md",
        render_report(*run.report, ReportFormat::Markdown, run.state)));
  }
  const auto metrics =
      compute_metrics(run.events, run.inputs.brief.genes.size(), prices_);
  manifest.files.push_back(write_file(manifest.directory, "metrics.json",
                                      to_json(metrics).dump(2) + "\n"));
  manifest.files.push_back(
      write_file(manifest.directory, "inputs.json",
                 inputs_json(run_id, run.inputs, prices_).dump(2) + "\n"));
  return manifest;
}

ReplayedRun load_run_directory(const fs::path& dir) {
  const auto inputs_path = dir / "inputs.json";
  const auto inputs = Json::parse(read_file(inputs_path), nullptr, false);
  if (inputs.is_discarded()) {
    throw Error(ErrorCode::ParseError, inputs_path.string(), "not valid JSON");
  }
  std::string run_id;
  std::optional<RunInputs> run_inputs;
  llm::PriceTable prices;
  try {
    run_id = inputs.at("run_id").get<std::string>();
    run_inputs = RunInputs{brief_from_json(inputs.at("brief")),
                           inputs.value("settings", Json::object())};
    prices = llm::PriceTable::from_json(
        inputs.value("price_table", Json::object()));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, inputs_path.string(), e.what());
  }

  std::vector<AgentEvent> events;
  std::optional<RunState> final_state;
  const auto lines = read_file(dir / "events.jsonl");
  for (const auto& line : text::split_lines(lines)) {
    if (text::trim(line).empty()) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorCode::ParseError, (dir / "events.jsonl").string(),
                  "malformed event line");
    }
    events.push_back(event_from_json(j));
    if (events.back().state) final_state = events.back().state;
  }
  std::optional<IntegratedReport> report;
  if (fs::exists(dir / "report.json")) {
    report = report_from_json(Json::parse(read_file(dir / "report.json")));
  }
  auto metrics =
      compute_metrics(events, run_inputs->brief.genes.size(), prices);
  return ReplayedRun{std::move(run_id),  std::move(*run_inputs),
                     std::move(events),  std::move(report),
                     std::move(prices),  std::move(metrics),
                     final_state};
}

}  // namespace evsynth::ledger
