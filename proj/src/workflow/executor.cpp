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

#include "evsynth/workflow/executor.hpp"

#include <exception>
#include <fstream>
#include <future>

#include "evsynth/common/error.hpp"
#include "evsynth/domain/agents.hpp"
#include "evsynth/integration/integration.hpp"

namespace evsynth::workflow {

namespace fs = std::filesystem;
using ledger::EventKind;

void WorkflowConfig::validate() const {
  if (max_iterations < 1) {
    throw Error(ErrorCode::ValidationFailed, "max_iterations",
                "must be at least 1");
  }
  if (integration_max_iterations < 1) {
    throw Error(ErrorCode::ValidationFailed, "integration_max_iterations",
                "must be at least 1");
  }
  if (max_items_per_gene < 1) {
    throw Error(ErrorCode::ValidationFailed, "max_items_per_gene",
                "must be at least 1");
  }
  if (token_ceiling && *token_ceiling == 0) {
    throw Error(ErrorCode::ValidationFailed, "token_ceiling",
                "must be positive when set");
  }
  if (mode == sources::SourceMode::Fixture && fixture_dir.empty()) {
    throw Error(ErrorCode::ValidationFailed, "fixture_set",
                "fixture mode needs a fixture directory");
  }
}

fs::path fixture_path(const fs::path& dir, SourceId source) {
  return dir / (std::string(slug(source)) + ".json");
}

namespace {

ledger::EventDraft status(RunState state, std::string note) {
  return {std::string(agents::kRunOrchestrator), EventKind::Status,
          std::move(note), std::nullopt, state, std::nullopt};
}

sources::Retrieval retrieve_one(SourceId source, const WorkflowConfig& config,
                                const GeneSet& genes, const Clock& clock,
                                ledger::EventSink& sink) {
  sources::SourceAdapter adapter;
  adapter.source = source;
  adapter.mode = config.mode;
  adapter.max_items_per_gene = config.max_items_per_gene;
  if (config.mode == sources::SourceMode::Fixture) {
    adapter.endpoint_or_path = fixture_path(config.fixture_dir, source).string();
  } else {
    auto it = config.endpoints.find(source);
    adapter.endpoint_or_path = it != config.endpoints.end()
                                   ? it->second
                                   : sources::default_endpoint(source);
  }
  const auto orchestrator = agents::orchestrator(source);
  try {
    auto r = sources::retrieve(adapter, genes, clock);
    sink.append({orchestrator, EventKind::Status,
                 "retrieved " + std::to_string(r.bundle.items().size()) +
                     " items (" + std::to_string(r.bundle.total_words()) +
                     " words); dropped " +
                     std::to_string(r.log.dropped_out_of_set) +
                     " out-of-set, " + std::to_string(r.log.dropped_by_cap) +
                     " over the per-gene cap",
                 std::nullopt, std::nullopt, std::nullopt});
    return r;
  } catch (const Error& e) {
    Error wrapped(ErrorCode::SourceUnavailable, std::string(to_string(source)),
                  e.what());
    sink.append({orchestrator, EventKind::Anomaly, wrapped.what(),
                 std::nullopt, std::nullopt, std::nullopt});
    throw wrapped;
  }
}

template <typename T>
std::vector<T> join_all(std::vector<std::future<T>>& futures) {
  std::vector<T> out;
  std::exception_ptr first;
  for (auto& f : futures) {
    try {
      out.push_back(f.get());
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

}  // namespace

WorkflowResult execute_run(ledger::RunLedger& ledger, const std::string& run_id,
                           const WorkflowConfig& config,
                           const RunEnvironment& env) {
  ledger::RunTrail trail(ledger, run_id);
  WorkflowResult result;
  const auto brief = ledger.inputs(run_id).brief;
  const auto& clock = ledger.clock();

  try {
    trail.append(status(RunState::Pending,
                        "run accepted: " + std::to_string(brief.genes.size()) +
                            " genes"));
    config.validate();
    auto budget = std::make_shared<llm::TokenBudget>(config.token_ceiling);
    llm::LlmGateway gateway(env.backend, budget, env.retry, env.sleeper);

    trail.append(status(RunState::Retrieving, "retrieving evidence"));
    std::vector<std::future<sources::Retrieval>> fetches;
    for (auto source : kAllSources) {
      fetches.push_back(std::async(std::launch::async, [&, source] {
        return retrieve_one(source, config, brief.genes, clock, trail);
      }));
    }
    const auto retrievals = join_all(fetches);
    for (const auto& r : retrievals) result.evidence_words += r.bundle.total_words();

    trail.append(status(RunState::Analyzing,
                        "analyzing " + std::to_string(result.evidence_words) +
                            " words of evidence"));
    std::vector<std::future<analysis::AnalysisOutcome>> runs;
    for (const auto& r : retrievals) {
      runs.push_back(std::async(std::launch::async, [&] {
        analysis::PipelineConfig pc{config.max_iterations, r.bundle.source()};
        return analysis::run_analysis(brief, r.bundle, pc, gateway, trail);
      }));
    }
    // Integration reads the per-source output documents, not live objects.
    for (const auto& o : join_all(runs)) {
      result.analyses.push_back(analysis::outcome_from_json(analysis::to_json(o)));
    }

    trail.append(status(RunState::Integrating, "integrating analyses"));
    const auto consolidated = integration::consolidate(result.analyses, brief);
    auto integrated = integration::run_integration(
        consolidated, {config.integration_max_iterations}, gateway, trail);

    result.state = integrated.status.state;
    result.report = integrated.report;
    ledger.attach_report(run_id, integrated.report);
    trail.append(status(result.state,
                        "run " + std::string(to_string(result.state)) +
                            " with report version " +
                            std::to_string(integrated.report.version)));
  } catch (const std::exception& e) {
    result.state = RunState::Failed;
    result.report.reset();
    result.failure = e.what();
    try {
      trail.append({std::string(agents::kRunOrchestrator), EventKind::Anomaly,
                    result.failure, std::nullopt, std::nullopt, std::nullopt});
      trail.append(status(RunState::Failed, "run failed"));
    } catch (const Error&) {
      // The run was already closed; nothing more can be recorded.
    }
  }
  return result;
}

void write_analysis_documents(
    const fs::path& run_dir,
    const std::vector<analysis::AnalysisOutcome>& analyses) {
  const auto dir = run_dir / "analyses";
  std::error_code ec;
  fs::create_directories(dir, ec);
  for (const auto& a : analyses) {
    const auto path = dir / (std::string(slug(a.final.source)) + ".json");
    std::ofstream out(path, std::ios::trunc);
    out << analysis::to_json(a).dump(2) << '\n';
    if (!out) {
      throw Error(ErrorCode::IoError, path.string(), "could not write file");
    }
  }
}

}  // namespace evsynth::workflow
