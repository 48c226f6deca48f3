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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evsynth/analysis/pipeline.hpp"
#include "evsynth/ledger/run_ledger.hpp"
#include "evsynth/llm/backend.hpp"
#include "evsynth/llm/gateway.hpp"
#include "evsynth/sources/evidence_source.hpp"

namespace evsynth::workflow {

struct WorkflowConfig {
  sources::SourceMode mode = sources::SourceMode::Fixture;
  // Directory holding civic.json, pharmgkb.json and enrichment.json.
  std::filesystem::path fixture_dir;
  // Live-mode endpoint overrides, keyed by source.
  std::map<SourceId, std::string> endpoints;
  int max_iterations = analysis::kDefaultMaxIterations;
  int integration_max_iterations = analysis::kDefaultMaxIterations;
  int max_items_per_gene = sources::kDefaultMaxItemsPerGene;
  std::optional<std::size_t> token_ceiling;

  // Throws ValidationFailed naming the offending field.
  void validate() const;
};

struct RunEnvironment {
  std::shared_ptr<llm::ChatBackend> backend;
  llm::RetryPolicy retry;
  llm::Sleeper sleeper;  // empty: real sleeping
};

struct WorkflowResult {
  RunState state = RunState::Failed;
  std::optional<IntegratedReport> report;
  std::vector<analysis::AnalysisOutcome> analyses;  // configured source order
  std::size_t evidence_words = 0;                   // summed over bundles
  std::string failure;                              // set when Failed
};

// Fixture file for a source inside a fixture directory.
std::filesystem::path fixture_path(const std::filesystem::path& dir,
                                   SourceId source);

// Runs one whole workflow against a run already opened in the ledger:
// retrieval and the three analyses run concurrently, then integration. Every
// state change is a run.orchestrator Status event; the report is attached
// before the terminal one. Failures end the run in Failed with an Anomaly
// event instead of throwing.
WorkflowResult execute_run(ledger::RunLedger& ledger, const std::string& run_id,
                           const WorkflowConfig& config,
                           const RunEnvironment& env);

// Writes the per-source output documents as analyses/<source>.json.
void write_analysis_documents(
    const std::filesystem::path& run_dir,
    const std::vector<analysis::AnalysisOutcome>& analyses);

}  // namespace evsynth::workflow
