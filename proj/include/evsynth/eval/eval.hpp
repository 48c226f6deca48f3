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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "evsynth/common/clock.hpp"
#include "evsynth/domain/gene_set.hpp"
#include "evsynth/domain/types.hpp"
#include "evsynth/llm/backend.hpp"

namespace evsynth::eval {

inline constexpr double kDefaultWpm = 200.0;

struct Scenario {
  std::string name;
  GeneSet genes;
  std::string context;
  std::string question;
  std::filesystem::path fixture_dir;  // civic.json, pharmgkb.json, ...
  std::filesystem::path mock_script;  // scripted backend replies
};

// Reads scenarios.json:
//   {"context": "...", "question": "...",
//    "scenarios": [{"name": "S1", "genes": [...], "fixture_dir": "S1",
//                   "mock_script": "S1/mock_script.json"}, ...]}
// Paths are relative to the file. Throws NonNestedScenarios when a
// scenario's genes do not contain the previous scenario's genes.
std::vector<Scenario> load_scenarios(const std::filesystem::path& file);

// Throws NonNestedScenarios unless each gene set contains the previous one.
void check_nesting(std::span<const Scenario> scenarios);

// Minutes a reader needs for `words` at `wpm`. Throws NonPositiveWpm.
double reading_time(std::size_t words, double wpm = kDefaultWpm);

// reading / generation. Throws NonPositiveInput unless both are positive.
double speedup(double reading_minutes, double generation_minutes);

using GeneHits = std::set<std::string>;

// In-set gene symbols named in the novel-biomarker and well-known-interaction
// findings. Matching is by exact symbol on word tokens; a hyphenated token
// that is not itself a symbol is also tried part by part ("BRAF-mutant").
GeneHits highlighted_genes(const IntegratedReport& report,
                           const GeneSet& genes);

// |a ∩ b| / |a ∪ b|; two empty sets count as identical (1.0).
double jaccard(const GeneHits& a, const GeneHits& b);

struct ConsistencyStats {
  std::vector<double> pairwise;  // (0,1), (0,2), ..., (n-2,n-1)
  double mean = 0.0;
  double min = 0.0;
};

// Throws TooFewReports for fewer than two reports.
ConsistencyStats consistency(std::span<const IntegratedReport> reports,
                             const GeneSet& genes);

struct Omission {
  std::string from;  // smaller scenario
  std::string to;    // next larger scenario
  std::string gene;

  friend bool operator==(const Omission&, const Omission&) = default;
};

// Genes highlighted in a scenario but not in the next larger one. Throws
// NonNestedScenarios for non-nested input and PreconditionViolated when a
// scenario has no report.
std::vector<Omission> nesting_check(
    std::span<const Scenario> scenarios,
    const std::map<std::string, IntegratedReport>& reports);

struct SweepRow {
  std::string scenario;
  std::size_t words = 0;
  double reading_minutes = 0.0;
  double generation_minutes = 0.0;
  double speedup = 0.0;
};

std::string sweep_csv(std::span<const SweepRow> rows);

struct ScenarioRuns {
  SweepRow row;  // from the first run
  std::vector<IntegratedReport> reports;
  std::vector<RunState> states;
  ConsistencyStats consistency;  // only when runs >= 2
};

struct SweepResult {
  std::vector<ScenarioRuns> scenarios;
  std::vector<Omission> omissions;  // first run of each scenario

  std::vector<SweepRow> rows() const;
};

using BackendFactory =
    std::function<std::shared_ptr<llm::ChatBackend>(const Scenario&)>;

// Executes every scenario `runs` times in fixture mode. Generation time is
// the ledger's first-to-last event span.
SweepResult run_sweep(std::span<const Scenario> scenarios,
                      const BackendFactory& backend, int runs,
                      std::shared_ptr<const Clock> clock,
                      double wpm = kDefaultWpm);

}  // namespace evsynth::eval
