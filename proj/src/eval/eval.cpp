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

#include "evsynth/eval/eval.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/ledger/run_ledger.hpp"
#include "evsynth/workflow/executor.hpp"

namespace evsynth::eval {

namespace fs = std::filesystem;

std::vector<Scenario> load_scenarios(const fs::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error(ErrorCode::FixtureMissing, file.string(),
                "scenario file not found");
  }
  const auto j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ParseError, file.string(), "not valid JSON");
  }
  const auto base = file.parent_path();
  std::vector<Scenario> out;
  try {
    const auto context = j.value("context", std::string());
    const auto question = j.value("question", std::string());
    for (const auto& s : j.at("scenarios")) {
      Scenario sc{s.at("name").get<std::string>(),
                  GeneSet::from_symbols(
                      s.at("genes").get<std::vector<std::string>>()),
                  s.value("context", context),
                  s.value("question", question),
                  base / s.at("fixture_dir").get<std::string>(),
                  {}};
      if (s.contains("mock_script")) {
        sc.mock_script = base / s.at("mock_script").get<std::string>();
      }
      out.push_back(std::move(sc));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, file.string(), e.what());
  }
  check_nesting(out);
  return out;
}

void check_nesting(std::span<const Scenario> scenarios) {
  for (std::size_t i = 1; i < scenarios.size(); ++i) {
    if (!scenarios[i - 1].genes.is_subset_of(scenarios[i].genes)) {
      throw Error(ErrorCode::NonNestedScenarios,
                  scenarios[i - 1].name + "->" + scenarios[i].name,
                  "gene set is not contained in the next scenario");
    }
  }
}

double reading_time(std::size_t words, double wpm) {
  if (!(wpm > 0.0)) {
    throw Error(ErrorCode::NonPositiveWpm, std::to_string(wpm),
                "reading speed must be positive");
  }
  return static_cast<double>(words) / wpm;
}

double speedup(double reading_minutes, double generation_minutes) {
  if (!(reading_minutes > 0.0) || !(generation_minutes > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput,
                std::to_string(reading_minutes) + "/" +
                    std::to_string(generation_minutes),
                "both durations must be positive");
  }
  return reading_minutes / generation_minutes;
}

namespace {

bool symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

void scan(const std::string& s, const GeneSet& genes, GeneHits& hits) {
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !symbol_char(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && symbol_char(s[j])) ++j;
    std::string token = s.substr(i, j - i);
    i = j;
    while (!token.empty() && token.front() == '-') token.erase(0, 1);
    while (!token.empty() && token.back() == '-') token.pop_back();
    if (token.empty()) continue;
    if (genes.contains(token)) {
      hits.insert(token);
      continue;
    }
    std::size_t p = 0;
    while (p <= token.size()) {
      auto q = token.find('-', p);
      if (q == std::string::npos) q = token.size();
      auto part = token.substr(p, q - p);
      if (!part.empty() && genes.contains(part)) hits.insert(part);
      p = q + 1;
    }
  }
}

}  // namespace

GeneHits highlighted_genes(const IntegratedReport& report,
                           const GeneSet& genes) {
  GeneHits hits;
  for (const auto& f : report.novel_biomarkers) scan(f.text, genes, hits);
  for (const auto& f : report.well_known_interactions) scan(f.text, genes, hits);
  return hits;
}

double jaccard(const GeneHits& a, const GeneHits& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& g : a) common += b.count(g);
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

ConsistencyStats consistency(std::span<const IntegratedReport> reports,
                             const GeneSet& genes) {
  if (reports.size() < 2) {
    throw Error(ErrorCode::TooFewReports, std::to_string(reports.size()),
                "need at least two reports");
  }
  std::vector<GeneHits> hits;
  for (const auto& r : reports) hits.push_back(highlighted_genes(r, genes));
  ConsistencyStats st;
  st.min = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    for (std::size_t k = i + 1; k < hits.size(); ++k) {
      const double j = jaccard(hits[i], hits[k]);
      st.pairwise.push_back(j);
      sum += j;
      st.min = std::min(st.min, j);
    }
  }
  st.mean = sum / static_cast<double>(st.pairwise.size());
  return st;
}

std::vector<Omission> nesting_check(
    std::span<const Scenario> scenarios,
    const std::map<std::string, IntegratedReport>& reports) {
  check_nesting(scenarios);
  auto report_of = [&](const Scenario& s) -> const IntegratedReport& {
    auto it = reports.find(s.name);
    if (it == reports.end()) {
      throw Error(ErrorCode::PreconditionViolated, s.name,
                  "no report for scenario");
    }
    return it->second;
  };
  std::vector<Omission> out;
  for (std::size_t i = 1; i < scenarios.size(); ++i) {
    const auto& small = scenarios[i - 1];
    const auto& large = scenarios[i];
    const auto before = highlighted_genes(report_of(small), small.genes);
    const auto after = highlighted_genes(report_of(large), large.genes);
    for (const auto& g : before) {
      if (!after.count(g)) out.push_back({small.name, large.name, g});
    }
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "scenario,words,reading_minutes,generation_minutes,speedup\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.words << ',' << r.reading_minutes << ','
        << r.generation_minutes << ',' << r.speedup << '\n';
  }
  return out.str();
}

std::vector<SweepRow> SweepResult::rows() const {
  std::vector<SweepRow> out;
  for (const auto& s : scenarios) out.push_back(s.row);
  return out;
}

SweepResult run_sweep(std::span<const Scenario> scenarios,
                      const BackendFactory& backend, int runs,
                      std::shared_ptr<const Clock> clock, double wpm) {
  if (runs < 1) {
    throw Error(ErrorCode::ValidationFailed, "runs", "must be at least 1");
  }
  SweepResult result;
  std::map<std::string, IntegratedReport> firsts;
  for (const auto& sc : scenarios) {
    ScenarioRuns sr;
    for (int r = 0; r < runs; ++r) {
      auto chat = backend(sc);
      llm::PriceTable prices;
      prices.set(chat->id(), {});
      ledger::RunLedger ledger(clock, prices);
      const auto run_id = sc.name + "-run" + std::to_string(r + 1);
      ledger.open_run(run_id,
                      {ResearchBrief::make(sc.context, sc.question, sc.genes),
                       Json{{"scenario", sc.name}}});
      workflow::WorkflowConfig config;
      config.fixture_dir = sc.fixture_dir;
      workflow::RunEnvironment env{chat, {}, {}};
      const auto out = workflow::execute_run(ledger, run_id, config, env);
      if (out.state == RunState::Failed) {
        throw Error(ErrorCode::PreconditionViolated, run_id,
                    "scenario run failed: " + out.failure);
      }
      sr.states.push_back(out.state);
      sr.reports.push_back(*out.report);
      if (r == 0) {
        const auto metrics = ledger.snapshot_metrics(run_id);
        // A run shorter than the clock's resolution counts as one tick.
        const double seconds = std::max(metrics.wall_time_seconds, 0.001);
        sr.row.scenario = sc.name;
        sr.row.words = out.evidence_words;
        sr.row.reading_minutes = reading_time(out.evidence_words, wpm);
        sr.row.generation_minutes = seconds / 60.0;
        sr.row.speedup = speedup(sr.row.reading_minutes, sr.row.generation_minutes);
        firsts.emplace(sc.name, *out.report);
      }
    }
    if (runs >= 2) sr.consistency = consistency(sr.reports, sc.genes);
    result.scenarios.push_back(std::move(sr));
  }
  result.omissions = nesting_check(scenarios, firsts);
  return result;
}

}  // namespace evsynth::eval
