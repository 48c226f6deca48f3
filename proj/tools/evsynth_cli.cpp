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

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "evsynth/common/error.hpp"
#include "evsynth/domain/json_codec.hpp"
#include "evsynth/eval/eval.hpp"
#include "evsynth/ledger/render.hpp"
#include "evsynth/ledger/run_ledger.hpp"
#include "evsynth/llm/http_backend.hpp"
#include "evsynth/llm/mock_backend.hpp"
#include "evsynth/service/config.hpp"
#include "evsynth/service/http_server.hpp"
#include "evsynth/workflow/executor.hpp"

namespace fs = std::filesystem;
using namespace evsynth;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::FixtureMissing, p.string(), "cannot read file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::trunc);
  out << body;
  if (!out) throw Error(ErrorCode::IoError, p.string(), "cannot write file");
}

struct RunArgs {
  std::string brief_file;
  std::string context;
  std::string question;
  std::string genes;
  std::string fixture_dir = "fixtures/scenarios/S1";
  std::string mock_script;
  std::string backend_url;
  std::string model;
  std::string out_dir = "runs";
  std::string run_id;
  bool live = false;
  bool redact = false;
  int max_iterations = 3;
  std::size_t token_ceiling = 0;
};

int cmd_run(const RunArgs& a) {
  ResearchBrief brief = [&] {
    if (!a.brief_file.empty()) return parse_brief_upload(slurp(a.brief_file));
    return ResearchBrief::make(a.context, a.question, parse_gene_list(a.genes));
  }();

  std::shared_ptr<llm::ChatBackend> backend;
  if (!a.backend_url.empty()) {
    auto key = service::process_env("EVSYNTH_API_KEY").value_or("");
    backend = std::make_shared<llm::HttpChatBackend>(
        llm::HttpBackendConfig{a.backend_url, a.model, key});
  } else {
    const fs::path script = a.mock_script.empty()
                                ? fs::path(a.fixture_dir) / "mock_script.json"
                                : fs::path(a.mock_script);
    backend = llm::ScriptedBackend::from_file(script);
  }

  llm::PriceTable prices;
  prices.set(backend->id(), {});
  if (auto p = service::process_env("EVSYNTH_PRICE_TABLE")) {
    prices = llm::PriceTable::from_json(Json::parse(slurp(*p)));
    if (!prices.find(backend->id())) prices.set(backend->id(), {});
  }
  ledger::RunLedger ledger(std::make_shared<SystemClock>(), prices,
                           {std::nullopt, a.redact});
  const auto run_id = a.run_id.empty() ? std::string("cli-run") : a.run_id;

  workflow::WorkflowConfig config;
  config.mode = a.live ? sources::SourceMode::Live : sources::SourceMode::Fixture;
  config.fixture_dir = a.fixture_dir;
  config.max_iterations = a.max_iterations;
  config.integration_max_iterations = a.max_iterations;
  if (a.token_ceiling > 0) config.token_ceiling = a.token_ceiling;

  ledger.open_run(run_id,
                  {brief, Json{{"source_mode", a.live ? "live" : "fixture"},
                               {"fixture_dir", a.fixture_dir},
                               {"max_iterations", a.max_iterations},
                               {"backend", backend->id()}}});
  const auto result =
      workflow::execute_run(ledger, run_id, config, {backend, {}, {}});
  const auto manifest = ledger.persist_run(run_id, a.out_dir);
  workflow::write_analysis_documents(manifest.directory, result.analyses);
  if (result.report) {
    write_text(manifest.directory / "report.html",
               ledger::render_report(*result.report, ledger::ReportFormat::Html,
                                     result.state));
  }

  std::cerr << "run " << run_id << ": " << to_string(result.state) << "\n";
  if (result.state == RunState::Failed) {
    std::cerr << "  " << result.failure << "\n";
    return 2;
  }
  std::cout << (manifest.directory / "report.md").string() << "\n";
  return 0;
}

struct EvalArgs {
  std::string scenarios = "fixtures/scenarios/scenarios.json";
  int runs = 5;
  double wpm = eval::kDefaultWpm;
  std::string csv;
};

int cmd_eval(const EvalArgs& a) {
  const auto scenarios = eval::load_scenarios(a.scenarios);
  auto factory = [](const eval::Scenario& s) -> std::shared_ptr<llm::ChatBackend> {
    return llm::ScriptedBackend::from_file(s.mock_script);
  };
  const auto result = eval::run_sweep(scenarios, factory, a.runs,
                                      std::make_shared<SystemClock>(), a.wpm);
  const auto rows = result.rows();
  const auto csv = eval::sweep_csv(rows);
  if (!a.csv.empty()) write_text(a.csv, csv);
  std::cout << csv;
  std::cout << "\nconsistency (pairwise Jaccard of highlighted genes over "
            << a.runs << " runs)\n";
  for (const auto& s : result.scenarios) {
    std::cout << "  " << s.row.scenario << ": ";
    if (a.runs < 2) {
      std::cout << "n/a\n";
    } else {
      std::cout << "mean " << s.consistency.mean << ", min "
                << s.consistency.min << "\n";
    }
  }
  std::cout << "omissions across nested scenarios: " << result.omissions.size()
            << "\n";
  for (const auto& o : result.omissions) {
    std::cout << "  " << o.gene << " at " << o.from << " -> " << o.to << "\n";
  }
  return result.omissions.empty() ? 0 : 3;
}

int cmd_replay(const std::string& dir, bool write) {
  const auto run = ledger::load_run_directory(dir);
  std::cout << "run " << run.run_id << ": " << run.events.size() << " events, "
            << "final state "
            << (run.final_state ? std::string(to_string(*run.final_state))
                                : std::string("none"))
            << "\n";
  std::cout << ledger::to_json(run.metrics).dump(2) << "\n";
  const auto stored = ledger::metrics_from_json(
      Json::parse(slurp(fs::path(dir) / "metrics.json")));
  const bool same = stored == run.metrics;
  std::cout << "metrics.json " << (same ? "matches" : "DIFFERS FROM")
            << " the replayed event stream\n";
  if (write && run.report) {
    write_text(fs::path(dir) / "report.md",
               ledger::render_report(*run.report, ledger::ReportFormat::Markdown,
                                     run.final_state));
    write_text(fs::path(dir) / "report.html",
               ledger::render_report(*run.report, ledger::ReportFormat::Html,
                                     run.final_state));
  }
  return same ? 0 : 4;
}

service::HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int cmd_serve(const std::string& config_file, const std::string& host, int port) {
  auto config = service::load_service_config(
      config_file.empty() ? std::nullopt
                          : std::optional<fs::path>(config_file));
  if (!host.empty()) config.host = host;
  if (port > 0) config.port = port;
  service::RunManager runs(config, service::default_backend_provider(config));
  service::HttpService http(runs);
  g_service = &http;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "evsynth serving on http://" << config.host << ":" << config.port
            << " (backend " << service::backend_id(config) << ")\n";
  const bool ok = http.listen(config.host, config.port);
  g_service = nullptr;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evsynth: multi-agent evidence synthesis for gene lists"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "execute one run and persist it");
  run_cmd->add_option("--brief", run.brief_file,
                      "input document {context, question, genes}");
  run_cmd->add_option("--context", run.context, "analysis context");
  run_cmd->add_option("--question", run.question, "research question");
  run_cmd->add_option("--genes", run.genes, "comma or space separated symbols");
  run_cmd->add_option("--fixtures", run.fixture_dir,
                      "directory with civic.json, pharmgkb.json, enrichment.json");
  run_cmd->add_option("--mock-script", run.mock_script,
                      "scripted replies (default <fixtures>/mock_script.json)");
  run_cmd->add_option("--backend-url", run.backend_url,
                      "chat completions endpoint; replaces the mock backend");
  run_cmd->add_option("--model", run.model, "model name for --backend-url");
  run_cmd->add_flag("--live", run.live, "query the public evidence APIs");
  run_cmd->add_option("--out", run.out_dir, "runs directory");
  run_cmd->add_option("--run-id", run.run_id, "run id (default cli-run)");
  run_cmd->add_option("--max-iterations", run.max_iterations)
      ->check(CLI::Range(1, 20));
  run_cmd->add_option("--token-ceiling", run.token_ceiling);
  run_cmd->add_flag("--redact", run.redact, "store payload lengths only");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "scenario sweep on the mock backend");
  eval_cmd->add_option("--scenarios", ev.scenarios, "scenarios.json");
  eval_cmd->add_option("--runs", ev.runs, "runs per scenario")
      ->check(CLI::Range(1, 100));
  eval_cmd->add_option("--wpm", ev.wpm, "reading speed, words per minute");
  eval_cmd->add_option("--csv", ev.csv, "also write the table here");

  std::string replay_dir;
  bool replay_write = false;
  auto* replay_cmd =
      app.add_subcommand("replay", "recompute metrics and re-render a run");
  replay_cmd->add_option("run_dir", replay_dir)->required();
  replay_cmd->add_flag("--write", replay_write,
                       "rewrite report.md and report.html");

  std::string config_file;
  std::string host;
  int port = 0;
  auto* serve_cmd = app.add_subcommand("serve", "start the HTTP service");
  serve_cmd->add_option("--config", config_file, "JSON config file");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*eval_cmd) return cmd_eval(ev);
    if (*replay_cmd) return cmd_replay(replay_dir, replay_write);
    if (*serve_cmd) return cmd_serve(config_file, host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
