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

#include <memory>
#include <string>
#include <thread>

#include "evsynth/service/run_manager.hpp"

namespace httplib {
class Server;
}

namespace evsynth::service {

// HTTP front end:
//   POST /runs                          -> 202 {"run_id"}
//   GET  /runs                          -> [{"run_id", "state"}]
//   GET  /runs/{id}/status              -> {"state", "iterations"}
//   GET  /runs/{id}/metrics             -> RunMetrics JSON
//   GET  /runs/{id}/report.{json|md|html}
//   GET  /runs/{id}/events?from_seq=N[&channel=c]   (text/event-stream)
// Errors are {"error": code, "field": detail, "message": text} with 400 for
// bad input, 404 for unknown runs and 409 for reports that are not ready.
// Report responses carry X-Run-Status (e.g. "ExhaustedIterations").
class HttpService {
 public:
  explicit HttpService(RunManager& runs);
  ~HttpService();

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port, or -1 on failure.
  int start(const std::string& host, int port);
  // Serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  void stop();

 private:
  void install_routes();

  RunManager& runs_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

// "ExhaustedIterations", "Completed", ...
std::string status_header_value(RunState s);

}  // namespace evsynth::service
