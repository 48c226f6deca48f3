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

#include "evsynth/service/http_server.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>

#include "httplib.h"

#include "evsynth/common/error.hpp"
#include "evsynth/service/channels.hpp"
#include "evsynth/service/sse.hpp"

namespace evsynth::service {

namespace {

constexpr auto kPollInterval = std::chrono::milliseconds(250);

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownRun: return 404;
    case ErrorCode::NotReady: return 409;
    case ErrorCode::ValidationFailed:
    case ErrorCode::ParseError:
    case ErrorCode::EmptyGeneList:
    case ErrorCode::InvalidSymbol: return 400;
    default: return 500;
  }
}

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, http_status_for(e.code()),
            Json{{"error", to_string(e.code())},
                 {"field", e.detail()},
                 {"message", e.what()}});
}

template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, e);
  } catch (const std::exception& e) {
    send_json(res, 500, Json{{"error", "Internal"}, {"message", e.what()}});
  }
}

std::uint64_t parse_seq(const std::string& raw, const char* field) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc() || p != raw.data() + raw.size()) {
    throw Error(ErrorCode::ValidationFailed, field,
                "expected a non-negative integer");
  }
  return v;
}

struct StreamState {
  std::string run_id;
  std::uint64_t cursor = 0;
  std::string channel;  // empty: all channels
  bool finished = false;
};

}  // namespace

std::string status_header_value(RunState s) {
  switch (s) {
    case RunState::Pending: return "Pending";
    case RunState::Retrieving: return "Retrieving";
    case RunState::Analyzing: return "Analyzing";
    case RunState::Integrating: return "Integrating";
    case RunState::Completed: return "Completed";
    case RunState::ExhaustedIterations: return "ExhaustedIterations";
    case RunState::Failed: return "Failed";
  }
  return "";
}

HttpService::HttpService(RunManager& runs)
    : runs_(runs), server_(std::make_unique<httplib::Server>()) {
  // Event streams hold a worker each; keep plenty for short requests.
  server_->new_task_queue = [] { return new httplib::ThreadPool(64); };
  install_routes();
}

HttpService::~HttpService() { stop(); }

int HttpService::start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host)
                              : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) return -1;
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool HttpService::listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

void HttpService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void HttpService::install_routes() {
  auto& srv = *server_;
  auto& runs = runs_;

  srv.Post("/runs", [&runs](const httplib::Request& req,
                            httplib::Response& res) {
    guarded(res, [&] {
      const auto request = parse_run_request_text(req.body);
      const auto id = runs.submit(request);
      res.set_header("Location", "/runs/" + id);
      send_json(res, 202, Json{{"run_id", id}});
    });
  });

  srv.Get("/runs", [&runs](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json list = Json::array();
      for (const auto& id : runs.ledger().run_ids()) {
        list.push_back(
            Json{{"run_id", id}, {"state", to_string(runs.status(id).state)}});
      }
      send_json(res, 200, list);
    });
  });

  srv.Get(R"(/runs/([^/]+)/status)",
          [&runs](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              const auto id = req.matches[1].str();
              auto j = to_json(runs.status(id));
              j["run_id"] = id;
              send_json(res, 200, j);
            });
          });

  srv.Get(R"(/runs/([^/]+)/metrics)",
          [&runs](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              send_json(res, 200, ledger::to_json(runs.metrics(req.matches[1].str())));
            });
          });

  srv.Get(R"(/runs/([^/]+)/report\.(json|md|html))",
          [&runs](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              const auto fmt = req.matches[2].str();
              const auto kind = fmt == "json" ? ReportKind::Json
                                : fmt == "md" ? ReportKind::Markdown
                                              : ReportKind::Html;
              const auto doc = runs.report(req.matches[1].str(), kind);
              res.status = 200;
              res.set_header("X-Run-Status", status_header_value(doc.state));
              res.set_content(doc.body, doc.content_type);
            });
          });

  srv.Get(R"(/runs/([^/]+)/events)", [&runs](const httplib::Request& req,
                                              httplib::Response& res) {
    guarded(res, [&] {
      auto st = std::make_shared<StreamState>();
      st->run_id = req.matches[1].str();
      if (!runs.ledger().has_run(st->run_id)) {
        throw Error(ErrorCode::UnknownRun, st->run_id, "no such run");
      }
      if (req.has_param("from_seq")) {
        st->cursor = parse_seq(req.get_param_value("from_seq"), "from_seq");
      }
      if (req.has_header("Last-Event-ID")) {
        st->cursor = std::max(
            st->cursor,
            parse_seq(req.get_header_value("Last-Event-ID"), "Last-Event-ID"));
      }
      if (req.has_param("channel")) {
        st->channel = req.get_param_value("channel");
        if (!is_channel(st->channel)) {
          throw Error(ErrorCode::ValidationFailed, "channel",
                      "unknown channel '" + st->channel + "'");
        }
      }
      res.set_header("Cache-Control", "no-cache");
      res.set_header("X-Accel-Buffering", "no");
      auto& ledger = runs.ledger();
      res.set_chunked_content_provider(
          "text/event-stream",
          [st, &ledger](std::size_t, httplib::DataSink& sink) {
            if (st->finished) {
              sink.done();
              return true;
            }
            auto batch = ledger.wait_events(st->run_id, st->cursor, kPollInterval);
            std::string out;
            for (const auto& e : batch.events) {
              st->cursor = e.seq;
              if (!st->channel.empty() && channel_for(e.agent_id) != st->channel) {
                continue;
              }
              out += sse_event_frame(e);
            }
            if (batch.closed) {
              // wait_events returned everything up to the terminal event.
              out += sse_end_frame(st->run_id, ledger.status(st->run_id).state,
                                   st->cursor);
              st->finished = true;
            } else if (out.empty()) {
              out = ": keepalive\n\n";
            }
            if (!sink.write(out.data(), out.size())) return false;
            if (st->finished) sink.done();
            return true;
          });
    });
  });
}

}  // namespace evsynth::service
