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

#include "evsynth/service/request.hpp"

#include <cctype>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"
#include "evsynth/domain/gene_set.hpp"

namespace evsynth::service {

namespace {

std::string string_field(const Json& body, const char* name) {
  if (!body.contains(name) || body.at(name).is_null()) return {};
  if (!body.at(name).is_string()) {
    throw Error(ErrorCode::ValidationFailed, name, "must be a string");
  }
  return body.at(name).get<std::string>();
}

GeneSet genes_field(const Json& g) {
  try {
    if (g.is_string()) {
      return parse_gene_list(g.get<std::string>());
    }
    if (g.is_array()) {
      std::vector<std::string> raw;
      for (const auto& s : g) {
        if (!s.is_string()) {
          throw Error(ErrorCode::ValidationFailed, "genes",
                      "array entries must be strings");
        }
        raw.push_back(s.get<std::string>());
      }
      return normalize_gene_symbols(raw);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationFailed) throw;
    throw Error(ErrorCode::ValidationFailed, "genes", e.what());
  }
  throw Error(ErrorCode::ValidationFailed, "genes",
              "must be gene text or an array of symbols");
}

bool is_safe_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

}  // namespace

RunRequest parse_run_request(const Json& body) {
  if (!body.is_object()) {
    throw Error(ErrorCode::ValidationFailed, "body", "must be a JSON object");
  }
  std::string context;
  std::string question;
  std::optional<GeneSet> genes;

  if (body.contains("upload") && !body.at("upload").is_null()) {
    const auto& up = body.at("upload");
    ResearchBrief uploaded = [&] {
      try {
        return up.is_string() ? parse_brief_upload(up.get<std::string>())
                              : parse_brief_upload(up.dump());
      } catch (const Error& e) {
        throw Error(ErrorCode::ValidationFailed, "upload", e.what());
      }
    }();
    context = uploaded.context;
    question = uploaded.question;
    genes = uploaded.genes;
  }
  if (auto c = string_field(body, "context"); !c.empty()) context = c;
  if (auto q = string_field(body, "question"); !q.empty()) question = q;
  if (body.contains("genes") && !body.at("genes").is_null()) {
    genes = genes_field(body.at("genes"));
  }
  if (text::trim(question).empty()) {
    throw Error(ErrorCode::ValidationFailed, "question",
                "a research question is required");
  }
  if (!genes) {
    throw Error(ErrorCode::ValidationFailed, "genes",
                "a gene list or upload is required");
  }

  RunRequest req{ResearchBrief::make(context, question, *genes),
                 sources::SourceMode::Fixture, "", std::nullopt, std::nullopt};
  const auto mode = text::to_lower(string_field(body, "source_mode"));
  if (mode == "live") {
    req.source_mode = sources::SourceMode::Live;
  } else if (!mode.empty() && mode != "fixture") {
    throw Error(ErrorCode::ValidationFailed, "source_mode",
                "expected 'fixture' or 'live'");
  }
  req.fixture_set = string_field(body, "fixture_set");
  if (req.source_mode == sources::SourceMode::Fixture &&
      !is_safe_name(req.fixture_set)) {
    throw Error(ErrorCode::ValidationFailed, "fixture_set",
                "fixture mode needs a fixture set name of letters, digits, "
                "'-' or '_'");
  }
  if (body.contains("max_iterations") && !body.at("max_iterations").is_null()) {
    const auto& m = body.at("max_iterations");
    if (!m.is_number_integer() || m.get<long long>() < 1 ||
        m.get<long long>() > 20) {
      throw Error(ErrorCode::ValidationFailed, "max_iterations",
                  "must be an integer between 1 and 20");
    }
    req.max_iterations = m.get<int>();
  }
  if (body.contains("token_ceiling") && !body.at("token_ceiling").is_null()) {
    const auto& t = body.at("token_ceiling");
    if (!t.is_number_integer() || t.get<long long>() < 1) {
      throw Error(ErrorCode::ValidationFailed, "token_ceiling",
                  "must be a positive integer");
    }
    req.token_ceiling = t.get<std::size_t>();
  }
  return req;
}

RunRequest parse_run_request_text(std::string_view body_text) {
  auto j = Json::parse(body_text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::ValidationFailed, "body", "not valid JSON");
  }
  return parse_run_request(j);
}

}  // namespace evsynth::service
