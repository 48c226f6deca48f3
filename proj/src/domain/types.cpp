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

#include "evsynth/domain/types.hpp"

#include <algorithm>
#include <set>

#include "evsynth/common/error.hpp"
#include "evsynth/common/text.hpp"

namespace evsynth {

std::string_view to_string(SourceId id) noexcept {
  switch (id) {
    case SourceId::Civic: return "CIVIC";
    case SourceId::PharmGkb: return "PHARMGKB";
    case SourceId::Enrichment: return "ENRICHMENT";
  }
  return "CIVIC";
}

std::string_view slug(SourceId id) noexcept {
  switch (id) {
    case SourceId::Civic: return "civic";
    case SourceId::PharmGkb: return "pharmgkb";
    case SourceId::Enrichment: return "enrichment";
  }
  return "civic";
}

std::optional<SourceId> parse_source_id(std::string_view s) {
  auto upper = text::to_upper(text::trim(s));
  for (auto id : kAllSources) {
    if (upper == to_string(id)) return id;
  }
  return std::nullopt;
}

ResearchBrief ResearchBrief::make(std::string context, std::string question,
                                  GeneSet genes) {
  if (text::trim(question).empty()) {
    throw Error(ErrorCode::ValidationFailed, "question",
                "research question must not be empty");
  }
  return ResearchBrief{std::move(context), std::move(question),
                       std::move(genes)};
}

std::size_t evidence_word_count(std::string_view title, std::string_view body) {
  return text::count_words(title) + text::count_words(body);
}

EvidenceItem EvidenceItem::make(std::string id, SourceId source,
                                std::vector<std::string> genes,
                                std::string title, std::string body,
                                std::optional<std::string> citation_url,
                                int rank) {
  if (text::trim(id).empty()) {
    throw Error(ErrorCode::ValidationFailed, "id",
                "evidence items need a non-empty id");
  }
  EvidenceItem item;
  item.id_ = std::move(id);
  item.source_ = source;
  item.genes_ = std::move(genes);
  item.title_ = std::move(title);
  item.body_ = std::move(body);
  item.citation_url_ = std::move(citation_url);
  item.rank_ = rank;
  item.word_count_ = evidence_word_count(item.title_, item.body_);
  return item;
}

bool EvidenceItem::mentions_any(const GeneSet& genes) const {
  return std::any_of(genes_.begin(), genes_.end(),
                     [&](const std::string& g) { return genes.contains(g); });
}

EvidenceBundle EvidenceBundle::make(SourceId source,
                                    std::vector<EvidenceItem> items,
                                    Timestamp retrieved_at) {
  EvidenceBundle bundle;
  std::set<std::string_view> ids;
  for (const auto& item : items) {
    if (item.source() != source) {
      throw Error(ErrorCode::ValidationFailed, item.id(),
                  "item from " + std::string(to_string(item.source())) +
                      " placed in a " + std::string(to_string(source)) +
                      " bundle");
    }
    if (!ids.insert(item.id()).second) {
      throw Error(ErrorCode::ValidationFailed, item.id(),
                  "duplicate evidence id in bundle");
    }
    bundle.total_words_ += item.word_count();
  }
  bundle.source_ = source;
  bundle.items_ = std::move(items);
  bundle.retrieved_at_ = retrieved_at;
  return bundle;
}

const EvidenceItem* EvidenceBundle::find(std::string_view id) const {
  auto it = std::find_if(items_.begin(), items_.end(),
                         [&](const EvidenceItem& i) { return i.id() == id; });
  return it == items_.end() ? nullptr : &*it;
}

Verdict Verdict::approved() { return Verdict{}; }

Verdict Verdict::not_approved(std::vector<std::string> feedback) {
  if (feedback.empty()) {
    throw Error(ErrorCode::PreconditionViolated, "feedback",
                "a NOT APPROVED verdict needs at least one feedback bullet");
  }
  Verdict v;
  v.decision_ = Decision::NotApproved;
  v.feedback_ = std::move(feedback);
  return v;
}

std::string_view section_key(ReportSection s) noexcept {
  switch (s) {
    case ReportSection::NovelBiomarkers: return "novel_biomarkers";
    case ReportSection::Implications: return "implications";
    case ReportSection::WellKnownInteractions: return "well_known_interactions";
    case ReportSection::Conclusions: return "conclusions";
  }
  return "";
}

std::string_view section_title(ReportSection s) noexcept {
  switch (s) {
    case ReportSection::NovelBiomarkers: return "Potential Novel Biomarkers";
    case ReportSection::Implications: return "Implications";
    case ReportSection::WellKnownInteractions: return "Well-Known Interactions";
    case ReportSection::Conclusions: return "Conclusions";
  }
  return "";
}

const std::vector<Finding>& IntegratedReport::section(ReportSection s) const {
  switch (s) {
    case ReportSection::NovelBiomarkers: return novel_biomarkers;
    case ReportSection::Implications: return implications;
    case ReportSection::WellKnownInteractions: return well_known_interactions;
    case ReportSection::Conclusions: return conclusions;
  }
  return conclusions;
}

std::vector<Finding>& IntegratedReport::section(ReportSection s) {
  return const_cast<std::vector<Finding>&>(
      static_cast<const IntegratedReport&>(*this).section(s));
}

std::string_view to_string(RunState s) noexcept {
  switch (s) {
    case RunState::Pending: return "pending";
    case RunState::Retrieving: return "retrieving";
    case RunState::Analyzing: return "analyzing";
    case RunState::Integrating: return "integrating";
    case RunState::Completed: return "completed";
    case RunState::ExhaustedIterations: return "exhausted_iterations";
    case RunState::Failed: return "failed";
  }
  return "pending";
}

std::optional<RunState> parse_run_state(std::string_view s) {
  for (auto st : {RunState::Pending, RunState::Retrieving, RunState::Analyzing,
                  RunState::Integrating, RunState::Completed,
                  RunState::ExhaustedIterations, RunState::Failed}) {
    if (s == to_string(st)) return st;
  }
  return std::nullopt;
}

bool is_terminal(RunState s) noexcept {
  return s == RunState::Completed || s == RunState::ExhaustedIterations ||
         s == RunState::Failed;
}

bool is_valid_transition(RunState from, RunState to) noexcept {
  if (is_terminal(from)) return false;
  if (to == RunState::Failed) return true;
  return static_cast<int>(to) >= static_cast<int>(from);
}

}  // namespace evsynth
