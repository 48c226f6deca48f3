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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evsynth/common/clock.hpp"
#include "evsynth/domain/gene_set.hpp"

namespace evsynth {

enum class SourceId { Civic, PharmGkb, Enrichment };

inline constexpr std::array<SourceId, 3> kAllSources = {
    SourceId::Civic, SourceId::PharmGkb, SourceId::Enrichment};

// "CIVIC", "PHARMGKB", "ENRICHMENT" as used in fixture files.
std::string_view to_string(SourceId id) noexcept;
// "civic", "pharmgkb", "enrichment" as used in agent ids and channels.
std::string_view slug(SourceId id) noexcept;
// Accepts either spelling, case-insensitively.
std::optional<SourceId> parse_source_id(std::string_view s);

struct ResearchBrief {
  std::string context;
  std::string question;
  GeneSet genes;

  // Throws ValidationFailed("question") when the question is blank.
  static ResearchBrief make(std::string context, std::string question,
                            GeneSet genes);
};

struct Citation {
  std::string evidence_id;
  std::optional<std::string> url;

  friend bool operator==(const Citation&, const Citation&) = default;
};

class EvidenceItem {
 public:
  // word_count is always derived from title and body.
  static EvidenceItem make(std::string id, SourceId source,
                           std::vector<std::string> genes, std::string title,
                           std::string body,
                           std::optional<std::string> citation_url,
                           int rank = 0);

  const std::string& id() const noexcept { return id_; }
  SourceId source() const noexcept { return source_; }
  const std::vector<std::string>& genes() const noexcept { return genes_; }
  const std::string& title() const noexcept { return title_; }
  const std::string& body() const noexcept { return body_; }
  const std::optional<std::string>& citation_url() const noexcept {
    return citation_url_;
  }
  // Position in the source's native result ordering (lower ranks first).
  int rank() const noexcept { return rank_; }
  std::size_t word_count() const noexcept { return word_count_; }

  bool mentions_any(const GeneSet& genes) const;

  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;

 private:
  EvidenceItem() = default;

  std::string id_;
  SourceId source_ = SourceId::Civic;
  std::vector<std::string> genes_;
  std::string title_;
  std::string body_;
  std::optional<std::string> citation_url_;
  int rank_ = 0;
  std::size_t word_count_ = 0;
};

std::size_t evidence_word_count(std::string_view title, std::string_view body);

class EvidenceBundle {
 public:
  // Throws ValidationFailed if an item belongs to another source or two items
  // share an id.
  static EvidenceBundle make(SourceId source, std::vector<EvidenceItem> items,
                             Timestamp retrieved_at);

  SourceId source() const noexcept { return source_; }
  const std::vector<EvidenceItem>& items() const noexcept { return items_; }
  Timestamp retrieved_at() const noexcept { return retrieved_at_; }
  std::size_t total_words() const noexcept { return total_words_; }
  bool empty() const noexcept { return items_.empty(); }

  const EvidenceItem* find(std::string_view id) const;

  friend bool operator==(const EvidenceBundle&, const EvidenceBundle&) = default;

 private:
  EvidenceBundle() = default;

  SourceId source_ = SourceId::Civic;
  std::vector<EvidenceItem> items_;
  Timestamp retrieved_at_{};
  std::size_t total_words_ = 0;
};

struct RelevanceExplanation {
  std::string gene;
  std::string explanation;

  friend bool operator==(const RelevanceExplanation&,
                         const RelevanceExplanation&) = default;
};

struct StructuredAnalysis {
  SourceId source = SourceId::Civic;
  int iteration = 1;
  std::vector<RelevanceExplanation> relevance_explanations;
  std::string summary;
  std::vector<std::string> conclusions;
  std::vector<Citation> citations;

  friend bool operator==(const StructuredAnalysis&,
                         const StructuredAnalysis&) = default;
};

enum class Decision { Approved, NotApproved };

class Verdict {
 public:
  static Verdict approved();
  // Throws PreconditionViolated when feedback is empty.
  static Verdict not_approved(std::vector<std::string> feedback);

  Decision decision() const noexcept { return decision_; }
  bool is_approved() const noexcept { return decision_ == Decision::Approved; }
  const std::vector<std::string>& feedback() const noexcept {
    return feedback_;
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  Verdict() = default;
  Decision decision_ = Decision::Approved;
  std::vector<std::string> feedback_;
};

struct Finding {
  std::string text;
  std::vector<Citation> citations;

  friend bool operator==(const Finding&, const Finding&) = default;
};

enum class ReportSection {
  NovelBiomarkers,
  Implications,
  WellKnownInteractions,
  Conclusions
};

inline constexpr std::array<ReportSection, 4> kReportSections = {
    ReportSection::NovelBiomarkers, ReportSection::Implications,
    ReportSection::WellKnownInteractions, ReportSection::Conclusions};

// JSON key, e.g. "well_known_interactions".
std::string_view section_key(ReportSection s) noexcept;
// Display heading, e.g. "Well-Known Interactions".
std::string_view section_title(ReportSection s) noexcept;

struct IntegratedReport {
  int version = 1;
  std::vector<Finding> novel_biomarkers;
  std::vector<Finding> implications;
  std::vector<Finding> well_known_interactions;
  std::vector<Finding> conclusions;

  const std::vector<Finding>& section(ReportSection s) const;
  std::vector<Finding>& section(ReportSection s);

  friend bool operator==(const IntegratedReport&,
                         const IntegratedReport&) = default;
};

// Evidence ids that a report may cite, with their canonical links.
using CitationIndex = std::map<std::string, std::optional<std::string>>;

enum class RunState {
  Pending,
  Retrieving,
  Analyzing,
  Integrating,
  Completed,
  ExhaustedIterations,
  Failed
};

std::string_view to_string(RunState s) noexcept;
std::optional<RunState> parse_run_state(std::string_view s);
bool is_terminal(RunState s) noexcept;
// Legal forward move in the run state machine (a state may also repeat).
bool is_valid_transition(RunState from, RunState to) noexcept;

struct RunStatus {
  RunState state = RunState::Pending;
  // Keyed by "civic", "pharmgkb", "enrichment" and "integration".
  std::map<std::string, int> iterations;
};

}  // namespace evsynth
