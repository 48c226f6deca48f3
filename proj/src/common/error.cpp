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

#include "evsynth/common/error.hpp"

namespace evsynth {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyGeneList: return "EmptyGeneList";
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::DanglingCitation: return "DanglingCitation";
    case ErrorCode::OutOfSetGene: return "OutOfSetGene";
    case ErrorCode::UncitedNovelClaim: return "UncitedNovelClaim";
    case ErrorCode::UncitedClaim: return "UncitedClaim";
    case ErrorCode::SourceUnavailable: return "SourceUnavailable";
    case ErrorCode::FixtureMissing: return "FixtureMissing";
    case ErrorCode::SchemaDrift: return "SchemaDrift";
    case ErrorCode::EvidenceTooLarge: return "EvidenceTooLarge";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnknownBackend: return "UnknownBackend";
    case ErrorCode::UnrecognizedVerdict: return "UnrecognizedVerdict";
    case ErrorCode::MissingSource: return "MissingSource";
    case ErrorCode::DuplicateSource: return "DuplicateSource";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::RunClosed: return "RunClosed";
    case ErrorCode::UnknownRun: return "UnknownRun";
    case ErrorCode::NotReady: return "NotReady";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonPositiveWpm: return "NonPositiveWpm";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::TooFewReports: return "TooFewReports";
    case ErrorCode::NonNestedScenarios: return "NonNestedScenarios";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail,
                    const std::string& message) {
  std::string out{to_string(code)};
  if (!detail.empty()) out += "(" + detail + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, const std::string& message)
    : std::runtime_error(compose(code, detail, message)),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace evsynth
