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

#include <stdexcept>
#include <string>
#include <string_view>

namespace evsynth {

enum class ErrorCode {
  // Input normalization and structured-output validation.
  EmptyGeneList,
  InvalidSymbol,
  ValidationFailed,
  ParseError,
  MissingSection,
  DanglingCitation,
  OutOfSetGene,
  UncitedNovelClaim,
  UncitedClaim,
  // Evidence retrieval.
  SourceUnavailable,
  FixtureMissing,
  SchemaDrift,
  // Model gateway.
  EvidenceTooLarge,
  PreconditionViolated,
  BackendUnavailable,
  BudgetExceeded,
  UnknownBackend,
  UnrecognizedVerdict,
  // Integration.
  MissingSource,
  DuplicateSource,
  WrongArity,
  // Ledger and service.
  RunClosed,
  UnknownRun,
  NotReady,
  IoError,
  // Evaluation.
  NonPositiveWpm,
  NonPositiveInput,
  TooFewReports,
  NonNestedScenarios,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code and a
// short detail (a section name, a field path, a source id) next to the
// human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, const std::string& message = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace evsynth
