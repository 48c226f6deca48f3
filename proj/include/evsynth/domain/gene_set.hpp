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
#include <string>
#include <string_view>
#include <vector>

namespace evsynth {

// Ordered, duplicate-free set of uppercase gene symbols. Aliases are not
// resolved: "ERBB2" and "HER2" are different symbols.
class GeneSet {
 public:
  // Takes already-normalized symbols. Throws EmptyGeneList, InvalidSymbol, or
  // ValidationFailed("genes") on a duplicate.
  static GeneSet from_symbols(std::vector<std::string> symbols);

  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool contains(std::string_view symbol) const;
  bool is_subset_of(const GeneSet& other) const;

  // Comma-separated form accepted by parse_gene_list.
  std::string render() const;

  friend bool operator==(const GeneSet& a, const GeneSet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  GeneSet() = default;
  std::vector<std::string> symbols_;
  std::vector<std::string> sorted_;
};

// Splits on commas and whitespace, trims, uppercases and de-duplicates
// keeping the first occurrence.
GeneSet parse_gene_list(std::string_view raw);

// Normalizes a list of symbols the same way parse_gene_list treats tokens.
GeneSet normalize_gene_symbols(const std::vector<std::string>& raw);

bool is_valid_symbol_token(std::string_view token) noexcept;

}  // namespace evsynth
