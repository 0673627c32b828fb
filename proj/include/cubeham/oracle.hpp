// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubeham/matching.hpp"

namespace cubeham {

enum class VertexSelection { kMinFreeDegree, kFirst };

struct SearchConfig {
  std::uint64_t node_budget = 100'000'000;
  bool want_certificate = true;
  VertexSelection selection = VertexSelection::kMinFreeDegree;
  // Nonzero seeds shuffle the direction order at every node.
  std::uint64_t seed = 0;
};

enum class SearchOutcome { kYes, kNo, kBudget };

const char* outcome_name(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::kNo;
  // Cycle when m has no terminals, otherwise one path per terminal pair.
  std::vector<Vertex> cycle;
  std::vector<std::vector<Vertex>> paths;
  std::uint64_t nodes = 0;
};

// Backtracking extendability test over a compact shortcut representation of
// the partial extension. Extensions use cube edges outside m and avoid every
// kForbidden vertex. Throws std::invalid_argument on kMatch slots or an odd
// number of terminals.
SearchResult extends(const Matching& m, const SearchConfig& cfg = {});

struct LengthResult {
  // Unset when no extending cycle exists.
  std::optional<std::size_t> length;
  bool exhaustive = true;  // false when the budget ran out first
  std::vector<Vertex> cycle;
  std::uint64_t nodes = 0;
};

// Longest cycle extending m (m must carry no terminals).
LengthResult max_cycle_length(const Matching& m, const SearchConfig& cfg = {});

}  // namespace cubeham
