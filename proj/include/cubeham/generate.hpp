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

#include <cstddef>
#include <functional>
#include <vector>

#include "cubeham/canonical.hpp"
#include "cubeham/parallel.hpp"

namespace cubeham {

using MatchingSink = std::function<void(const Matching&)>;

// Perfect matchings on the kMatch vertices of seed. Each round pairs the first
// kMatch vertex with every other one; with a group, isomorphic states are
// removed after every round. Throws std::invalid_argument on an odd kMatch count.
std::vector<Matching> generate_matchings_bfs(const Matching& seed,
                                             const DirectionGroup* group = nullptr,
                                             Exec exec = Exec::kSerial);

// Same set without dedup, produced depth-first one matching at a time.
void generate_matchings_dfs(const Matching& seed, const MatchingSink& on_complete);

// Breadth-first rounds while the frontier stays within max_frontier states,
// then depth-first below every frontier state.
void generate_matchings_hybrid(const Matching& seed, const DirectionGroup& group,
                               std::size_t max_frontier, const MatchingSink& on_complete,
                               Exec exec = Exec::kSerial);

// One representative per isomorphism class of all matchings on the kUncovered
// vertices of seed (kForbidden vertices stay avoided), built level by level in
// the number of edges. Returns the number of classes.
std::size_t for_each_matching_class(const Matching& seed, const DirectionGroup& group,
                                    const MatchingSink& on_class, Exec exec = Exec::kSerial);

// All matchings on the kUncovered vertices of seed, depth-first, no dedup.
void for_each_matching_dfs(const Matching& seed, const MatchingSink& on_matching);

}  // namespace cubeham
