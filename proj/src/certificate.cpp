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

#include "cubeham/certificate.hpp"

#include <algorithm>

namespace cubeham {

const char* clause_name(Clause c) {
  switch (c) {
    case Clause::kTooShort: return "too short";
    case Clause::kVertexOutOfRange: return "vertex out of range";
    case Clause::kNotSimple: return "not simple";
    case Clause::kNonCubeEdge: return "non-cube edge outside M";
    case Clause::kMissingMatchingEdge: return "matching edge not traversed";
    case Clause::kAvoidedVisited: return "avoided vertex visited";
    case Clause::kTerminalMismatch: return "terminal mismatch";
    case Clause::kEmptyPath: return "empty path";
  }
  return "?";
}

namespace {

constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

// Shared clauses over a set of vertex sequences. `closed` marks a cycle.
std::optional<Violation> check_sequences(const std::vector<std::vector<Vertex>>& seqs,
                                         bool closed, const Matching& m,
                                         const std::vector<Vertex>& avoided) {
  const Vertex n = m.size();
  // Position of each vertex: (sequence index, offset).
  std::vector<std::size_t> seq_of(n, kAbsent);
  std::vector<std::size_t> pos_of(n, kAbsent);
  std::size_t flat = 0;
  for (std::size_t s = 0; s < seqs.size(); ++s) {
    for (std::size_t j = 0; j < seqs[s].size(); ++j, ++flat) {
      const Vertex x = seqs[s][j];
      if (x >= n) return Violation{Clause::kVertexOutOfRange, flat, std::to_string(x)};
      if (seq_of[x] != kAbsent) {
        return Violation{Clause::kNotSimple, flat, "vertex " + std::to_string(x) + " repeated"};
      }
      seq_of[x] = s;
      pos_of[x] = j;
    }
  }
  flat = 0;
  for (const auto& seq : seqs) {
    const std::size_t k = seq.size();
    const std::size_t pairs = closed ? k : k - 1;
    for (std::size_t j = 0; j < pairs; ++j) {
      const Vertex a = seq[j];
      const Vertex b = seq[(j + 1) % k];
      if (!m.has_edge(a, b) && distance(a, b) != 1) {
        return Violation{Clause::kNonCubeEdge, flat + j,
                         std::to_string(a) + "-" + std::to_string(b)};
      }
    }
    flat += k;
  }
  const auto edges = m.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Vertex a = edges[e].u;
    const Vertex b = edges[e].v;
    bool ok = seq_of[a] != kAbsent && seq_of[a] == seq_of[b];
    if (ok) {
      const std::size_t k = seqs[seq_of[a]].size();
      const std::size_t pa = pos_of[a];
      const std::size_t pb = pos_of[b];
      const std::size_t gap = pa > pb ? pa - pb : pb - pa;
      ok = gap == 1 || (closed && gap == k - 1);
    }
    if (!ok) {
      return Violation{Clause::kMissingMatchingEdge, e,
                       std::to_string(a) + "-" + std::to_string(b)};
    }
  }
  for (std::size_t j = 0; j < avoided.size(); ++j) {
    const Vertex x = avoided[j];
    if (x < n && seq_of[x] != kAbsent) {
      return Violation{Clause::kAvoidedVisited, j, std::to_string(x)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> certificate_check(const CycleCertificate& c) {
  if (c.vertices.size() < 3) {
    return Violation{Clause::kTooShort, c.vertices.size(), "a cycle needs at least 3 vertices"};
  }
  return check_sequences({c.vertices}, /*closed=*/true, c.matching, c.avoided);
}

std::optional<Violation> certificate_check(const LinearForestCertificate& c) {
  std::vector<Vertex> ends;
  for (std::size_t p = 0; p < c.paths.size(); ++p) {
    if (c.paths[p].size() < 2) {
      return Violation{Clause::kEmptyPath, p, "a path needs two distinct ends"};
    }
    ends.push_back(c.paths[p].front());
    ends.push_back(c.paths[p].back());
  }
  if (auto v = check_sequences(c.paths, /*closed=*/false, c.matching, c.avoided)) return v;
  std::vector<Vertex> want = c.terminals;
  std::sort(ends.begin(), ends.end());
  std::sort(want.begin(), want.end());
  if (ends != want) {
    return Violation{Clause::kTerminalMismatch, 0, "path ends differ from the terminal set"};
  }
  return std::nullopt;
}

}  // namespace cubeham
