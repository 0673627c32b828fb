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

#include <optional>
#include <string>
#include <vector>

#include "cubeham/matching.hpp"

namespace cubeham {

// A cycle v_0, ..., v_{k-1} (closing v_{k-1} -> v_0) claimed to extend a
// matching while avoiding a set of vertices.
struct CycleCertificate {
  std::vector<Vertex> vertices;
  Matching matching;
  std::vector<Vertex> avoided;

  std::size_t length() const { return vertices.size(); }
};

// Vertex-disjoint paths claimed to extend a matching with prescribed ends.
struct LinearForestCertificate {
  std::vector<std::vector<Vertex>> paths;
  std::vector<Vertex> terminals;
  Matching matching;
  std::vector<Vertex> avoided;
};

enum class Clause {
  kTooShort,
  kVertexOutOfRange,
  kNotSimple,
  kNonCubeEdge,
  kMissingMatchingEdge,
  kAvoidedVisited,
  kTerminalMismatch,
  kEmptyPath,
};

const char* clause_name(Clause c);

struct Violation {
  Clause clause;
  std::size_t index = 0;  // position in the sequence (or matching edge index)
  std::string detail;
};

// Returns the first violated clause, or nullopt if the certificate is valid.
std::optional<Violation> certificate_check(const CycleCertificate& c);
std::optional<Violation> certificate_check(const LinearForestCertificate& c);

}  // namespace cubeham
