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

#include "cubeham/hypercube.hpp"

#include <string>

namespace cubeham {

void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw std::invalid_argument("dimension out of range: " + std::to_string(d));
  }
}

Vertex neighbor(Vertex u, int i, int d) {
  if (i < 1 || i > d) {
    throw std::out_of_range("direction out of range: " + std::to_string(i));
  }
  return u ^ direction_bit(i);
}

Edge::Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
  if (a == b) throw std::invalid_argument("edge endpoints must differ");
}

DirectionSplit split(std::span<const Edge> edges, int i) {
  DirectionSplit out;
  for (const Edge& e : edges) {
    const bool a = has_direction(e.u, i);
    const bool b = has_direction(e.v, i);
    if (a != b) {
      out.crossing.push_back(e);
    } else if (a) {
      out.inside1.push_back(e);
    } else {
      out.inside0.push_back(e);
    }
  }
  return out;
}

long total_length(std::span<const Edge> edges, int d) {
  long by_edges = 0;
  for (const Edge& e : edges) by_edges += e.length();
  long by_cuts = 0;
  for (int i = 1; i <= d; ++i) by_cuts += static_cast<long>(split(edges, i).crossing.size());
  if (by_edges != by_cuts) {
    throw std::logic_error("length identity violated: " + std::to_string(by_edges) +
                           " != " + std::to_string(by_cuts));
  }
  return by_edges;
}

}  // namespace cubeham
