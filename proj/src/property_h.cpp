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

#include "cubeham/property_h.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace cubeham {

Normalized normalize_forbidden(const Matching& m, Vertex z) {
  if (z >= m.size()) throw std::out_of_range("forbidden vertex out of range");
  return Normalized{translate(m, z), z};
}

HReport check_property_h(const Matching& m, Vertex z) {
  if (z >= m.size()) throw std::out_of_range("forbidden vertex out of range");
  if (m.covered(z)) throw std::invalid_argument("matching covers the forbidden vertex");
  const Matching t = translate(m, z);
  const LayerIndex index(t);
  const int d = t.dim();
  HReport report;
  if (d < 2) return report;
  for (int i = 1; i <= d; ++i) {
    std::optional<LayerId> layer;
    for (int p = 0; p < 2; ++p) {
      const LayerId id{i, p, std::nullopt};
      if (index.deficit(id) == 0) layer = id;
    }
    if (!layer) continue;
    std::size_t covered = 0;
    bool avoided = false;
    for (Vertex u = 1; u < t.size(); ++u) {
      if (has_direction(u, i)) continue;
      if (t.covered(u)) {
        ++covered;
      } else {
        if (parity(u) != 0) throw std::logic_error("odd vertex avoided beside a half-layer");
        avoided = true;
      }
    }
    if (!avoided) {
      report.satisfied = false;
      report.witnesses.push_back(
          HWitness{i, *layer, has_direction(z, i) ? Vertex{1} : Vertex{0}, covered});
    }
  }
  return report;
}

const char* h_violation_case_name(HViolationCase c) {
  switch (c) {
    case HViolationCase::kNone: return "none";
    case HViolationCase::kCaseI: return "i";
    case HViolationCase::kCaseII: return "ii";
  }
  return "?";
}

HViolationCase classify_h_violation(const Matching& m, Vertex u, int i) {
  const int d = m.dim();
  if (i < 1 || i > d) throw std::out_of_range("direction out of range");
  const Vertex ui = u ^ direction_bit(i);
  if (u == 0 || has_direction(u, i)) throw std::invalid_argument("u must lie in Q^i_0 minus z");
  if (m.covered(u) || m.covered(ui)) throw std::invalid_argument("u and u^i must be uncovered");
  if (!check_property_h(m, 0).satisfied) {
    throw std::invalid_argument("matching violates property (H)");
  }
  for (Vertex x = 1; x < m.size(); ++x) {
    if (!has_direction(x, i) && x != u && !m.covered(x)) return HViolationCase::kNone;
  }
  const LayerIndex index(m);
  const int size = layer_size(d, LayerId{i, 0, std::nullopt});
  HViolationCase result = HViolationCase::kNone;
  if (index.half_count(i, 0) == size || index.half_count(i, 1) == size) {
    result = HViolationCase::kCaseI;
  } else if (index.half_count(i, parity(u)) == size - 1) {
    result = HViolationCase::kCaseII;
  }
  // The size bounds need d >= 3; in Q_2 the empty near half-layer fires case II.
  if (result != HViolationCase::kNone && d >= 3) {
    const int cut = cut_size(m, i);
    const long half = 1L << (d - 2);
    const long three_eighths = 3L * (1L << (d - 3)) - 1;
    if (cut % 2 != 0 || cut < half || static_cast<long>(m.edge_count()) < three_eighths) {
      throw std::logic_error("H-violation size consequences fail in direction " +
                             std::to_string(i));
    }
  }
  return result;
}

HMaximality is_h_maximal(const Matching& m, Vertex z) {
  const Matching t = normalize_forbidden(m, z).matching;
  for (Vertex u = 1; u < t.size(); ++u) {
    if (t.covered(u)) continue;
    for (int i = 1; i <= t.dim(); ++i) {
      const Vertex v = u ^ direction_bit(i);
      if (v == 0 || t.covered(v)) continue;
      const Vertex low = has_direction(u, i) ? v : u;
      if (classify_h_violation(t, low, i) == HViolationCase::kNone) {
        return HMaximality{false, Edge(u ^ z, v ^ z)};
      }
    }
  }
  return HMaximality{};
}

Matching make_h_maximal(const Matching& m, Vertex z) {
  Matching t = normalize_forbidden(m, z).matching;
  if (!check_property_h(t, 0).satisfied) {
    throw std::invalid_argument("matching violates property (H)");
  }
  const int d = t.dim();
  const Vertex n = t.size();
  // Uncovered vertices of Q^i_0 other than z, and half-layer edge counts.
  std::vector<int> lower_uncovered(static_cast<std::size_t>(d + 1), 0);
  std::vector<std::array<int, 2>> half(static_cast<std::size_t>(d + 1), {0, 0});
  for (Vertex x = 1; x < n; ++x) {
    if (t.covered(x)) continue;
    for (int i = 1; i <= d; ++i) {
      if (!has_direction(x, i)) ++lower_uncovered[static_cast<std::size_t>(i)];
    }
  }
  const LayerIndex index(t);
  for (int i = 1; i <= d; ++i) {
    half[static_cast<std::size_t>(i)] = {index.half_count(i, 0), index.half_count(i, 1)};
  }
  const int size = d >= 2 ? 1 << (d - 2) : 0;

  for (Vertex u = 1; u < n; ++u) {
    for (int i = 1; i <= d && !t.covered(u); ++i) {
      const Vertex v = u ^ direction_bit(i);
      if (v == 0 || t.covered(v)) continue;
      const Vertex low = has_direction(u, i) ? v : u;
      const auto& h = half[static_cast<std::size_t>(i)];
      const bool rest_covered = lower_uncovered[static_cast<std::size_t>(i)] == 1;
      const bool breaks = rest_covered && (h[0] == size || h[1] == size ||
                                           h[static_cast<std::size_t>(parity(low))] == size - 1);
      if (breaks) continue;
      t.add_edge(u, v);
      ++half[static_cast<std::size_t>(i)][static_cast<std::size_t>(parity(low))];
      for (Vertex x : {u, v}) {
        for (int k = 1; k <= d; ++k) {
          if (!has_direction(x, k)) --lower_uncovered[static_cast<std::size_t>(k)];
        }
      }
    }
  }
  return translate(t, z);
}

}  // namespace cubeham
