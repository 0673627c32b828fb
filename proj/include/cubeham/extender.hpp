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
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubeham/certificate.hpp"
#include "cubeham/layers.hpp"
#include "cubeham/oracle.hpp"
#include "cubeham/property_h.hpp"

namespace cubeham {

// One step of a construction. Only the avoiding induction fills the case fields.
struct TraceLevel {
  std::string step;  // "oracle", "perfect", "cycle", "avoid", "avoid-base"
  int dim = 0;
  int direction = 0;
  int rule = 0;         // direction rule 1, 2 or 3
  int parity_case = 0;  // 1: even cut, 2: odd cut
  std::string u_case;   // "ai", "aii", "b"
  std::string p0_case;  // "a", "bi", "bii'", "bii''", "biii"
  std::optional<Vertex> u;
  std::string surgery;  // which ends of u u^i were covered, and where their partners lie
  int cut = 0;
  int surgery_cut = -1;           // cut after the case-2 surgery
  int dangerous_directions = -1;  // |I| in p0 cases b*
};

struct CaseTrace {
  std::vector<TraceLevel> levels;

  // Sub-case tags over all levels; "bii" is added for both of its children.
  std::set<std::string> tags() const;
};

// An internal guarantee of a construction failed. Carries the trace so far.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, CaseTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const CaseTrace& trace() const { return trace_; }

 private:
  CaseTrace trace_;
};

// A base-case search ran out of its node budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtendOptions {
  SearchConfig oracle;
};

// Hamilton cycle extending a perfect matching of K(Q_d), d >= 2.
CycleCertificate fink_extend_perfect(const Matching& m, CaseTrace* trace = nullptr,
                                     const ExtendOptions& opts = {});

// Some cycle extending any matching of K(Q_d), d >= 2.
CycleCertificate extend_to_cycle(const Matching& m, CaseTrace* trace = nullptr,
                                 const ExtendOptions& opts = {});

struct AvoidResult {
  std::optional<CycleCertificate> certificate;
  std::optional<HWitness> violation;
  CaseTrace trace;
};

// Cycle extending m and avoiding z, d >= 5, or the witness that property (H)
// fails for (m, z).
AvoidResult extend_avoiding(const Matching& m, Vertex z, const ExtendOptions& opts = {});

// Cycle of length at least ceil(2^{d+1}/3) extending a matching of Q_d.
CycleCertificate long_cycle_qd(const Matching& m, CaseTrace* trace = nullptr,
                               const ExtendOptions& opts = {});
// Cycle of length at least 2^{d-1} extending a matching of K(Q_d).
CycleCertificate long_cycle_kqd(const Matching& m, CaseTrace* trace = nullptr,
                                const ExtendOptions& opts = {});

struct HamlaceResult {
  std::optional<CycleCertificate> cycle;
  std::optional<LinearForestCertificate> path;
  std::optional<LayerId> half_layer;  // set for the negative verdict
  CaseTrace trace;
};

// m perfect on V(Q_d) minus {x, y} with x, y of opposite parity, d >= 5.
HamlaceResult hamlace_cycle(const Matching& m, Vertex x, Vertex y, const ExtendOptions& opts = {});

// m perfect on V(Q_d), x, y of opposite parity and not matched to each other.
HamlaceResult hamlace_path(const Matching& m, Vertex x, Vertex y, const ExtendOptions& opts = {});

}  // namespace cubeham
