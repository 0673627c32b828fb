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

// Runs the acceptance criteria at full scale and prints one PASS/FAIL line
// per criterion. Exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubeham/harness.hpp"
#include "cubeham/io.hpp"
#include "cubeham/oracle.hpp"
#include "cubeham/property_h.hpp"

#ifndef CUBEHAM_FIXTURE_DIR
#define CUBEHAM_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

using namespace cubeham;

// Collects the reasons a criterion fails.
struct Verdict {
  std::vector<std::string> problems;
  std::string info;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  bool pass() const { return problems.empty(); }
};

std::size_t checked(const HarnessReport& r, const std::string& check) {
  const auto it = r.checks.find(check);
  return it == r.checks.end() ? 0 : it->second.total;
}

void require_green(Verdict& v, const HarnessReport& r) {
  v.require(r.failed == 0, std::to_string(r.failed) + " failed checks in " + r.suite);
  v.require(r.budget_exhausted == 0, std::to_string(r.budget_exhausted) + " budget exhaustions in " + r.suite);
  for (const auto& f : r.failures) {
    v.problems.push_back(f.check + "[" + std::to_string(f.index) + "]: " + f.message);
    if (v.problems.size() > 6) break;
  }
}

void require_count(Verdict& v, const HarnessReport& r, const std::string& check, std::size_t at_least) {
  const std::size_t n = checked(r, check);
  v.require(n >= at_least, check + " ran " + std::to_string(n) + " < " + std::to_string(at_least));
}

HarnessReport suite(const std::string& name, const SuiteConfig& cfg) {
  HarnessReport r = run_suite(name, cfg);
  std::cerr << report_summary(r) << "\n";
  return r;
}

Verdict exhaustive(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("exhaustive_d_le_4", cfg);
  require_green(v, r);
  for (const char* c : {"d2", "d3", "d4"}) require_count(v, r, c, 1);
  v.info = std::to_string(r.total) + " matching classes";
  return v;
}

Verdict necessity(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("necessity_d45", cfg);
  require_green(v, r);
  require_count(v, r, "d4", 10'000);
  require_count(v, r, "d5", 10'000);
  v.info = std::to_string(checked(r, "d4") + checked(r, "d5")) + " violating matchings refuted";
  return v;
}

Verdict sufficiency(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("sampled_thm8_d5", cfg);
  require_green(v, r);
  require_count(v, r, "d5_oracle", 10'000);
  require_count(v, r, "d6_construct", 10'000);
  v.info = std::to_string(r.total) + " checks";
  return v;
}

Verdict sharpness(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("d4_counterexample_hunt", cfg);
  require_green(v, r);
  v.require(r.details.contains("witness"), "no witness reported");

  // The pinned witness must still be a counterexample.
  const Json fx = read_json_file(std::string(CUBEHAM_FIXTURE_DIR) + "/d4_counterexample.json");
  const Matching m = matching_from_json(fx);
  const Vertex z = fx.at("z").get<Vertex>();
  v.require(m.dim() == 4, "fixture is not in dimension 4");
  v.require(check_property_h(m, z).satisfied, "fixture violates property (H)");
  Matching avoiding = m;
  avoiding.set_label(z, kForbidden);
  const SearchResult s = extends(avoiding, SearchConfig{.node_budget = cfg.budget});
  v.require(s.outcome == SearchOutcome::kNo,
            std::string("oracle on the fixture says ") + outcome_name(s.outcome));
  v.info = "witness after " + r.details.value("classes_scanned", Json(0)).dump() + " classes";
  return v;
}

Verdict lengths(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("length_bounds", cfg);
  require_green(v, r);
  require_count(v, r, "a_kq2_long_edge", 1);
  require_count(v, r, "b_q3_even_pairs", 1);
  for (int d = 5; d <= 7; ++d) {
    require_count(v, r, "c_qd_d" + std::to_string(d), 1'000);
    require_count(v, r, "d_kqd_d" + std::to_string(d), 1'000);
  }
  v.info = "shortest " + r.details.value("shortest", Json::object()).dump();
  return v;
}

Verdict lemma_bank(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("lemma_bank", cfg);
  require_green(v, r);
  for (const char* c : {"layer_union_counts", "layer_directions_exhaustive_d4", "maximal_size_ceil_f5", "maximal_size_ceil_f6"}) {
    require_count(v, r, c, 1);
  }
  for (int d = 2; d <= 10; ++d) require_count(v, r, "maximal_cube_tight_d" + std::to_string(d), 1);
  require_count(v, r, "maximal_cut_d5", 10'000);
  require_count(v, r, "maximal_cut_d6", 10'000);
  require_count(v, r, "completion_half", 10'000);
  require_count(v, r, "completion_near_half", 10'000);
  v.info = std::to_string(r.total) + " checks";
  return v;
}

Verdict fink(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("fink", cfg);
  require_green(v, r);
  for (int d = 4; d <= 9; ++d) require_count(v, r, "d" + std::to_string(d), 1'000);
  const Json med = r.timing.value("median_seconds", Json::object());
  const double d9 = med.value("d9", 1e9);
  v.require(d9 < 1.0, "median time at d=9 is " + std::to_string(d9) + " s");
  std::ostringstream info;
  info << "median d=9 " << d9 << " s";
  v.info = info.str();
  return v;
}

Verdict laceability(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("hamlace_d5", cfg);
  require_green(v, r);
  require_count(v, r, "half_layer_free", 1'000);
  require_count(v, r, "planted", 100);
  v.info = std::to_string(r.total) + " checks";
  return v;
}

Verdict coverage(const SuiteConfig& cfg) {
  Verdict v;
  const HarnessReport r = suite("case_coverage", cfg);
  v.require(r.details.value("sources_green", false), "source suites are not green");
  const auto missing = missing_tags(r.coverage);
  for (const auto& tag : missing) v.problems.push_back("case tag " + tag + " never fired");
  std::ostringstream info;
  for (const auto& [tag, n] : r.coverage) info << tag << "=" << n << " ";
  v.info = info.str();
  return v;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict(const SuiteConfig&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubeham acceptance criteria"};
  std::vector<int> only;
  SuiteConfig cfg;
  bool serial = false;
  app.add_option("-c,--criterion", only, "Criteria to run (default: all)")->check(CLI::Range(1, 9));
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_flag("--serial", serial, "Run the serial reference kernels");
  CLI11_PARSE(app, argc, argv);
  if (serial) cfg.exec = Exec::kSerial;

  const std::vector<Criterion> criteria = {
      {1, "exhaustive extension for d <= 4", exhaustive},
      {2, "necessity of property (H) at d = 4, 5", necessity},
      {3, "sampled sufficiency at d = 5 and constructive d = 6", sufficiency},
      {4, "d = 4 counterexample to sufficiency", sharpness},
      {5, "cycle length bounds", lengths},
      {6, "lemma bank", lemma_bank},
      {7, "perfect matching Hamilton extension for d = 4..9", fink},
      {8, "laceability at d = 5", laceability},
      {9, "case-tree coverage", coverage},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run(cfg);
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (v.pass() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << secs << " s; " << v.info << ")";
    if (!v.pass()) {
      line << " problems:";
      for (const auto& p : v.problems) line << " [" << p << "]";
      ++failed;
    }
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
