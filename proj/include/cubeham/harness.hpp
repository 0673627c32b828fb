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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cubeham/io.hpp"
#include "cubeham/parallel.hpp"

namespace cubeham {

struct SuiteConfig {
  std::uint64_t seed = 1;
  // Multiplies every sampled instance count; exhaustive enumerations ignore it.
  double scale = 1.0;
  std::uint64_t budget = 100'000'000;
  Exec exec = Exec::kParallel;
};

struct HarnessFailure {
  std::string check;
  std::size_t index = 0;
  std::string message;
  Json matching;
  Json trace;
};

struct CheckCounts {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t budget = 0;
};

struct HarnessReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t budget_exhausted = 0;
  std::map<std::string, CheckCounts> checks;
  // Instances in which each case tag fired.
  std::map<std::string, std::size_t> coverage;
  double wall_seconds = 0;
  // Only the first few failures are kept; `failed` counts all of them.
  std::vector<HarnessFailure> failures;
  Json details = Json::object();
  // Wall-clock measurements; kept apart so reports stay reproducible.
  Json timing = Json::object();

  bool green() const { return failed == 0; }
};

// The case tags every extension corpus must exercise.
const std::vector<std::string>& case_tags();
std::vector<std::string> missing_tags(const std::map<std::string, std::size_t>& coverage);

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
HarnessReport run_suite(std::string_view name, const SuiteConfig& cfg = {});

Json report_to_json(const HarnessReport& r, bool with_timing = false);
std::string report_summary(const HarnessReport& r);

}  // namespace cubeham
