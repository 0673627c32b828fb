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

#include "cubeham/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace cubeham {

int worker_count() {
  if (const char* env = std::getenv("CUBEHAM_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::kSerial || n < 2) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  // Exceptions may not leave a parallel region; the first one is rethrown.
  std::exception_ptr error;
  std::mutex lock;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long long k = 0; k < count; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      const std::lock_guard<std::mutex> guard(lock);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<CanonicalForm> canonicalize_batch(const std::vector<Matching>& batch,
                                              const DirectionGroup& group, Exec exec) {
  std::vector<CanonicalForm> out(batch.size());
  if (exec == Exec::kSerial) {
    for (std::size_t k = 0; k < batch.size(); ++k) out[k] = canonical_form(batch[k], group);
    return out;
  }
  const auto count = static_cast<long long>(batch.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (long long k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = canonical_form(batch[static_cast<std::size_t>(k)], group);
  }
  return out;
}

}  // namespace cubeham
