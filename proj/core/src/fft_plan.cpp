// Copyright 2026 The kharper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fft_plan.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace kharper::detail {
namespace {

struct PlanKey {
  std::size_t length;
  std::size_t low;
  std::size_t high;
  int sign;
  auto operator<=>(const PlanKey&) const = default;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const PlanKey& key) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t total = key.length * key.low * key.high;
    auto* scratch = fftw_alloc_complex(total);
    fftw_iodim dim{static_cast<int>(key.length), static_cast<int>(key.low), static_cast<int>(key.low)};
    fftw_iodim batch[2] = {
        {static_cast<int>(key.low), 1, 1},
        {static_cast<int>(key.high), static_cast<int>(key.low * key.length),
         static_cast<int>(key.low * key.length)},
    };
    fftw_plan plan = fftw_plan_guru_dft(1, &dim, 2, batch, scratch, scratch,
                                        key.sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("fftw: could not create plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void strided_dft(cplx* data, std::size_t length, std::size_t low_count, std::size_t high_count,
                 int sign) {
  if (length <= 1) return;
  fftw_plan plan = cache().get({length, low_count, high_count, sign});
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace kharper::detail
