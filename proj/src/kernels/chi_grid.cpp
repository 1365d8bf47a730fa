// Copyright 2026 The qw3 Authors
//
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

#include <cstddef>

#include "qw3/kernels.hpp"
#include "qw3/spectral.hpp"

namespace qw3::kernels {

void chi_grid_serial(const ChiEvaluator& eval, std::span<ChiSample> samples) {
  const double n = static_cast<double>(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k)
    samples[k] = eval(kTwoPi * static_cast<double>(k) / n);
}

void chi_grid_omp(const ChiEvaluator& eval, std::span<ChiSample> samples) {
  const double n = static_cast<double>(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t k = 0; k < count; ++k)
    samples[static_cast<std::size_t>(k)] = eval(kTwoPi * static_cast<double>(k) / n);
}

}  // namespace qw3::kernels
