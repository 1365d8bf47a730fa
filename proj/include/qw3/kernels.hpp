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

#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial version kept as the reference for tests and benchmarks.
// Both must produce bit-identical output.

#include <span>

#include "qw3/coin.hpp"
#include "qw3/state.hpp"

namespace qw3 {

struct ChiSample;
class ChiEvaluator;

namespace kernels {

/// Worker count: QW3_THREADS if set and positive, else the OpenMP default.
int worker_count();

/// out(x) = [(C_{x+1} in(x+1))_1, (C_x in(x))_2, (C_{x-1} in(x-1))_3] for x in
/// `window`; returns the norm-squared carried past the two edges.
double walk_step_serial(const CoinField& field, SiteRange window, std::span<const Vec3> in,
                        std::span<Vec3> out);
double walk_step_omp(const CoinField& field, SiteRange window, std::span<const Vec3> in,
                     std::span<Vec3> out);

/// samples[k] = chi at lambda_k = 2 pi k / samples.size().
void chi_grid_serial(const ChiEvaluator& eval, std::span<ChiSample> samples);
void chi_grid_omp(const ChiEvaluator& eval, std::span<ChiSample> samples);

}  // namespace kernels
}  // namespace qw3
