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

#include <omp.h>

#include <cstdlib>

#include "qw3/kernels.hpp"

namespace qw3::kernels {

namespace {

inline cplx row(const CoinMatrix& c, int r, const Vec3& v) {
  return c.a(r, 0) * v[0] + c.a(r, 1) * v[1] + c.a(r, 2) * v[2];
}

inline Vec3 step_site(const CoinField& field, SiteRange w, std::span<const Vec3> in, Site x) {
  const auto idx = [&](Site s) { return static_cast<std::size_t>(s - w.lo); };
  Vec3 out{};
  if (x + 1 <= w.hi) out[0] = row(field.lookup(x + 1), 0, in[idx(x + 1)]);
  out[1] = row(field.lookup(x), 1, in[idx(x)]);
  if (x - 1 >= w.lo) out[2] = row(field.lookup(x - 1), 2, in[idx(x - 1)]);
  return out;
}

// Component 1 of the lowest site moves left out of the window; component 3
// of the highest site moves right.
inline double edge_leak(const CoinField& field, SiteRange w, std::span<const Vec3> in) {
  if (w.size() == 0) return 0.0;
  return std::norm(row(field.lookup(w.lo), 0, in.front())) +
         std::norm(row(field.lookup(w.hi), 2, in.back()));
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("QW3_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return omp_get_max_threads();
}

double walk_step_serial(const CoinField& field, SiteRange window, std::span<const Vec3> in,
                        std::span<Vec3> out) {
  for (Site x = window.lo; x <= window.hi; ++x)
    out[static_cast<std::size_t>(x - window.lo)] = step_site(field, window, in, x);
  return edge_leak(field, window, in);
}

double walk_step_omp(const CoinField& field, SiteRange window, std::span<const Vec3> in,
                     std::span<Vec3> out) {
  const Site lo = window.lo;
  const Site hi = window.hi;
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (Site x = lo; x <= hi; ++x)
    out[static_cast<std::size_t>(x - lo)] = step_site(field, window, in, x);
  return edge_leak(field, window, in);
}

}  // namespace qw3::kernels
