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

#include "qw3/evolution.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "qw3/errors.hpp"
#include "qw3/kernels.hpp"

namespace qw3 {

namespace {

void check_window(const StateVector& psi0, int t) {
  if (t < 0) throw ConfigError("number of steps must be non-negative");
  const SiteRange w = psi0.window();
  const SiteRange s = support_of(psi0);
  const Site reach = static_cast<Site>(t) + kLightConeMargin;
  if (w.lo > s.lo - reach || w.hi < s.hi + reach)
    throw NumericalError(fmt::format(
        "window [{}, {}] cannot hold {} steps from support [{}, {}]: need half-width L >= {}",
        w.lo, w.hi, t, s.lo, s.hi, required_half_width(s, t)));
}

void check_leak(const StateVector& psi, int step) {
  if (psi.leaked(kLeakTol))
    throw NumericalError(fmt::format("amplitude leaked past the window at step {} (norm {:.3e})",
                                     step, std::sqrt(psi.leaked_norm2())));
}

}  // namespace

double Distribution::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

Distribution distribution_of(const StateVector& psi, int time) {
  Distribution d;
  d.window = psi.window();
  d.time = time;
  d.probs.reserve(psi.window().size());
  for (const auto& v : psi.amplitudes()) d.probs.push_back(norm2(v));
  return d;
}

StateVector apply_u(const CoinField& field, const StateVector& psi) {
  StateVector out(psi.window());
  out.set_leaked_norm2(kernels::walk_step_omp(field, psi.window(), psi.amplitudes(), out.amplitudes()));
  return out;
}

StateVector apply_u_serial(const CoinField& field, const StateVector& psi) {
  StateVector out(psi.window());
  out.set_leaked_norm2(
      kernels::walk_step_serial(field, psi.window(), psi.amplitudes(), out.amplitudes()));
  return out;
}

double op_residual(const CoinField& field, const StateVector& psi, double lambda) {
  const double n2 = psi.norm2();
  if (n2 == 0.0) return 0.0;
  const StateVector u = apply_u(field, psi);
  const cplx z = unit_phase(lambda);
  // Amplitude pushed off the window is part of U Psi on the full lattice.
  double r2 = u.leaked_norm2();
  const SiteRange w = psi.window();
  for (Site x = w.lo; x <= w.hi; ++x) r2 += norm2(u.at(x) - z * psi.at(x));
  return std::sqrt(r2 / n2);
}

Site required_half_width(SiteRange support, int steps) {
  return std::max(std::abs(support.lo), std::abs(support.hi)) + static_cast<Site>(steps) +
         kLightConeMargin;
}

SiteRange support_of(const StateVector& psi) {
  const SiteRange w = psi.window();
  Site lo = w.hi + 1;
  Site hi = w.lo - 1;
  for (Site x = w.lo; x <= w.hi; ++x) {
    if (norm2(psi.at(x)) == 0.0) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (lo > hi) return SiteRange{0, 0};
  return SiteRange{lo, hi};
}

std::vector<Distribution> evolve(const CoinField& field, const StateVector& psi0, int t) {
  check_window(psi0, t);
  std::vector<Distribution> out;
  out.reserve(static_cast<std::size_t>(t) + 1);
  out.push_back(distribution_of(psi0, 0));
  StateVector psi = psi0;
  for (int s = 1; s <= t; ++s) {
    psi = apply_u(field, psi);
    check_leak(psi, s);
    out.push_back(distribution_of(psi, s));
  }
  return out;
}

double time_averaged_probability(const CoinField& field, const StateVector& psi0, int t_max,
                                 Site site) {
  if (t_max < 1) throw ConfigError("t_max must be at least 1");
  check_window(psi0, t_max);
  StateVector psi = psi0;
  double sum = 0.0;
  for (int s = 1; s <= t_max; ++s) {
    psi = apply_u(field, psi);
    check_leak(psi, s);
    sum += norm2(psi.get(site));
  }
  return sum / static_cast<double>(t_max);
}

}  // namespace qw3
