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

#include <vector>

#include "qw3/coin.hpp"
#include "qw3/state.hpp"

namespace qw3 {

inline constexpr double kLeakTol = 1e-10;
inline constexpr Site kLightConeMargin = 5;

/// mu_t(x) = ||(U^t Psi0)(x)||^2 on a window.
struct Distribution {
  SiteRange window{};
  std::vector<double> probs;
  int time = 0;

  double at(Site x) const {
    return window.contains(x) ? probs[static_cast<std::size_t>(x - window.lo)] : 0.0;
  }
  double total() const;
};

Distribution distribution_of(const StateVector& psi, int time);

/// One step of U = S C on the window with a hard zero boundary. Amplitude
/// pushed past either edge is dropped and its norm-squared is recorded on the
/// result (see StateVector::leaked).
StateVector apply_u(const CoinField& field, const StateVector& psi);

/// Single-threaded reference for apply_u.
StateVector apply_u_serial(const CoinField& field, const StateVector& psi);

/// ||U Psi - exp(i lambda) Psi|| / ||Psi||.
double op_residual(const CoinField& field, const StateVector& psi, double lambda);

/// Half-width L such that a state supported on `support` stays inside
/// [-L, L] for t steps with kLightConeMargin sites to spare.
Site required_half_width(SiteRange support, int steps);

/// Smallest range holding every nonzero amplitude of psi.
SiteRange support_of(const StateVector& psi);

/// Distributions for steps 0..t. Throws NumericalError when the window cannot
/// hold the light cone (message names the required L) or if amplitude leaks.
std::vector<Distribution> evolve(const CoinField& field, const StateVector& psi0, int t);

/// (1/t_max) sum_{t=1}^{t_max} mu_t(site). Same preconditions as evolve.
double time_averaged_probability(const CoinField& field, const StateVector& psi0, int t_max,
                                 Site site);

inline double time_averaged_origin(const CoinField& field, const StateVector& psi0, int t_max) {
  return time_averaged_probability(field, psi0, t_max, 0);
}

}  // namespace qw3
