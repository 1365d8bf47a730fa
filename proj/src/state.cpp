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

#include "qw3/state.hpp"

#include <cmath>

#include "qw3/errors.hpp"

namespace qw3 {

StateVector make_localized_state(Site half_width, Site x0, const Vec3& amp) {
  if (half_width < 0) throw ConfigError("window half-width must be non-negative");
  const SiteRange w{-half_width, half_width};
  if (!w.contains(x0)) throw ConfigError("initial site lies outside the window");
  StateVector psi(w);
  psi.at(x0) = amp;
  return psi;
}

Vec3 default_initial_amplitude() {
  const double s = 1.0 / std::sqrt(3.0);
  return {cplx{s, 0.0}, cplx{0.0, s}, cplx{s, 0.0}};
}

}  // namespace qw3
