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

#include <span>
#include <vector>

#include "qw3/coin.hpp"
#include "qw3/linalg.hpp"

namespace qw3 {

/// Inclusive range of lattice sites [lo, hi].
struct SiteRange {
  Site lo = 0;
  Site hi = 0;

  std::size_t size() const { return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0; }
  bool contains(Site x) const { return x >= lo && x <= hi; }
  friend bool operator==(const SiteRange&, const SiteRange&) = default;
};

/// Site-indexed storage of N-component amplitudes over a finite window.
/// Reads outside the window return zero.
template <std::size_t N>
class LatticeField {
 public:
  LatticeField() = default;
  explicit LatticeField(SiteRange window) : window_(window), amps_(window.size(), Vec<N>{}) {}

  SiteRange window() const { return window_; }

  Vec<N>& at(Site x) { return amps_[index(x)]; }
  const Vec<N>& at(Site x) const { return amps_[index(x)]; }

  Vec<N> get(Site x) const { return window_.contains(x) ? amps_[index(x)] : Vec<N>{}; }

  std::span<Vec<N>> amplitudes() { return amps_; }
  std::span<const Vec<N>> amplitudes() const { return amps_; }

  double norm2() const {
    double s = 0.0;
    for (const auto& v : amps_) s += qw3::norm2(v);
    return s;
  }

  void scale(cplx s) {
    for (auto& v : amps_) v = s * v;
  }

 private:
  std::size_t index(Site x) const { return static_cast<std::size_t>(x - window_.lo); }

  SiteRange window_{};
  std::vector<Vec<N>> amps_;
};

/// Three-component wavefunction [Psi1, Psi2, Psi3] on a finite window.
class StateVector : public LatticeField<3> {
 public:
  using LatticeField<3>::LatticeField;

  /// Norm-squared of amplitude pushed out of the window by the last step.
  double leaked_norm2() const { return leaked_norm2_; }
  bool leaked(double tol) const { return leaked_norm2_ > tol * tol; }
  void set_leaked_norm2(double v) { leaked_norm2_ = v; }

 private:
  double leaked_norm2_ = 0.0;
};

/// Two-component reduced state [Psi1(x - 1), Psi3(x)].
using ReducedState = LatticeField<2>;

/// State on [-half_width, half_width] with `amp` at x0 and zero elsewhere.
StateVector make_localized_state(Site half_width, Site x0, const Vec3& amp);

/// [1/sqrt3, i/sqrt3, 1/sqrt3].
Vec3 default_initial_amplitude();

}  // namespace qw3
