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

// Independent reference computations used by the tests. Nothing here calls
// into the transfer or spectral modules.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>

#include "qw3/coin.hpp"
#include "qw3/linalg.hpp"

namespace qw3::oracle {

inline constexpr double kPi = std::numbers::pi;

/// Haar-like unitary by Gram-Schmidt on a Gaussian complex matrix.
inline Mat3 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat3 m;
  for (auto& e : m.m) e = {g(rng), g(rng)};
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < 3; ++r) dot += std::conj(m(r, p)) * m(r, c);
      for (std::size_t r = 0; r < 3; ++r) m(r, c) -= dot * m(r, p);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < 3; ++r) n += std::norm(m(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < 3; ++r) m(r, c) /= n;
  }
  return m;
}

inline double random_angle(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
}

struct Abcd {
  cplx a, b, c, d;
};

/// Unsimplified rational functions read straight off the eigen-equation.
inline Abcd rational_abcd(const Mat3& m, double lambda) {
  const cplx z = std::polar(1.0, lambda);
  const cplx q = z - m(1, 1);
  return {m(0, 0) + m(0, 1) * m(1, 0) / q, m(0, 2) + m(0, 1) * m(1, 2) / q,
          m(2, 0) + m(2, 1) * m(1, 0) / q, m(2, 2) + m(2, 1) * m(1, 2) / q};
}

/// Transfer matrix from the eigen-equation, no unitarity used.
inline Mat2 transfer_from_abcd(const Mat3& m, double lambda) {
  const Abcd r = rational_abcd(m, lambda);
  const cplx z = std::polar(1.0, lambda);
  Mat2 t;
  t(0, 0) = z / r.a;
  t(0, 1) = -r.b / r.a;
  t(1, 0) = r.c / r.a;
  t(1, 1) = -(r.b * r.c - r.a * r.d) / (z * r.a);
  return t;
}

inline cplx det_phase_unit(const Mat3& m) {
  const cplx d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                 m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                 m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return d / std::abs(d);
}

/// Closed forms obtained by eliminating the (2,*) entries with unitarity.
inline Abcd simplified_abcd(const Mat3& m, double lambda) {
  const cplx z = std::polar(1.0, lambda);
  const cplx e = det_phase_unit(m);
  const cplx q = z - m(1, 1);
  return {(m(0, 0) * z - e * std::conj(m(2, 2))) / q, (m(0, 2) * z + e * std::conj(m(2, 0))) / q,
          (m(2, 0) * z + e * std::conj(m(0, 2))) / q, (m(2, 2) * z - e * std::conj(m(0, 0))) / q};
}

/// Phase minimizing |A| by dense scan plus ternary refinement.
inline double brute_force_a_zero(const Mat3& m) {
  auto f = [&](double l) { return std::abs(rational_abcd(m, l).a); };
  const int n = 20000;
  double best = 0.0;
  double best_v = f(0.0);
  for (int k = 1; k < n; ++k) {
    const double l = 2.0 * kPi * k / n;
    const double v = f(l);
    if (v < best_v) {
      best_v = v;
      best = l;
    }
  }
  double lo = best - 2.0 * kPi / n;
  double hi = best + 2.0 * kPi / n;
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (f(a) < f(b))
      hi = b;
    else
      lo = a;
  }
  double l = 0.5 * (lo + hi);
  l = std::fmod(l, 2.0 * kPi);
  return l < 0.0 ? l + 2.0 * kPi : l;
}

/// Sparse state map for the dense walk below.
using SparseState = std::map<Site, Vec3>;

/// One step of U = S C on the infinite lattice, no window.
inline SparseState walk_step(const CoinField& f, const SparseState& in) {
  SparseState out;
  for (const auto& [x, v] : in) {
    const Mat3& c = f.lookup(x).matrix();
    const Vec3 w = c * v;
    out[x - 1][0] += w[0];
    out[x][1] += w[1];
    out[x + 1][2] += w[2];
  }
  return out;
}

inline double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace qw3::oracle
