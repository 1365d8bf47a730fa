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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

namespace qw3 {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Fixed-size complex column vector.
template <std::size_t N>
using Vec = std::array<cplx, N>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

/// Fixed-size row-major complex square matrix. Only N = 2 and N = 3 are used.
template <std::size_t N>
struct Mat {
  std::array<cplx, N * N> m{};

  constexpr cplx& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }

  static constexpr Mat identity() {
    Mat out;
    for (std::size_t i = 0; i < N; ++i) out(i, i) = 1.0;
    return out;
  }

  Mat adjoint() const {
    Mat out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }
};

using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

template <std::size_t N>
Mat<N> operator*(const Mat<N>& a, const Mat<N>& b) {
  Mat<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

template <std::size_t N>
Vec<N> operator*(const Mat<N>& a, const Vec<N>& v) {
  Vec<N> out{};
  for (std::size_t r = 0; r < N; ++r) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += a(r, k) * v[k];
    out[r] = s;
  }
  return out;
}

template <std::size_t N>
Mat<N> operator*(cplx s, Mat<N> a) {
  for (auto& e : a.m) e *= s;
  return a;
}

template <std::size_t N>
Vec<N> operator*(cplx s, Vec<N> v) {
  for (auto& e : v) e *= s;
  return v;
}

template <std::size_t N>
Vec<N> operator+(Vec<N> a, const Vec<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
Vec<N> operator-(Vec<N> a, const Vec<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
  return a;
}

template <std::size_t N>
double norm2(const Vec<N>& v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& v) {
  return std::sqrt(norm2(v));
}

/// Largest entry modulus.
template <std::size_t N>
double max_abs(const Mat<N>& a) {
  double best = 0.0;
  for (const auto& e : a.m) best = std::max(best, std::abs(e));
  return best;
}

inline cplx det(const Mat2& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

inline cplx det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// [x1 x2] x [y1 y2] = x1*y2 - x2*y1.
inline cplx cross(const Vec2& x, const Vec2& y) { return x[0] * y[1] - x[1] * y[0]; }

/// Argument mapped into [0, 2pi).
inline double arg_positive(cplx a) {
  double t = std::arg(a);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

/// Angle reduced into [0, 2pi).
inline double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

/// Shortest distance between two angles on the circle.
inline double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

inline cplx unit_phase(double t) { return std::polar(1.0, t); }

/// sqrt(|a|) * exp(i*theta/2) with theta = arg(a) taken in [0, 2pi).
/// The image is the half plane arg in [0, pi).
cplx branch_sqrt(cplx a);

struct Eigen2 {
  cplx zeta_plus;
  cplx zeta_minus;
  Vec2 v_plus;
  Vec2 v_minus;
  // tr^2 - 4 det vanishes: the two eigenvalues coincide. For a scalar matrix
  // v_plus/v_minus are the standard basis; otherwise both hold the single
  // eigenvector.
  bool degenerate = false;
};

/// Eigen-decomposition of a 2x2 matrix with zeta = (tr +- branch_sqrt(tr^2 - 4 det)) / 2.
Eigen2 eig2(const Mat2& m);

/// max |C^dagger C - I| <= tol.
bool mat3_is_unitary(const Mat3& c, double tol);

/// max |C^dagger C - I|.
double unitarity_deviation(const Mat3& c);

/// Scales v to unit norm and rotates its phase so the first entry whose
/// modulus exceeds `rel_floor * max|v_i|` is real and positive. The zero vector
/// is returned unchanged.
template <std::size_t N>
Vec<N> normalize_phase(Vec<N> v, double rel_floor = 1e-12) {
  const double n = norm(v);
  if (n == 0.0) return v;
  double biggest = 0.0;
  for (const auto& e : v) biggest = std::max(biggest, std::abs(e));
  cplx rot = 1.0;
  for (const auto& e : v) {
    if (std::abs(e) > rel_floor * biggest) {
      rot = std::conj(e) / std::abs(e);
      break;
    }
  }
  return (rot / n) * v;
}

}  // namespace qw3
