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

#include <optional>
#include <vector>

#include "qw3/coin.hpp"
#include "qw3/linalg.hpp"
#include "qw3/state.hpp"

namespace qw3 {

// Reduction of the eigenvalue equation U Psi = exp(i lambda) Psi to a
// two-component recursion Psi~(x + 1) = T_x(lambda) Psi~(x) on the reduced
// state Psi~(x) = [Psi1(x - 1), Psi3(x)].

/// The rational functions eliminating Psi2 at one site:
///   exp(i l) Psi~1(x)     = A Psi~1(x + 1) + B Psi~2(x)
///   exp(i l) Psi~2(x + 1) = C Psi~1(x + 1) + D Psi~2(x)
struct RationalCoefficients {
  cplx a;
  cplx b;
  cplx c;
  cplx d;
};

/// Direct evaluation, e.g. A = a11 + a12 a21 / (exp(i l) - a22).
RationalCoefficients abcd(const CoinMatrix& coin, double lambda);

struct TransferData {
  double lambda = 0.0;
  RationalCoefficients coeffs{};
  Mat2 t{};  // zero when a_zero
  bool a_zero = false;
};

/// |a11 exp(i l) - exp(i Delta) conj(a33)| <= 1e-9 max(|a11|, |a33|).
bool a_vanishes(const CoinMatrix& coin, double lambda);

/// Closed-form transfer matrix obtained from unitarity of the coin:
///
///   T = 1/(a11 z - e conj(a33)) [[z (z - a22),              -a13 z - e conj(a31)],
///                                [a31 z + e conj(a13),   -e (1/z - conj(a22))]]
///
/// with z = exp(i lambda), e = exp(i Delta). Undefined when a_vanishes().
Mat2 transfer_matrix(const CoinMatrix& coin, double lambda);

TransferData transfer_at(const CoinMatrix& coin, double lambda);

/// Kernels of the two relations that replace the transfer step when A = 0:
///   left  ~ [a33 conj(a32), conj(a11) a21]   constrains Psi~(x)
///   right ~ [conj(a11) a12, a33 conj(a23)]   constrains Psi~(x + 1)
/// Unit norm with the first non-negligible entry real and positive; a zero
/// vector means the relation is vacuous.
struct ZeroCaseVectors {
  Vec2 left;
  Vec2 right;
};

ZeroCaseVectors zero_case_vectors(const CoinMatrix& coin);

/// Whether an asymptotic coin admits compactly supported tails:
///   (a33 / conj(a11))^2 == a12 a21 / (conj(a32) conj(a23))   within 1e-10.
/// False when a denominator vanishes.
bool compact_support_condition(const CoinMatrix& coin);

/// The unique lambda in [0, 2pi) with A(lambda) = 0, if any. Requires
/// |a11| == |a33| within 1e-10; then lambda = Delta + arg(conj(a33) / a11).
std::optional<double> lambda0_angle(const CoinMatrix& coin);

/// Union of lambda0_angle over the distinct coins of the field, sorted.
std::vector<double> lambda0_set(const CoinField& field);

/// (iota Psi)(x) = [Psi1(x - 1), Psi3(x)] on [lo, hi + 1].
ReducedState iota(const StateVector& psi);

/// Psi1(x) = Psi~1(x + 1), Psi3(x) = Psi~2(x), and
/// Psi2(x) = (a21 Psi1(x) + a23 Psi3(x)) / (exp(i l) - a22), on [lo - 1, hi].
StateVector iota_inverse(const ReducedState& reduced, const CoinField& field, double lambda);

}  // namespace qw3
