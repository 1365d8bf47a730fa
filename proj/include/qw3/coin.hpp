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

#include <cstdint>
#include <string>
#include <vector>

#include "qw3/linalg.hpp"

namespace qw3 {

using Site = std::int64_t;

inline constexpr double kUnitaryTol = 1e-10;

/// A 3x3 unitary coin acting on the internal state at one site.
///
/// Construction validates unitarity (within kUnitaryTol) and the
/// non-degeneracy assumption |a13|, |a22|, |a31| != 1; a coin failing either
/// check throws ConfigError. The determinant phase is cached.
class CoinMatrix {
 public:
  explicit CoinMatrix(const Mat3& entries);

  /// Zero-based entry access: a(0, 0) is the upper-left entry.
  const cplx& a(std::size_t row, std::size_t col) const { return entries_(row, col); }
  const Mat3& matrix() const { return entries_; }

  /// Delta in [0, 2pi) with exp(i Delta) = det C.
  double det_phase() const { return det_phase_; }
  cplx det_unit() const { return det_unit_; }

  friend bool operator==(const CoinMatrix& x, const CoinMatrix& y) {
    return x.entries_.m == y.entries_.m;
  }

 private:
  Mat3 entries_;
  double det_phase_;
  cplx det_unit_;
};

/// (1/sqrt3) [[1,1,1],[1,w,w^2],[1,w^2,w]], w = exp(2 pi i / 3).
CoinMatrix make_fourier();

/// (2/3) J - I.
CoinMatrix make_grover();

/// exp(i theta) * c. The determinant phase shifts by 3 theta.
CoinMatrix phase_scale(const CoinMatrix& c, double theta);

/// Coin field that equals c_minus left of x_minus, c_plus from x_plus on, and
/// an explicit defect list on [x_minus, x_plus).
///
/// The window satisfies x_minus <= 0 <= x_plus, so a single defect at the
/// origin is encoded as [0, 1) with both asymptotic coins set to the bulk.
class CoinField {
 public:
  CoinField(CoinMatrix c_minus, CoinMatrix c_plus, Site x_minus, Site x_plus,
            std::vector<CoinMatrix> defects);

  const CoinMatrix& lookup(Site x) const {
    if (x >= x_plus_) return c_plus_;
    if (x < x_minus_) return c_minus_;
    return defects_[static_cast<std::size_t>(x - x_minus_)];
  }

  const CoinMatrix& c_minus() const { return c_minus_; }
  const CoinMatrix& c_plus() const { return c_plus_; }
  Site x_minus() const { return x_minus_; }
  Site x_plus() const { return x_plus_; }
  const std::vector<CoinMatrix>& defects() const { return defects_; }

  /// Asymptotic coins first, then defects, with exact duplicates removed.
  std::vector<CoinMatrix> distinct_coins() const;

 private:
  CoinMatrix c_minus_;
  CoinMatrix c_plus_;
  Site x_minus_;
  Site x_plus_;
  std::vector<CoinMatrix> defects_;
};

CoinField field_homogeneous(const CoinMatrix& coin);

/// `origin` at x = 0, `bulk` everywhere else.
CoinField field_one_defect(const CoinMatrix& bulk, const CoinMatrix& origin);

/// `left` for x < 0, `right` for x >= 0.
CoinField field_two_phase(const CoinMatrix& left, const CoinMatrix& right);

}  // namespace qw3
