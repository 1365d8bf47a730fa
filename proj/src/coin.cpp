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

#include "qw3/coin.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "qw3/errors.hpp"

namespace qw3 {

namespace {

// |a| == 1 within this tolerance counts as a degenerate coin.
constexpr double kDegenerateTol = 1e-10;

void check_entries_finite(const Mat3& m) {
  for (const auto& e : m.m)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw ConfigError("coin matrix has non-finite entries");
}

}  // namespace

CoinMatrix::CoinMatrix(const Mat3& entries) : entries_(entries) {
  check_entries_finite(entries_);
  const double dev = unitarity_deviation(entries_);
  if (dev > kUnitaryTol)
    throw ConfigError(fmt::format(
        "coin matrix is not unitary: max |C^dagger C - I| = {:.3e} exceeds tolerance {:.0e}", dev,
        kUnitaryTol));

  const struct {
    std::size_t r, c;
    const char* name;
  } checks[] = {{0, 2, "a(1,3)"}, {1, 1, "a(2,2)"}, {2, 0, "a(3,1)"}};
  for (const auto& ch : checks) {
    if (std::abs(std::abs(entries_(ch.r, ch.c)) - 1.0) <= kDegenerateTol)
      throw ConfigError(fmt::format(
          "degenerate coin: |{}| = 1, the walk reduces to a two-state walk", ch.name));
  }

  const cplx d = det(entries_);
  det_phase_ = arg_positive(d);
  det_unit_ = unit_phase(det_phase_);
}

CoinMatrix make_fourier() {
  const cplx w = unit_phase(kTwoPi / 3.0);
  const cplx w2 = unit_phase(2.0 * kTwoPi / 3.0);
  const double s = 1.0 / std::sqrt(3.0);
  Mat3 f{{1.0, 1.0, 1.0, 1.0, w, w2, 1.0, w2, w}};
  return CoinMatrix(cplx{s} * f);
}

CoinMatrix make_grover() {
  Mat3 g;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) g(r, c) = (r == c) ? -1.0 / 3.0 : 2.0 / 3.0;
  return CoinMatrix(g);
}

CoinMatrix phase_scale(const CoinMatrix& c, double theta) {
  return CoinMatrix(unit_phase(theta) * c.matrix());
}

CoinField::CoinField(CoinMatrix c_minus, CoinMatrix c_plus, Site x_minus, Site x_plus,
                     std::vector<CoinMatrix> defects)
    : c_minus_(std::move(c_minus)),
      c_plus_(std::move(c_plus)),
      x_minus_(x_minus),
      x_plus_(x_plus),
      defects_(std::move(defects)) {
  if (x_minus_ > 0 || x_plus_ < 0)
    throw ConfigError(fmt::format("defect window [{}, {}) must satisfy x_minus <= 0 <= x_plus",
                                  x_minus_, x_plus_));
  if (static_cast<Site>(defects_.size()) != x_plus_ - x_minus_)
    throw ConfigError(fmt::format("defect list has {} coins but window [{}, {}) needs {}",
                                  defects_.size(), x_minus_, x_plus_, x_plus_ - x_minus_));
}

std::vector<CoinMatrix> CoinField::distinct_coins() const {
  std::vector<CoinMatrix> out{c_minus_};
  auto add = [&](const CoinMatrix& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  add(c_plus_);
  for (const auto& d : defects_) add(d);
  return out;
}

CoinField field_homogeneous(const CoinMatrix& coin) { return CoinField(coin, coin, 0, 0, {}); }

CoinField field_one_defect(const CoinMatrix& bulk, const CoinMatrix& origin) {
  return CoinField(bulk, bulk, 0, 1, {origin});
}

CoinField field_two_phase(const CoinMatrix& left, const CoinMatrix& right) {
  return CoinField(left, right, 0, 0, {});
}

}  // namespace qw3
