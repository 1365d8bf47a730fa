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

#include "qw3/transfer.hpp"

#include <algorithm>

namespace qw3 {

namespace {

constexpr double kAZeroTol = 1e-9;
constexpr double kModulusMatchTol = 1e-10;
constexpr double kRatioTol = 1e-10;
constexpr double kLambda0MergeTol = 1e-12;
// A relation vector this small is treated as identically zero (no constraint).
constexpr double kZeroVectorTol = 1e-14;

}  // namespace

RationalCoefficients abcd(const CoinMatrix& c, double lambda) {
  const cplx z = unit_phase(lambda);
  const cplx denom = z - c.a(1, 1);
  return RationalCoefficients{
      c.a(0, 0) + c.a(0, 1) * c.a(1, 0) / denom,
      c.a(0, 2) + c.a(0, 1) * c.a(1, 2) / denom,
      c.a(2, 0) + c.a(2, 1) * c.a(1, 0) / denom,
      c.a(2, 2) + c.a(2, 1) * c.a(1, 2) / denom,
  };
}

bool a_vanishes(const CoinMatrix& c, double lambda) {
  const cplx gap = c.a(0, 0) * unit_phase(lambda) - c.det_unit() * std::conj(c.a(2, 2));
  return std::abs(gap) <= kAZeroTol * std::max(std::abs(c.a(0, 0)), std::abs(c.a(2, 2)));
}

Mat2 transfer_matrix(const CoinMatrix& c, double lambda) {
  const cplx z = unit_phase(lambda);
  const cplx e = c.det_unit();
  const cplx inv = 1.0 / (c.a(0, 0) * z - e * std::conj(c.a(2, 2)));
  Mat2 t;
  t(0, 0) = inv * z * (z - c.a(1, 1));
  t(0, 1) = inv * (-c.a(0, 2) * z - e * std::conj(c.a(2, 0)));
  t(1, 0) = inv * (c.a(2, 0) * z + e * std::conj(c.a(0, 2)));
  t(1, 1) = inv * (-e * (std::conj(z) - std::conj(c.a(1, 1))));
  return t;
}

TransferData transfer_at(const CoinMatrix& coin, double lambda) {
  TransferData out;
  out.lambda = lambda;
  out.coeffs = abcd(coin, lambda);
  out.a_zero = a_vanishes(coin, lambda);
  if (!out.a_zero) out.t = transfer_matrix(coin, lambda);
  return out;
}

ZeroCaseVectors zero_case_vectors(const CoinMatrix& c) {
  const Vec2 left{c.a(2, 2) * std::conj(c.a(2, 1)), std::conj(c.a(0, 0)) * c.a(1, 0)};
  const Vec2 right{std::conj(c.a(0, 0)) * c.a(0, 1), c.a(2, 2) * std::conj(c.a(1, 2))};
  auto tidy = [](const Vec2& v) { return norm(v) <= kZeroVectorTol ? Vec2{} : normalize_phase(v); };
  return {tidy(left), tidy(right)};
}

bool compact_support_condition(const CoinMatrix& c) {
  const cplx a11c = std::conj(c.a(0, 0));
  const cplx denom = std::conj(c.a(2, 1)) * std::conj(c.a(1, 2));
  if (std::abs(a11c) <= kRatioTol || std::abs(denom) <= kRatioTol) return false;
  const cplx ratio = c.a(2, 2) / a11c;
  const cplx lhs = ratio * ratio;
  const cplx rhs = c.a(0, 1) * c.a(1, 0) / denom;
  return std::abs(lhs - rhs) <= kRatioTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

std::optional<double> lambda0_angle(const CoinMatrix& c) {
  const double m11 = std::abs(c.a(0, 0));
  const double m33 = std::abs(c.a(2, 2));
  if (std::abs(m11 - m33) > kModulusMatchTol || m11 == 0.0) return std::nullopt;
  return wrap_angle(c.det_phase() + std::arg(std::conj(c.a(2, 2)) / c.a(0, 0)));
}

std::vector<double> lambda0_set(const CoinField& field) {
  std::vector<double> out;
  for (const auto& coin : field.distinct_coins()) {
    const auto l0 = lambda0_angle(coin);
    if (!l0) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](double v) {
      return angle_distance(v, *l0) <= kLambda0MergeTol;
    });
    if (!seen) out.push_back(*l0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ReducedState iota(const StateVector& psi) {
  const SiteRange w = psi.window();
  ReducedState out(SiteRange{w.lo, w.hi + 1});
  for (Site x = w.lo; x <= w.hi + 1; ++x) out.at(x) = {psi.get(x - 1)[0], psi.get(x)[2]};
  return out;
}

StateVector iota_inverse(const ReducedState& reduced, const CoinField& field, double lambda) {
  const SiteRange w = reduced.window();
  const cplx z = unit_phase(lambda);
  StateVector out(SiteRange{w.lo - 1, w.hi});
  for (Site x = w.lo - 1; x <= w.hi; ++x) {
    const CoinMatrix& c = field.lookup(x);
    const cplx psi1 = reduced.get(x + 1)[0];
    const cplx psi3 = reduced.get(x)[1];
    const cplx psi2 = (c.a(1, 0) * psi1 + c.a(1, 2) * psi3) / (z - c.a(1, 1));
    out.at(x) = {psi1, psi2, psi3};
  }
  return out;
}

}  // namespace qw3
