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

#include "qw3/linalg.hpp"

#include <algorithm>

namespace qw3 {

namespace {

constexpr double kDefectiveTol = 1e-12;

// Eigenvector of m for eigenvalue z, picked from whichever row of (m - z) is
// better conditioned. Returns the zero vector if m - z vanishes.
Vec2 eigvec_for(const Mat2& m, cplx z) {
  const Vec2 from_row0{m(0, 1), z - m(0, 0)};
  const Vec2 from_row1{z - m(1, 1), m(1, 0)};
  const Vec2& pick = norm2(from_row0) >= norm2(from_row1) ? from_row0 : from_row1;
  return normalize_phase(pick);
}

}  // namespace

cplx branch_sqrt(cplx a) {
  if (a == cplx{0.0, 0.0}) return 0.0;
  return std::polar(std::sqrt(std::abs(a)), 0.5 * arg_positive(a));
}

Eigen2 eig2(const Mat2& m) {
  const cplx tr = m.trace();
  const cplx d = det(m);
  const cplx disc = tr * tr - 4.0 * d;
  const cplx root = branch_sqrt(disc);

  Eigen2 out;
  out.zeta_plus = 0.5 * (tr + root);
  out.zeta_minus = 0.5 * (tr - root);
  out.degenerate = std::abs(disc) <= kDefectiveTol * std::max(1.0, std::norm(tr));

  if (out.degenerate) {
    const cplx z = 0.5 * tr;
    Vec2 v = eigvec_for(m, z);
    if (norm2(v) == 0.0 || max_abs(Mat2{{m(0, 0) - z, m(0, 1), m(1, 0), m(1, 1) - z}}) <=
                               kDefectiveTol * std::max(1.0, std::abs(z))) {
      out.v_plus = {1.0, 0.0};
      out.v_minus = {0.0, 1.0};
    } else {
      out.v_plus = v;
      out.v_minus = v;
    }
    return out;
  }

  out.v_plus = eigvec_for(m, out.zeta_plus);
  out.v_minus = eigvec_for(m, out.zeta_minus);
  return out;
}

double unitarity_deviation(const Mat3& c) {
  const Mat3 g = c.adjoint() * c;
  double dev = 0.0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 3; ++k)
      dev = std::max(dev, std::abs(g(r, k) - (r == k ? 1.0 : 0.0)));
  return dev;
}

bool mat3_is_unitary(const Mat3& c, double tol) { return unitarity_deviation(c) <= tol; }

}  // namespace qw3
