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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qw3/coin.hpp"
#include "qw3/errors.hpp"

namespace qw3 {
namespace {

using oracle::kPi;

TEST(CoinMatrix, FourierEntriesAndDeterminant) {
  const CoinMatrix f = make_fourier();
  const cplx w = std::polar(1.0, 2.0 * kPi / 3.0);
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(std::abs(f.a(1, 1) - s * w), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.a(2, 2) - s * w), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.a(1, 2) - s * w * w), 0.0, 1e-15);
  // det F = -i.
  EXPECT_NEAR(std::abs(det(f.matrix()) - cplx(0.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(f.det_phase(), 1.5 * kPi, 1e-14);
}

TEST(CoinMatrix, GroverEntries) {
  const CoinMatrix g = make_grover();
  EXPECT_NEAR(std::abs(g.a(0, 0) + 1.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.a(0, 1) - 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(det(g.matrix()) - 1.0), 0.0, 1e-14);
}

TEST(CoinMatrix, PhaseScaleShiftsDeterminantByThreeTheta) {
  const CoinMatrix f = make_fourier();
  const CoinMatrix g = phase_scale(f, kPi / 12.0);
  EXPECT_NEAR(angle_distance(g.det_phase(), f.det_phase() + 3.0 * kPi / 12.0), 0.0, 1e-13);
}

TEST(CoinMatrix, RejectsNonUnitaryNamingTolerance) {
  Mat3 m = make_fourier().matrix();
  m(0, 0) *= 1.01;
  try {
    CoinMatrix c(m);
    FAIL() << "accepted a non-unitary coin";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("1e-10"), std::string::npos) << e.what();
  }
}

TEST(CoinMatrix, RejectsDegenerateCoins) {
  EXPECT_THROW(CoinMatrix(Mat3::identity()), ConfigError);
  Mat3 swap{};
  swap(0, 2) = 1.0;
  swap(1, 1) = 1.0;
  swap(2, 0) = 1.0;
  EXPECT_THROW(CoinMatrix{swap}, ConfigError);
  Mat3 nan = make_fourier().matrix();
  nan(2, 1) = std::nan("");
  EXPECT_THROW(CoinMatrix{nan}, ConfigError);
}

TEST(CoinMatrix, RandomUnitariesAccepted) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) EXPECT_NO_THROW(CoinMatrix(oracle::random_unitary(rng)));
}

TEST(CoinField, TwoPhaseLookup) {
  const CoinMatrix f = make_fourier();
  const CoinMatrix r = phase_scale(f, 0.3);
  const CoinField field = field_two_phase(f, r);
  EXPECT_EQ(field.lookup(0), r);
  EXPECT_EQ(field.lookup(-1), f);
  EXPECT_EQ(field.lookup(1'000'000), r);
  EXPECT_EQ(field.lookup(-1'000'000), f);
}

TEST(CoinField, OneDefectLookup) {
  const CoinMatrix f = make_fourier();
  const CoinMatrix d = phase_scale(f, 0.3);
  const CoinField field = field_one_defect(f, d);
  EXPECT_EQ(field.x_minus(), 0);
  EXPECT_EQ(field.x_plus(), 1);
  EXPECT_EQ(field.lookup(0), d);
  EXPECT_EQ(field.lookup(1), f);
  EXPECT_EQ(field.lookup(-1), f);
  EXPECT_EQ(field.distinct_coins().size(), 2u);
}

TEST(CoinField, HomogeneousHasOneDistinctCoin) {
  const CoinField field = field_homogeneous(make_grover());
  EXPECT_EQ(field.distinct_coins().size(), 1u);
  EXPECT_EQ(field.lookup(-7), field.lookup(9));
}

TEST(CoinField, RejectsBadWindows) {
  const CoinMatrix f = make_fourier();
  EXPECT_THROW(CoinField(f, f, 1, 2, {f}), ConfigError);
  EXPECT_THROW(CoinField(f, f, -2, -1, {f}), ConfigError);
  EXPECT_THROW(CoinField(f, f, -1, 1, {f}), ConfigError);
}

}  // namespace
}  // namespace qw3
