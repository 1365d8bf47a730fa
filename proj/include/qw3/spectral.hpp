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
#include <span>
#include <string>
#include <vector>

#include "qw3/coin.hpp"
#include "qw3/linalg.hpp"
#include "qw3/state.hpp"

namespace qw3 {

// Point spectrum of U = S C for a coin field that is constant outside a
// finite defect window.
//
// Away from the exceptional set Lambda0 (phases where A_x vanishes for some
// coin), exp(i l) is an eigenvalue iff |tr T_{+-inf}| > 2 and
//
//   chi(l) = (T_{x+} ... T_{x-} v_{-inf}^>) x v_{+inf}^<  = 0.
//
// Phases in Lambda0 are adjudicated exactly by lambda0_adjudicate().

inline constexpr double kTraceBandTol = 1e-9;
inline constexpr double kChiAccept = 1e-8;
inline constexpr double kLambda0Guard = 1e-6;
inline constexpr double kResidualAccept = 1e-8;
inline constexpr double kTailTarget = 1e-12;
inline constexpr double kTailLimit = 1e-10;
inline constexpr int kMaxRefineIterations = 200;
inline constexpr Site kMaxTailSites = 1'000'000;

struct AsymptoticSpectrum {
  cplx trace;
  cplx zeta_less;     // |zeta_less| <= 1
  cplx zeta_greater;  // |zeta_greater| >= 1
  Vec2 v_less;
  Vec2 v_greater;
  bool in_lambda = false;  // |tr| >= 2 + kTraceBandTol
};

AsymptoticSpectrum asymptotic_spectrum(const Mat2& transfer);

/// Throws NumericalError when A(lambda) = 0 for the coin; such phases belong
/// to Lambda0 and have no transfer matrix.
AsymptoticSpectrum asymptotic_spectrum(const CoinMatrix& coin, double lambda);

struct ChiSample {
  double lambda = 0.0;
  std::optional<cplx> chi;  // set iff in_lambda && !near_lambda0
  bool in_lambda = false;
  bool near_lambda0 = false;
};

/// Evaluates chi for one field; holds the field's Lambda0 set.
class ChiEvaluator {
 public:
  explicit ChiEvaluator(CoinField field);

  ChiSample operator()(double lambda) const;

  const CoinField& field() const { return field_; }
  const std::vector<double>& lambda0() const { return lambda0_; }
  bool near_lambda0(double lambda) const;

 private:
  CoinField field_;
  std::vector<double> lambda0_;
};

ChiSample chi(const CoinField& field, double lambda);

/// chi on the uniform grid lambda_k = 2 pi k / grid_n.
std::vector<ChiSample> scan_chi(const CoinField& field, int grid_n, bool parallel = true);

enum class RootSource { ChiRoot, Lambda0Compact };

const char* to_string(RootSource s);

struct EigenvalueRecord {
  double lambda = 0.0;
  double chi_residual = 0.0;  // |chi| at the root (chain mismatch for Lambda0 records)
  cplx zeta_right;            // decay rate for x >= x+; 0 for a compact right side
  cplx zeta_left;             // growth rate for x <= x-; 0 for a compact left side
  StateVector eigvec;
  double op_residual = 0.0;
  RootSource source = RootSource::ChiRoot;
};

struct RootOptions {
  int grid_n = 4000;
  double refine_tol = 1e-12;
  bool parallel = true;
};

struct RootReport {
  std::vector<EigenvalueRecord> records;  // sorted by lambda
  std::vector<std::string> diagnostics;
  bool numerical_failure = false;  // a diagnostic invalidates the result
};

/// Grid scan of |chi|^2, golden-section refinement of each interior local
/// minimum, acceptance at |chi| <= kChiAccept and residual certification of
/// the reconstructed eigenvector.
RootReport find_roots(const CoinField& field, const RootOptions& options = {});

/// Eigenvalues at the phases of Lambda0 (compactly supported or mixed
/// solutions), each certified by its operator residual.
RootReport lambda0_adjudicate(const CoinField& field);

/// find_roots followed by lambda0_adjudicate, merged and sorted.
RootReport find_eigenvalues(const CoinField& field, const RootOptions& options = {});

/// Window [x- - m_left - 1, x+ + m_right] whose tails fall to kTailTarget.
/// Throws NumericalError if a tail would need more than kMaxTailSites.
SiteRange default_eigenvector_window(const CoinField& field, double lambda);

/// Eigenvector for a chi-root, normalized to unit norm with the first
/// non-negligible amplitude real. `window` is the window of the returned
/// state. Throws NumericalError naming the required margin when the tail at
/// either edge exceeds kTailLimit.
StateVector build_eigenvector(const CoinField& field, double lambda, SiteRange window);

}  // namespace qw3
