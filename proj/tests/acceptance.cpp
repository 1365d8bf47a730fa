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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qw3/evolution.hpp"
#include "qw3/spectral.hpp"
#include "qw3/transfer.hpp"

namespace {

using namespace qw3;
using oracle::kPi;

const double kThetas[] = {kPi / 12.0, 3.0 * kPi / 12.0, 7.0 * kPi / 12.0, 11.0 * kPi / 12.0};
const char* kThetaNames[] = {"pi/12", "3pi/12", "7pi/12", "11pi/12"};
const double kOmegaBarArg = -2.0 * kPi / 3.0;

CoinField one_defect(double th) { return field_one_defect(make_fourier(), phase_scale(make_fourier(), th)); }
CoinField two_phase(double th) { return field_two_phase(make_fourier(), phase_scale(make_fourier(), th)); }

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::pair<Mat3, double>> random_suite() {
  std::mt19937_64 rng(20260101);
  std::vector<std::pair<Mat3, double>> out;
  for (int i = 0; i < 1000; ++i) {
    const Mat3 u = oracle::random_unitary(rng);
    for (int k = 0; k < 10; ++k) out.emplace_back(u, oracle::random_angle(rng));
  }
  return out;
}

Verdict counts(const std::function<CoinField(double)>& make, const std::size_t (&want)[4],
               const RootOptions& opts, double time_limit) {
  Verdict v;
  std::string got;
  for (int i = 0; i < 4; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const RootReport r = find_eigenvalues(make(kThetas[i]), opts);
    const double dt = seconds_since(t0);
    got += fmt::format("{}{}", i ? "," : "", r.records.size());
    if (r.records.size() != want[i])
      v.fail(fmt::format("theta={} gave {} want {}", kThetaNames[i], r.records.size(), want[i]));
    if (r.numerical_failure) v.fail(fmt::format("theta={} numerical failure", kThetaNames[i]));
    if (dt > time_limit) v.fail(fmt::format("theta={} took {:.2f}s", kThetaNames[i], dt));
  }
  v.note("counts " + got);
  return v;
}

Verdict criterion1() {
  const std::size_t want[4] = {3, 4, 6, 6};
  return counts(one_defect, want, RootOptions{}, 10.0);
}

Verdict criterion2() {
  const std::size_t want[4] = {0, 1, 2, 3};
  return counts(two_phase, want, RootOptions{}, 10.0);
}

Verdict criterion3() {
  Verdict v;
  double worst = 0.0;
  int n = 0;
  for (const double th : kThetas) {
    for (const CoinField& f : {one_defect(th), two_phase(th)}) {
      for (const EigenvalueRecord& rec : find_eigenvalues(f).records) {
        const double r = op_residual(f, rec.eigvec, rec.lambda);
        worst = std::max(worst, r);
        ++n;
        if (r > 1e-8) v.fail(fmt::format("lambda={:.12f} residual {:.2e}", rec.lambda, r));
      }
    }
  }
  v.note(fmt::format("{} roots, worst residual {:.2e}", n, worst));
  return v;
}

bool same_set(std::vector<double> a, std::vector<double> b, double tol) {
  if (a.size() != b.size()) return false;
  for (double x : a) {
    bool hit = false;
    for (double y : b) hit = hit || angle_distance(x, y) <= tol;
    if (!hit) return false;
  }
  return true;
}

Verdict criterion4() {
  Verdict v;
  const double delta = make_fourier().det_phase();
  for (int i = 0; i < 4; ++i) {
    const double th = kThetas[i];
    // Sets as displayed for the two Fourier models.
    const std::vector<double> shown_one{wrap_angle(kOmegaBarArg - th + delta),
                                        wrap_angle(kOmegaBarArg + delta)};
    const std::vector<double> shown_two{wrap_angle(kOmegaBarArg + delta),
                                        wrap_angle(kOmegaBarArg + th + delta)};
    const std::vector<double> got_one = lambda0_set(one_defect(th));
    const std::vector<double> got_two = lambda0_set(two_phase(th));
    if (!same_set(got_one, shown_one, 1e-12))
      v.fail(fmt::format("one-defect theta={}: computed {{{:.12f}, {:.12f}}} vs displayed "
                         "{{{:.12f}, {:.12f}}}",
                         kThetaNames[i], got_one.at(0), got_one.at(1), shown_one[0], shown_one[1]));
    if (!same_set(got_two, shown_two, 1e-12))
      v.fail(fmt::format("two-phase theta={}: computed set differs from display", kThetaNames[i]));
    // Independent check: every computed angle is where some coin's A vanishes.
    for (const CoinField& f : {one_defect(th), two_phase(th)}) {
      std::vector<double> brute;
      for (const CoinMatrix& c : f.distinct_coins()) brute.push_back(oracle::brute_force_a_zero(c.matrix()));
      if (!same_set(lambda0_set(f), brute, 1e-7)) v.fail("computed set disagrees with brute-force |A| minima");
      if (!lambda0_adjudicate(f).records.empty())
        v.fail(fmt::format("theta={} adjudication returned an eigenvalue", kThetaNames[i]));
    }
  }
  return v;
}

Verdict criterion5(const std::vector<std::pair<Mat3, double>>& suite) {
  Verdict v;
  double worst = 0.0;
  for (const auto& [m, l] : suite) {
    const CoinMatrix c(m);
    if (a_vanishes(c, l)) continue;
    worst = std::max(worst, std::abs(std::abs(det(transfer_matrix(c, l))) - 1.0));
  }
  if (worst > 1e-10) v.fail("max ||det T| - 1| too large");
  v.note(fmt::format("{} samples, max ||det T| - 1| = {:.2e}", suite.size(), worst));
  return v;
}

Verdict criterion6(const std::vector<std::pair<Mat3, double>>& suite) {
  Verdict v;
  double worst_ad = 0.0;
  double worst_tr = 0.0;      // relative to max(1, |tr T|)
  double worst_tr_abs = 0.0;
  double trace_at_worst = 0.0;
  int mismatched = 0;
  for (const auto& [m, l] : suite) {
    const CoinMatrix c(m);
    const RationalCoefficients r = abcd(c, l);
    worst_ad = std::max(worst_ad, std::abs(std::abs(r.a) - std::abs(r.d)));
    if (!a_vanishes(c, l)) {
      const Mat2 t = transfer_matrix(c, l);
      const double defect = std::abs(t.trace() - det(t) * std::conj(t.trace()));
      const double rel = defect / std::max(1.0, std::abs(t.trace()));
      if (defect > worst_tr_abs) {
        worst_tr_abs = defect;
        trace_at_worst = std::abs(t.trace());
      }
      worst_tr = std::max(worst_tr, rel);
    }
  }
  // A = 0 <=> D = 0 at the constructed angle, on the random coins and on
  // phase-dressed Fourier/Grover coins where |a11| = |a33| makes A vanish.
  std::mt19937_64 rng(7);
  int vanishing = 0;
  for (std::size_t i = 0; i < suite.size(); i += 10) {
    Mat3 dressed = (i % 20 == 0 ? make_fourier() : make_grover()).matrix();
    double p[3], q[3];
    for (int k = 0; k < 3; ++k) {
      p[k] = oracle::random_angle(rng);
      q[k] = oracle::random_angle(rng);
    }
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) dressed(a, b) *= std::polar(1.0, p[a] + q[b]);
    for (const Mat3& m : {suite[i].first, dressed}) {
      const CoinMatrix c(m);
      const double l = wrap_angle(c.det_phase() + std::arg(std::conj(c.a(2, 2)) / c.a(0, 0)));
      const RationalCoefficients r = abcd(c, l);
      const bool a0 = std::abs(r.a) <= 1e-10;
      const bool d0 = std::abs(r.d) <= 1e-10;
      if (a0 != d0) ++mismatched;
      if (a0) ++vanishing;
    }
  }
  if (worst_ad > 1e-10) v.fail("|A| != |D|");
  if (worst_tr > 1e-10) v.fail("trace identity violated");
  if (mismatched > 0) v.fail(fmt::format("{} coins with A=0 xor D=0", mismatched));
  if (vanishing == 0) v.fail("no coin exercised A = 0");
  v.note(fmt::format("max ||A|-|D|| {:.2e}; trace defect max {:.2e} relative to max(1,|tr|), "
                     "{:.2e} absolute at |tr| = {:.3g}; {} coins with A=D=0",
                     worst_ad, worst_tr, worst_tr_abs, trace_at_worst, vanishing));
  return v;
}

Verdict criterion7() {
  Verdict v;
  const CoinMatrix f = make_fourier();
  int disagree = 0;
  int banded = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const double l = kTwoPi * k / n;
    if (a_vanishes(f, l)) continue;
    const AsymptoticSpectrum s = asymptotic_spectrum(f, l);
    const double tr = std::abs(s.trace);
    if (std::abs(tr - 2.0) <= 1e-9) {
      ++banded;
      continue;
    }
    if ((tr > 2.0) != (std::abs(s.zeta_greater) > 1.0 + 1e-8)) ++disagree;
  }
  if (disagree) v.fail(fmt::format("{} disagreements", disagree));
  v.note(fmt::format("{} grid points, {} in the band", n, banded));
  return v;
}

Verdict criterion8(const std::vector<std::pair<Mat3, double>>& suite) {
  Verdict v;
  double worst = 0.0;
  for (const auto& [m, l] : suite) {
    if (std::abs(oracle::rational_abcd(m, l).a) <= 1e-6) continue;
    const Mat2 t = transfer_matrix(CoinMatrix(m), l);
    const Mat2 o = oracle::transfer_from_abcd(m, l);
    for (std::size_t k = 0; k < 4; ++k)
      worst = std::max(worst, std::abs(t.m[k] - o.m[k]) / std::max(1.0, std::abs(o.m[k])));
  }
  if (worst > 1e-10) v.fail("entrywise disagreement");
  v.note(fmt::format("max relative entry difference {:.2e}", worst));
  return v;
}

Verdict criterion9() {
  Verdict v;
  const RootReport f = find_eigenvalues(field_homogeneous(make_fourier()));
  if (!f.records.empty()) v.fail(fmt::format("Fourier gave {} eigenvalues", f.records.size()));
  if (!lambda0_adjudicate(field_homogeneous(make_fourier())).records.empty()) v.fail("Fourier Lambda0 not empty");
  const RootReport g = find_eigenvalues(field_homogeneous(make_grover()));
  if (g.records.size() != 1) {
    v.fail(fmt::format("Grover gave {} eigenvalues", g.records.size()));
    return v;
  }
  const EigenvalueRecord& r = g.records.front();
  if (std::abs(unit_phase(r.lambda) - 1.0) > 1e-12) v.fail("Grover eigenvalue is not 1");
  if (r.source != RootSource::Lambda0Compact) v.fail("Grover eigenvalue not compact");
  if (r.op_residual > 1e-8) v.fail("Grover residual too large");
  v.note(fmt::format("Grover lambda={:.3g}, residual {:.2e}", r.lambda, r.op_residual));
  return v;
}

double origin_mass(const Distribution& d) {
  double s = 0.0;
  for (Site x = -2; x <= 2; ++x) s += d.at(x);
  return s;
}

Verdict criterion10() {
  Verdict v;
  const StateVector psi100 =
      make_localized_state(required_half_width(SiteRange{0, 0}, 100), 0, default_initial_amplitude());
  const StateVector psi200 =
      make_localized_state(required_half_width(SiteRange{0, 0}, 200), 0, default_initial_amplitude());
  const CoinField hom = field_homogeneous(make_fourier());
  const double base_mass = origin_mass(evolve(hom, psi100, 100).back());
  const double baseline = time_averaged_origin(hom, psi200, 200);
  std::string ratios;
  for (int model = 0; model < 2; ++model) {
    for (int i = 0; i < 4; ++i) {
      const CoinField f = model == 0 ? one_defect(kThetas[i]) : two_phase(kThetas[i]);
      const std::string name = fmt::format("{} theta={}", model == 0 ? "one-defect" : "two-phase",
                                           kThetaNames[i]);
      if (find_eigenvalues(f).records.empty()) continue;
      const auto t0 = std::chrono::steady_clock::now();
      const double mass = origin_mass(evolve(f, psi100, 100).back());
      const double avg = time_averaged_origin(f, psi200, 200);
      const double dt = seconds_since(t0);
      const double ratio = avg / baseline;
      ratios += fmt::format("{}{}:{:.2f}x", ratios.empty() ? "" : " ", name, ratio);
      if (mass < 2.0 * base_mass)
        v.fail(fmt::format("{} origin mass {:.4f} vs baseline {:.4f}", name, mass, base_mass));
      if (ratio < 5.0) v.fail(fmt::format("{} time average {:.4f} is {:.2f}x baseline", name, avg, ratio));
      if (dt > 5.0) v.fail(fmt::format("{} took {:.2f}s", name, dt));
    }
  }
  v.note(fmt::format("baseline {:.4f}; {}", baseline, ratios));
  return v;
}

Verdict criterion11() {
  RootOptions fine;
  fine.grid_n = 8000;
  fine.refine_tol = 1e-13;
  const std::size_t one[4] = {3, 4, 6, 6};
  const std::size_t two[4] = {0, 1, 2, 3};
  Verdict a = counts(one_defect, one, fine, 1e9);
  const Verdict b = counts(two_phase, two, fine, 1e9);
  if (!b.pass) a.pass = false;
  a.detail = "one-defect " + a.detail + "; two-phase " + b.detail;
  return a;
}

}  // namespace

int main() {
  const auto suite = random_suite();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"eigenvalue counts, one-defect Fourier walk", criterion1},
      {"eigenvalue counts, two-phase Fourier walk", criterion2},
      {"residual certification of every accepted root", criterion3},
      {"Lambda0 sets equal the displayed sets and contribute no eigenvalue", criterion4},
      {"|det T| = 1 on randomized coins", [&] { return criterion5(suite); }},
      {"|A| = |D|, A=0 <=> D=0, tr T = det T conj(tr T)", [&] { return criterion6(suite); }},
      {"|tr T| > 2 <=> |zeta>| > 1 on the Fourier grid", criterion7},
      {"closed-form T agrees with the rational construction", [&] { return criterion8(suite); }},
      {"homogeneous Fourier and Grover corollaries", criterion9},
      {"dynamical cross-check against root counts", criterion10},
      {"counts stable at grid 8000 and refine-tol 1e-13", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Verdict v = criteria[i].second();
    if (!v.pass) ++failed;
    fmt::print("{} [{:2}] {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
