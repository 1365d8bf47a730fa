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

#include "qw3/spectral.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qw3/errors.hpp"
#include "qw3/evolution.hpp"
#include "qw3/kernels.hpp"
#include "qw3/transfer.hpp"

namespace qw3 {

namespace {

constexpr double kRootMergeTol = 1e-9;
constexpr double kDecayMargin = 1e-6;
constexpr double kParallelTol = 1e-9;
// Slope of |chi| below this at a root suggests a tangential (double) zero.
constexpr double kFlatSlope = 1e-6;

// Unit norm; the first amplitude above 1e-8 of the largest one is made real
// and positive. The relative floor keeps 1e-12 tail noise from fixing the phase.
void normalize_state(StateVector& psi) {
  const double n2 = psi.norm2();
  if (n2 == 0.0) return;
  double biggest = 0.0;
  for (const auto& v : psi.amplitudes())
    for (const auto& e : v) biggest = std::max(biggest, std::abs(e));
  cplx rot = 1.0;
  bool found = false;
  for (const auto& v : psi.amplitudes()) {
    for (const auto& e : v) {
      if (std::abs(e) > 1e-8 * biggest) {
        rot = std::conj(e) / std::abs(e);
        found = true;
        break;
      }
    }
    if (found) break;
  }
  psi.scale(rot / std::sqrt(n2));
}

// Sites needed for |rate|^m <= target, rate < 1.
Site tail_sites(double rate, double target) {
  if (rate <= 0.0) return 1;
  if (rate >= 1.0) return std::numeric_limits<Site>::max();
  const double m = std::ceil(std::log(target) / std::log(rate));
  if (m > static_cast<double>(std::numeric_limits<Site>::max() / 2))
    return std::numeric_limits<Site>::max();
  return std::max<Site>(1, static_cast<Site>(m));
}

Mat2 inverse(const Mat2& t) {
  const cplx d = det(t);
  Mat2 out;
  out(0, 0) = t(1, 1) / d;
  out(0, 1) = -t(0, 1) / d;
  out(1, 0) = -t(1, 0) / d;
  out(1, 1) = t(0, 0) / d;
  return out;
}

struct Refined {
  double lambda = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

template <class F>
Refined golden_section(F&& f, double lo, double hi, double tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (hi - lo > tol) {
    if (it >= kMaxRefineIterations) return {0.5 * (lo + hi), std::min(fc, fd), it, false};
    ++it;
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {mid, f(mid), it, true};
}

double chi_norm2(const ChiEvaluator& eval, double lambda) {
  const ChiSample s = eval(lambda);
  return s.chi ? std::norm(*s.chi) : std::numeric_limits<double>::infinity();
}

// Subspace of C^2: {0}, a line, or everything.
struct Subspace {
  int dim = 0;
  Vec2 basis{};
};

// A zero relation vector is a vacuous constraint.
Subspace kernel_line(const Vec2& v) {
  if (norm(v) == 0.0) return {2, {}};
  return {1, v};
}

Subspace intersect(const Subspace& s, const Subspace& e, double& mismatch) {
  mismatch = 0.0;
  if (s.dim == 0 || e.dim == 0) return {};
  if (s.dim == 2) return e;
  if (e.dim == 2) return s;
  mismatch = std::abs(cross(s.basis, e.basis));
  return mismatch <= kParallelTol ? s : Subspace{};
}

// A solution of the reduced recursion at a Lambda0 phase, supported on
// [start, end] plus optional geometric tails.
struct Lambda0Candidate {
  Site start = 0;
  Site end = 0;
  std::vector<Vec2> values;  // psi~(start..end)
  bool geometric_left = false;
  bool geometric_right = false;
  cplx zeta_left{};
  cplx zeta_right{};
  double mismatch = 0.0;
};

StateVector assemble_candidate(const CoinField& field, double lambda, const Lambda0Candidate& c) {
  const Site m_left =
      c.geometric_left ? tail_sites(1.0 / std::abs(c.zeta_left), kTailTarget) : Site{0};
  const Site m_right = c.geometric_right ? tail_sites(std::abs(c.zeta_right), kTailTarget) : Site{0};
  if (m_left > kMaxTailSites || m_right > kMaxTailSites)
    throw NumericalError(fmt::format("eigenvector tail at lambda = {:.17g} decays too slowly", lambda));

  ReducedState red(SiteRange{c.start - m_left, c.end + m_right});
  for (Site x = c.start; x <= c.end; ++x) red.at(x) = c.values[static_cast<std::size_t>(x - c.start)];
  Vec2 cur = red.at(c.start);
  for (Site x = c.start - 1; x >= c.start - m_left; --x) {
    cur = (1.0 / c.zeta_left) * cur;
    red.at(x) = cur;
  }
  cur = red.at(c.end);
  for (Site x = c.end + 1; x <= c.end + m_right; ++x) {
    cur = c.zeta_right * cur;
    red.at(x) = cur;
  }
  StateVector psi = iota_inverse(red, field, lambda);
  normalize_state(psi);
  return psi;
}

}  // namespace

AsymptoticSpectrum asymptotic_spectrum(const Mat2& transfer) {
  const Eigen2 e = eig2(transfer);
  AsymptoticSpectrum s;
  s.trace = transfer.trace();
  const bool plus_is_less = std::abs(e.zeta_plus) <= std::abs(e.zeta_minus);
  s.zeta_less = plus_is_less ? e.zeta_plus : e.zeta_minus;
  s.zeta_greater = plus_is_less ? e.zeta_minus : e.zeta_plus;
  s.v_less = plus_is_less ? e.v_plus : e.v_minus;
  s.v_greater = plus_is_less ? e.v_minus : e.v_plus;
  s.in_lambda = !e.degenerate && std::abs(s.trace) >= 2.0 + kTraceBandTol;
  return s;
}

AsymptoticSpectrum asymptotic_spectrum(const CoinMatrix& coin, double lambda) {
  if (a_vanishes(coin, lambda))
    throw NumericalError(fmt::format(
        "A(lambda) = 0 at lambda = {:.17g}: no transfer matrix, phase belongs to Lambda0", lambda));
  return asymptotic_spectrum(transfer_matrix(coin, lambda));
}

ChiEvaluator::ChiEvaluator(CoinField field)
    : field_(std::move(field)), lambda0_(lambda0_set(field_)) {}

bool ChiEvaluator::near_lambda0(double lambda) const {
  return std::any_of(lambda0_.begin(), lambda0_.end(),
                     [&](double l0) { return angle_distance(lambda, l0) < kLambda0Guard; });
}

ChiSample ChiEvaluator::operator()(double lambda) const {
  ChiSample s;
  s.lambda = lambda;
  s.near_lambda0 = near_lambda0(lambda);

  const CoinMatrix& cm = field_.c_minus();
  const CoinMatrix& cp = field_.c_plus();
  if (a_vanishes(cm, lambda) || a_vanishes(cp, lambda)) {
    s.near_lambda0 = true;
    return s;
  }
  const Mat2 t_plus = transfer_matrix(cp, lambda);
  const AsymptoticSpectrum left = asymptotic_spectrum(transfer_matrix(cm, lambda));
  const AsymptoticSpectrum right = asymptotic_spectrum(t_plus);
  s.in_lambda = left.in_lambda && right.in_lambda;
  if (!s.in_lambda || s.near_lambda0) return s;

  Vec2 v = left.v_greater;
  for (Site x = field_.x_minus(); x < field_.x_plus(); ++x) {
    const CoinMatrix& c = field_.lookup(x);
    if (a_vanishes(c, lambda)) {
      s.near_lambda0 = true;
      return s;
    }
    v = transfer_matrix(c, lambda) * v;
  }
  v = t_plus * v;
  s.chi = cross(v, right.v_less);
  return s;
}

ChiSample chi(const CoinField& field, double lambda) { return ChiEvaluator(field)(lambda); }

std::vector<ChiSample> scan_chi(const CoinField& field, int grid_n, bool parallel) {
  if (grid_n < 1) throw ConfigError("grid size must be positive");
  const ChiEvaluator eval(field);
  std::vector<ChiSample> samples(static_cast<std::size_t>(grid_n));
  if (parallel)
    kernels::chi_grid_omp(eval, samples);
  else
    kernels::chi_grid_serial(eval, samples);
  return samples;
}

const char* to_string(RootSource s) {
  switch (s) {
    case RootSource::ChiRoot:
      return "chi-root";
    case RootSource::Lambda0Compact:
      return "lambda0-compact";
  }
  return "unknown";
}

SiteRange default_eigenvector_window(const CoinField& field, double lambda) {
  const AsymptoticSpectrum left = asymptotic_spectrum(field.c_minus(), lambda);
  const AsymptoticSpectrum right = asymptotic_spectrum(field.c_plus(), lambda);
  if (!left.in_lambda || !right.in_lambda)
    throw NumericalError(fmt::format("lambda = {:.17g} lies outside Lambda", lambda));
  const Site m_left = tail_sites(1.0 / std::abs(left.zeta_greater), kTailTarget);
  const Site m_right = tail_sites(std::abs(right.zeta_less), kTailTarget);
  if (m_left > kMaxTailSites || m_right > kMaxTailSites)
    throw NumericalError(fmt::format(
        "eigenvector at lambda = {:.17g} needs {} / {} tail sites (limit {})", lambda, m_left,
        m_right, kMaxTailSites));
  return SiteRange{field.x_minus() - m_left - 1, field.x_plus() + m_right};
}

StateVector build_eigenvector(const CoinField& field, double lambda, SiteRange window) {
  const AsymptoticSpectrum left = asymptotic_spectrum(field.c_minus(), lambda);
  const AsymptoticSpectrum right = asymptotic_spectrum(field.c_plus(), lambda);
  if (!left.in_lambda || !right.in_lambda)
    throw NumericalError(fmt::format("lambda = {:.17g} lies outside Lambda", lambda));

  const Site x_minus = field.x_minus();
  const Site x_plus = field.x_plus();
  const SiteRange reduced{window.lo + 1, window.hi};

  const double left_rate = 1.0 / std::abs(left.zeta_greater);
  const double right_rate = std::abs(right.zeta_less);
  const Site need_left = tail_sites(left_rate, kTailTarget);
  const Site need_right = tail_sites(right_rate, kTailTarget);
  const Site have_left = x_minus - reduced.lo;
  const Site have_right = reduced.hi - x_plus;
  const bool left_short =
      have_left < 0 || std::pow(left_rate, static_cast<double>(have_left)) > kTailLimit;
  const bool right_short =
      have_right < 0 || std::pow(right_rate, static_cast<double>(have_right)) > kTailLimit;
  if (left_short || right_short)
    throw NumericalError(fmt::format(
        "window [{}, {}] too small for the eigenvector at lambda = {:.17g}: need margin m >= {} "
        "left of x- = {} and m >= {} right of x+ = {}",
        window.lo, window.hi, lambda, need_left, x_minus, need_right, x_plus));

  ReducedState red(reduced);
  Vec2 cur = left.v_greater;
  for (Site x = x_minus; x >= reduced.lo; --x) {
    red.at(x) = cur;
    cur = (1.0 / left.zeta_greater) * cur;
  }
  Vec2 v = left.v_greater;
  for (Site x = x_minus; x < x_plus; ++x) {
    v = transfer_matrix(field.lookup(x), lambda) * v;
    red.at(x + 1) = v;
  }
  cur = red.at(x_plus);
  for (Site x = x_plus + 1; x <= reduced.hi; ++x) {
    cur = right.zeta_less * cur;
    red.at(x) = cur;
  }

  StateVector psi = iota_inverse(red, field, lambda);
  normalize_state(psi);
  return psi;
}

RootReport find_roots(const CoinField& field, const RootOptions& options) {
  if (options.grid_n < 1000) throw ConfigError("grid size must be at least 1000");
  if (!(options.refine_tol > 0.0)) throw ConfigError("refine tolerance must be positive");

  const ChiEvaluator eval(field);
  std::vector<ChiSample> samples(static_cast<std::size_t>(options.grid_n));
  if (options.parallel)
    kernels::chi_grid_omp(eval, samples);
  else
    kernels::chi_grid_serial(eval, samples);

  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  const double h = kTwoPi / static_cast<double>(n);
  auto at = [&](std::ptrdiff_t k) -> const ChiSample& { return samples[((k % n) + n) % n]; };

  std::vector<std::ptrdiff_t> minima;
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const ChiSample& prev = at(k - 1);
    const ChiSample& cur = at(k);
    const ChiSample& next = at(k + 1);
    if (!prev.chi || !cur.chi || !next.chi) continue;
    const double fp = std::norm(*prev.chi);
    const double fc = std::norm(*cur.chi);
    const double fn = std::norm(*next.chi);
    if (fc < fp && fc <= fn) minima.push_back(k);
  }

  struct Outcome {
    std::optional<EigenvalueRecord> record;
    std::vector<std::string> diagnostics;
    bool failure = false;
  };
  std::vector<Outcome> outcomes(minima.size());

  auto refine_one = [&](std::size_t i) {
    Outcome& out = outcomes[i];
    const double center = static_cast<double>(minima[i]) * h;
    const Refined r = golden_section([&](double l) { return chi_norm2(eval, l); }, center - h,
                                     center + h, options.refine_tol);
    if (!r.converged) {
      out.diagnostics.push_back(fmt::format(
          "refinement near lambda = {:.17g} did not reach width {:.3e} within {} iterations",
          wrap_angle(center), options.refine_tol, kMaxRefineIterations));
      out.failure = true;
      return;
    }
    const double lambda = wrap_angle(r.lambda);
    const ChiSample s = eval(lambda);
    if (!s.chi) return;
    const double abs_chi = std::abs(*s.chi);
    if (abs_chi > kChiAccept) return;

    const double step = 10.0 * options.refine_tol;
    const double below = std::sqrt(chi_norm2(eval, lambda - step));
    const double above = std::sqrt(chi_norm2(eval, lambda + step));
    if (!(below > abs_chi && above > abs_chi))
      out.diagnostics.push_back(fmt::format(
          "root at lambda = {:.17g}: |chi| = {:.3e} is not a strict minimum at +-{:.1e}", lambda,
          abs_chi, step));
    const double slope = std::sqrt(chi_norm2(eval, lambda + 1e-6)) / 1e-6;
    if (slope < kFlatSlope)
      out.diagnostics.push_back(fmt::format(
          "root at lambda = {:.17g}: |chi| slope {:.3e} suggests a tangential zero", lambda,
          slope));

    try {
      EigenvalueRecord rec;
      rec.lambda = lambda;
      rec.chi_residual = abs_chi;
      rec.source = RootSource::ChiRoot;
      rec.zeta_right = asymptotic_spectrum(field.c_plus(), lambda).zeta_less;
      rec.zeta_left = asymptotic_spectrum(field.c_minus(), lambda).zeta_greater;
      if (std::abs(rec.zeta_right) > 1.0 - kDecayMargin ||
          std::abs(rec.zeta_left) < 1.0 + kDecayMargin) {
        out.diagnostics.push_back(fmt::format(
            "root at lambda = {:.17g} rejected: decay rates |zeta_right| = {:.9f}, "
            "|zeta_left| = {:.9f} too close to 1",
            lambda, std::abs(rec.zeta_right), std::abs(rec.zeta_left)));
        return;
      }
      rec.eigvec = build_eigenvector(field, lambda, default_eigenvector_window(field, lambda));
      rec.op_residual = op_residual(field, rec.eigvec, lambda);
      if (rec.op_residual > kResidualAccept) {
        out.diagnostics.push_back(fmt::format(
            "root at lambda = {:.17g} rejected: eigenvector residual {:.3e} exceeds {:.0e}",
            lambda, rec.op_residual, kResidualAccept));
        out.failure = true;
        return;
      }
      out.record = std::move(rec);
    } catch (const NumericalError& e) {
      out.diagnostics.push_back(e.what());
      out.failure = true;
    }
  };

  if (options.parallel) {
    const auto count = static_cast<std::ptrdiff_t>(minima.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::worker_count())
    for (std::ptrdiff_t i = 0; i < count; ++i) refine_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < minima.size(); ++i) refine_one(i);
  }

  RootReport report;
  for (auto& o : outcomes) {
    for (auto& d : o.diagnostics) report.diagnostics.push_back(std::move(d));
    report.numerical_failure = report.numerical_failure || o.failure;
    if (!o.record) continue;
    const bool duplicate =
        std::any_of(report.records.begin(), report.records.end(), [&](const EigenvalueRecord& r) {
          return angle_distance(r.lambda, o.record->lambda) <= kRootMergeTol;
        });
    if (!duplicate) report.records.push_back(std::move(*o.record));
  }
  std::sort(report.records.begin(), report.records.end(),
            [](const EigenvalueRecord& a, const EigenvalueRecord& b) { return a.lambda < b.lambda; });
  return report;
}

RootReport lambda0_adjudicate(const CoinField& field) {
  RootReport report;
  const CoinMatrix& cm = field.c_minus();
  const CoinMatrix& cp = field.c_plus();

  for (const double l0 : lambda0_set(field)) {
    std::vector<Lambda0Candidate> chain;   // solutions touching the defect window
    std::vector<Lambda0Candidate> family;  // single-site solutions deep in a tail
    bool underdetermined = false;

    auto close_segment = [&](Site start, Site end, const Subspace& entry, const Subspace& exit,
                             const std::vector<Mat2>& mats, bool geo_left, cplx zeta_left,
                             bool geo_right, cplx zeta_right) {
      double mismatch = 0.0;
      const Subspace sol = intersect(entry, exit, mismatch);
      if (sol.dim == 0) return;
      Vec2 u = sol.basis;
      if (sol.dim == 2) {
        underdetermined = true;
        u = {1.0, 0.0};
      }
      Lambda0Candidate c;
      c.start = start;
      c.end = end;
      c.values.assign(static_cast<std::size_t>(end - start + 1), Vec2{});
      c.values.back() = u;
      for (std::size_t k = mats.size(); k-- > 0;) c.values[k] = inverse(mats[k]) * c.values[k + 1];
      c.geometric_left = geo_left;
      c.geometric_right = geo_right;
      c.zeta_left = zeta_left;
      c.zeta_right = zeta_right;
      c.mismatch = mismatch;
      chain.push_back(std::move(c));
    };

    // Left boundary: the constraint on psi~(x-) imposed by the left phase.
    Subspace s;
    bool geo_left = false;
    cplx zeta_left{};
    if (!a_vanishes(cm, l0)) {
      const AsymptoticSpectrum sp = asymptotic_spectrum(transfer_matrix(cm, l0));
      if (sp.in_lambda) {
        s = {1, sp.v_greater};
        geo_left = true;
        zeta_left = sp.zeta_greater;
      }
    } else {
      s = kernel_line(zero_case_vectors(cm).right);
    }

    Site seg_start = field.x_minus();
    std::vector<Mat2> mats;
    for (Site x = field.x_minus(); x < field.x_plus(); ++x) {
      const CoinMatrix& c = field.lookup(x);
      if (!a_vanishes(c, l0)) {
        const Mat2 t = transfer_matrix(c, l0);
        mats.push_back(t);
        if (s.dim == 1) s.basis = normalize_phase(t * s.basis);
        continue;
      }
      const ZeroCaseVectors zc = zero_case_vectors(c);
      close_segment(seg_start, x, s, kernel_line(zc.left), mats, geo_left, zeta_left, false, 0.0);
      s = kernel_line(zc.right);
      seg_start = x + 1;
      mats.clear();
      geo_left = false;
      zeta_left = 0.0;
    }

    Subspace e;
    bool geo_right = false;
    cplx zeta_right{};
    if (!a_vanishes(cp, l0)) {
      const AsymptoticSpectrum sp = asymptotic_spectrum(transfer_matrix(cp, l0));
      if (sp.in_lambda) {
        e = {1, sp.v_less};
        geo_right = true;
        zeta_right = sp.zeta_less;
      }
    } else {
      e = kernel_line(zero_case_vectors(cp).left);
    }
    close_segment(seg_start, field.x_plus(), s, e, mats, geo_left, zeta_left, geo_right,
                  zeta_right);

    // Tails where the asymptotic coin has A = 0 decouple site by site; a
    // nonzero site needs both relations, i.e. the compact-support condition.
    auto tail_family = [&](const CoinMatrix& coin, Site site) {
      if (!a_vanishes(coin, l0)) return;
      const ZeroCaseVectors zc = zero_case_vectors(coin);
      double mismatch = 0.0;
      const Subspace sol = intersect(kernel_line(zc.left), kernel_line(zc.right), mismatch);
      if (sol.dim == 0) return;
      if (sol.dim == 2) underdetermined = true;
      Lambda0Candidate c;
      c.start = c.end = site;
      c.values = {sol.dim == 2 ? Vec2{1.0, 0.0} : sol.basis};
      c.mismatch = mismatch;
      family.push_back(std::move(c));
    };
    tail_family(cm, field.x_minus() - 1);
    tail_family(cp, field.x_plus() + 1);

    if (underdetermined)
      report.diagnostics.push_back(fmt::format(
          "lambda0 = {:.17g}: constraint chain is under-determined (vacuous relations)", l0));
    if (chain.empty() && family.empty()) continue;

    const std::size_t total = chain.size() + family.size();
    if (total > 1 || !family.empty())
      report.diagnostics.push_back(fmt::format(
          "lambda0 = {:.17g}: {} independent solution families{}; reporting one eigenvector", l0,
          total, family.empty() ? "" : " including compact tail states (infinite multiplicity)"));

    const Lambda0Candidate& pick = chain.empty() ? family.front() : chain.front();
    try {
      EigenvalueRecord rec;
      rec.lambda = l0;
      rec.chi_residual = pick.mismatch;
      rec.zeta_left = pick.geometric_left ? pick.zeta_left : cplx{};
      rec.zeta_right = pick.geometric_right ? pick.zeta_right : cplx{};
      rec.source = RootSource::Lambda0Compact;
      rec.eigvec = assemble_candidate(field, l0, pick);
      rec.op_residual = op_residual(field, rec.eigvec, l0);
      if (rec.op_residual > kResidualAccept) {
        report.diagnostics.push_back(fmt::format(
            "lambda0 = {:.17g}: candidate rejected, eigenvector residual {:.3e} exceeds {:.0e}",
            l0, rec.op_residual, kResidualAccept));
        continue;
      }
      report.records.push_back(std::move(rec));
    } catch (const NumericalError& err) {
      report.diagnostics.push_back(err.what());
      report.numerical_failure = true;
    }
  }
  return report;
}

RootReport find_eigenvalues(const CoinField& field, const RootOptions& options) {
  RootReport report = find_roots(field, options);
  RootReport extra = lambda0_adjudicate(field);
  for (auto& r : extra.records) report.records.push_back(std::move(r));
  for (auto& d : extra.diagnostics) report.diagnostics.push_back(std::move(d));
  report.numerical_failure = report.numerical_failure || extra.numerical_failure;
  std::sort(report.records.begin(), report.records.end(),
            [](const EigenvalueRecord& a, const EigenvalueRecord& b) { return a.lambda < b.lambda; });
  return report;
}

}  // namespace qw3
