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

// qw3: spectral analysis and simulation of three-state quantum walks.
//
//   qw3 validate  (--config F | --model M [--theta T])
//   qw3 scan      ... [--grid N] [--out F]
//   qw3 roots     ... [--grid N] [--refine-tol E] [--out F]
//   qw3 eigvec    ... --lambda L [--window W] [--out F]
//   qw3 evolve    ... --t T [--window W] [--psi0 J] [--x0 X] [--trajectory] [--out F]
//   qw3 demo      fig1|fig2|fig3|fig4 INDEX [--out F]
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical-validity error.

#include <openssl/evp.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qw3/config.hpp"
#include "qw3/errors.hpp"
#include "qw3/evolution.hpp"
#include "qw3/spectral.hpp"
#include "qw3/transfer.hpp"

#ifndef QW3_VERSION
#define QW3_VERSION "0.0.0"
#endif

namespace {

using namespace qw3;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

constexpr double kDemoThetas[] = {std::numbers::pi / 12.0, 3.0 * std::numbers::pi / 12.0,
                                  7.0 * std::numbers::pi / 12.0, 11.0 * std::numbers::pi / 12.0};
constexpr int kDemoSteps = 100;

struct Options {
  std::string config;
  std::string model;
  std::optional<double> theta;
  int grid = 4000;
  double refine_tol = 1e-12;
  std::string out;
  std::optional<double> lambda;
  std::optional<long long> window;
  int t = 0;
  bool trajectory = false;
  std::string psi0;
  long long x0 = 0;
  std::string figure;
  int theta_index = 0;
};

// Adding +0.0 folds -0 into 0.
std::string num(double v) { return fmt::format("{:.17g}", v + 0.0); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CoinField model_field(const std::string& model, std::optional<double> theta) {
  const CoinMatrix f = make_fourier();
  auto need_theta = [&]() {
    if (!theta) throw ConfigError(fmt::format("model '{}' needs --theta", model));
    return *theta;
  };
  if (model == "one-defect") return field_one_defect(f, phase_scale(f, need_theta()));
  if (model == "two-phase") return field_two_phase(f, phase_scale(f, need_theta()));
  if (model == "homogeneous-fourier") return field_homogeneous(f);
  if (model == "homogeneous-grover") return field_homogeneous(make_grover());
  throw ConfigError(fmt::format(
      "unknown model '{}' (one-defect, two-phase, homogeneous-fourier, homogeneous-grover)", model));
}

CoinField load_field(const Options& o) {
  if (!o.config.empty() && !o.model.empty())
    throw ConfigError("give either --config or --model, not both");
  if (!o.config.empty()) return parse_field_config(read_file(o.config));
  if (!o.model.empty()) return model_field(o.model, o.theta);
  throw ConfigError("a coin field is required: --config FILE or --model NAME");
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

// Write to a sibling temp file, then rename over the target.
void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", tmp.string()));
    out << content;
    out.flush();
    if (!out) throw ConfigError(fmt::format("short write to '{}'", tmp.string()));
  }
  fs::rename(tmp, target);
}

class Run {
 public:
  Run(std::string command, const Options& o) : command_(std::move(command)), opts_(o) {
    start_ = std::chrono::steady_clock::now();
  }

  json& params() { return params_; }
  json& extra() { return extra_; }

  // Data goes to --out (with a manifest sidecar) or to stdout.
  void emit(const std::string& content, const CoinField& field) {
    if (opts_.out.empty()) {
      std::cout << content;
      return;
    }
    write_atomic(opts_.out, content);
    json m;
    m["command"] = command_;
    m["params"] = params_;
    m["version"] = QW3_VERSION;
    m["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    m["config_digest"] = "sha256:" + sha256_hex(serialize_field(field));
    if (!extra_.is_null()) m["results"] = extra_;
    write_atomic(opts_.out + ".manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string command_;
  const Options& opts_;
  json params_ = json::object();
  json extra_;
  std::chrono::steady_clock::time_point start_;
};

void field_params(const Options& o, json& p) {
  if (!o.config.empty()) p["config"] = o.config;
  if (!o.model.empty()) p["model"] = o.model;
  if (o.theta) p["theta"] = *o.theta;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json record_json(const EigenvalueRecord& r) {
  return json{{"lambda", r.lambda},
              {"abs_chi", r.chi_residual},
              {"zeta_left", cplx_json(r.zeta_left)},
              {"zeta_right", cplx_json(r.zeta_right)},
              {"op_residual", r.op_residual},
              {"source", to_string(r.source)}};
}

RootOptions root_options(const Options& o) {
  RootOptions r;
  r.grid_n = o.grid;
  r.refine_tol = o.refine_tol;
  return r;
}

std::string scan_csv(const std::vector<ChiSample>& samples) {
  std::string s = "lambda,abs_chi,in_lambda,near_lambda0\n";
  for (const ChiSample& c : samples)
    s += fmt::format("{},{},{},{}\n", num(c.lambda), c.chi ? num(std::abs(*c.chi)) : "nan",
                     c.in_lambda ? 1 : 0, c.near_lambda0 ? 1 : 0);
  return s;
}

std::string state_csv(const StateVector& psi) {
  std::string s = "x,re1,im1,re2,im2,re3,im3,site_norm\n";
  for (Site x = psi.window().lo; x <= psi.window().hi; ++x) {
    const Vec3& v = psi.at(x);
    s += fmt::format("{},{},{},{},{},{},{},{}\n", x, num(v[0].real()), num(v[0].imag()),
                     num(v[1].real()), num(v[1].imag()), num(v[2].real()), num(v[2].imag()),
                     num(norm(v)));
  }
  return s;
}

int cmd_validate(const Options& o) {
  const CoinField f = load_field(o);
  std::cout << fmt::format("window [{}, {}), {} defect coin(s), {} distinct coin(s)\n",
                           f.x_minus(), f.x_plus(), f.defects().size(), f.distinct_coins().size());
  for (const CoinMatrix& c : f.distinct_coins())
    std::cout << fmt::format("  coin: Delta = {}, unitarity deviation {:.3e}, compact-support {}\n",
                             num(c.det_phase()), unitarity_deviation(c.matrix()),
                             compact_support_condition(c) ? "yes" : "no");
  std::cout << "Lambda0:";
  for (double l : lambda0_set(f)) std::cout << ' ' << num(l);
  std::cout << "\nconfig digest sha256:" << sha256_hex(serialize_field(f)) << '\n';
  return 0;
}

int cmd_scan(const Options& o, const std::string& name = "scan") {
  const CoinField f = load_field(o);
  Run run(name, o);
  field_params(o, run.params());
  run.params()["grid"] = o.grid;
  const std::vector<ChiSample> samples = scan_chi(f, o.grid);
  const json l0 = lambda0_set(f);
  run.extra()["lambda0"] = l0;
  run.emit(scan_csv(samples), f);
  if (!o.out.empty()) write_atomic(o.out + ".lambda0.json", json{{"lambda0", l0}}.dump(2) + "\n");
  return 0;
}

int cmd_roots(const Options& o) {
  const CoinField f = load_field(o);
  Run run("roots", o);
  field_params(o, run.params());
  run.params()["grid"] = o.grid;
  run.params()["refine_tol"] = o.refine_tol;
  const RootReport r = find_eigenvalues(f, root_options(o));
  json doc;
  doc["records"] = json::array();
  for (const auto& rec : r.records) doc["records"].push_back(record_json(rec));
  doc["diagnostics"] = r.diagnostics;
  run.extra()["count"] = r.records.size();
  run.emit(doc.dump(2) + "\n", f);
  if (!o.out.empty()) {
    std::cout << fmt::format("{} eigenvalue(s)\n", r.records.size());
    for (const auto& rec : r.records)
      std::cout << fmt::format("  lambda = {}  |chi| = {:.2e}  residual = {:.2e}  {}\n",
                               num(rec.lambda), rec.chi_residual, rec.op_residual,
                               to_string(rec.source));
  }
  for (const auto& d : r.diagnostics) std::cerr << "diagnostic: " << d << '\n';
  return r.numerical_failure ? kExitNumerical : 0;
}

int cmd_eigvec(const Options& o) {
  const CoinField f = load_field(o);
  if (!o.lambda) throw ConfigError("eigvec needs --lambda");
  Run run("eigvec", o);
  field_params(o, run.params());
  run.params()["lambda"] = *o.lambda;
  run.params()["grid"] = o.grid;
  run.params()["refine_tol"] = o.refine_tol;
  if (o.window) run.params()["window"] = *o.window;

  const RootReport r = find_eigenvalues(f, root_options(o));
  const EigenvalueRecord* match = nullptr;
  for (const auto& rec : r.records)
    if (angle_distance(rec.lambda, *o.lambda) <= o.refine_tol) match = &rec;
  if (match == nullptr) {
    std::string msg = fmt::format("lambda = {} is not an accepted eigenvalue;", num(*o.lambda));
    if (r.records.empty()) msg += " the field has none";
    std::vector<const EigenvalueRecord*> near;
    for (const auto& rec : r.records) near.push_back(&rec);
    std::sort(near.begin(), near.end(), [&](auto* a, auto* b) {
      return angle_distance(a->lambda, *o.lambda) < angle_distance(b->lambda, *o.lambda);
    });
    for (std::size_t i = 0; i < near.size() && i < 3; ++i)
      msg += fmt::format("{} {}", i == 0 ? " nearest:" : ",", num(near[i]->lambda));
    throw ConfigError(msg);
  }

  StateVector psi = match->eigvec;
  if (o.window) {
    if (*o.window < 1) throw ConfigError("--window must be positive");
    const SiteRange w{-*o.window, *o.window};
    if (match->source == RootSource::ChiRoot) {
      psi = build_eigenvector(f, match->lambda, w);
    } else {
      const SiteRange s = support_of(match->eigvec);
      if (!w.contains(s.lo) || !w.contains(s.hi))
        throw NumericalError(fmt::format("window [{}, {}] does not hold the support [{}, {}]", w.lo,
                                         w.hi, s.lo, s.hi));
      psi = StateVector(w);
      for (Site x = s.lo; x <= s.hi; ++x) psi.at(x) = match->eigvec.at(x);
    }
  }
  const double res = op_residual(f, psi, match->lambda);
  run.extra()["record"] = record_json(*match);
  run.extra()["op_residual_window"] = res;
  run.emit(state_csv(psi), f);
  return res > kResidualAccept ? kExitNumerical : 0;
}

Vec3 parse_psi0(const std::string& text) {
  if (text.empty()) return default_initial_amplitude();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("--psi0: {}", e.what()));
  }
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("--psi0 must be [[re, im], [re, im], [re, im]]");
  Vec3 v{};
  for (std::size_t k = 0; k < 3; ++k) {
    const json& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ConfigError(fmt::format("--psi0 entry {} must be [re, im]", k));
    v[k] = {e[0].get<double>(), e[1].get<double>()};
  }
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError("--psi0 must be a nonzero finite vector");
  return (1.0 / n) * v;
}

int evolve_to(const Options& o, const CoinField& f, const std::string& name) {
  if (o.t < 0) throw ConfigError("--t must be non-negative");
  Run run(name, o);
  field_params(o, run.params());
  run.params()["t"] = o.t;
  run.params()["x0"] = o.x0;
  run.params()["trajectory"] = o.trajectory;
  const Vec3 amp = parse_psi0(o.psi0);
  run.params()["psi0"] = json::array({cplx_json(amp[0]), cplx_json(amp[1]), cplx_json(amp[2])});
  const Site half = o.window ? *o.window : required_half_width(SiteRange{o.x0, o.x0}, o.t);
  run.params()["window"] = half;
  const StateVector psi0 = make_localized_state(half, o.x0, amp);
  const std::vector<Distribution> d = evolve(f, psi0, o.t);

  std::string csv = o.trajectory ? "t,x,prob\n" : "x,prob\n";
  auto rows = [&](const Distribution& dist) {
    for (Site x = dist.window.lo; x <= dist.window.hi; ++x)
      csv += o.trajectory ? fmt::format("{},{},{}\n", dist.time, x, num(dist.at(x)))
                          : fmt::format("{},{}\n", x, num(dist.at(x)));
  };
  if (o.trajectory)
    for (const auto& dist : d) rows(dist);
  else
    rows(d.back());

  double avg = 0.0;
  for (std::size_t s = 1; s < d.size(); ++s) avg += d[s].at(0);
  if (d.size() > 1) run.extra()["time_averaged_origin"] = avg / static_cast<double>(d.size() - 1);
  run.extra()["final_total"] = d.back().total();
  run.emit(csv, f);
  return 0;
}

int cmd_evolve(const Options& o) { return evolve_to(o, load_field(o), "evolve"); }

int cmd_demo(Options o) {
  if (o.theta_index < 0 || o.theta_index > 3) throw ConfigError("demo index must be 0, 1, 2 or 3");
  o.theta = kDemoThetas[o.theta_index];
  o.config.clear();
  const std::string name = "demo " + o.figure;
  if (o.figure == "fig1" || o.figure == "fig3") {
    o.model = o.figure == "fig1" ? "one-defect" : "two-phase";
    return cmd_scan(o, name);
  }
  if (o.figure == "fig2" || o.figure == "fig4") {
    o.model = o.figure == "fig2" ? "one-defect" : "two-phase";
    o.t = kDemoSteps;
    o.x0 = 0;
    o.psi0.clear();
    return evolve_to(o, model_field(o.model, o.theta), name);
  }
  throw ConfigError(fmt::format("unknown figure '{}' (fig1, fig2, fig3, fig4)", o.figure));
}

void add_field_flags(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "coin field configuration (JSON)");
  app->add_option("--model", o.model,
                  "preset field: one-defect, two-phase, homogeneous-fourier, homogeneous-grover");
  app->add_option("--theta", o.theta, "phase of the defect / right half for presets");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Spectral analysis and simulation of three-state quantum walks"};
  app.set_version_flag("--version", QW3_VERSION);
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "check a coin field and list its Lambda0 set");
  add_field_flags(validate, o);

  auto* scan = app.add_subcommand("scan", "|chi| on a uniform lambda grid (CSV)");
  add_field_flags(scan, o);
  scan->add_option("--grid", o.grid, "grid points on [0, 2pi)")->check(CLI::PositiveNumber);
  scan->add_option("--out", o.out, "output path (stdout if omitted)");

  auto* roots = app.add_subcommand("roots", "eigenvalues with certified eigenvectors (JSON)");
  add_field_flags(roots, o);
  roots->add_option("--grid", o.grid, "grid points on [0, 2pi)")->check(CLI::Range(1000, 100000000));
  roots->add_option("--refine-tol", o.refine_tol, "bracket width for refinement")->check(CLI::PositiveNumber);
  roots->add_option("--out", o.out, "output path (stdout if omitted)");

  auto* eigvec = app.add_subcommand("eigvec", "eigenvector for an accepted eigenvalue (CSV)");
  add_field_flags(eigvec, o);
  eigvec->add_option("--lambda", o.lambda, "eigenphase, as reported by roots")->required();
  eigvec->add_option("--window", o.window, "half-width W of the output window [-W, W]");
  eigvec->add_option("--grid", o.grid, "grid points on [0, 2pi)")->check(CLI::Range(1000, 100000000));
  eigvec->add_option("--refine-tol", o.refine_tol, "bracket width for refinement")->check(CLI::PositiveNumber);
  eigvec->add_option("--out", o.out, "output path (stdout if omitted)");

  auto* evolve = app.add_subcommand("evolve", "probability distribution after t steps (CSV)");
  add_field_flags(evolve, o);
  evolve->add_option("--t", o.t, "number of steps")->required()->check(CLI::NonNegativeNumber);
  evolve->add_option("--window", o.window, "half-width L of the lattice [-L, L]");
  evolve->add_option("--psi0", o.psi0, "initial amplitude [[re,im],[re,im],[re,im]] (normalized)");
  evolve->add_option("--x0", o.x0, "initial site");
  evolve->add_flag("--trajectory", o.trajectory, "write every step with a t column");
  evolve->add_option("--out", o.out, "output path (stdout if omitted)");

  auto* demo = app.add_subcommand("demo", "regenerate figure data: fig1..fig4 and theta index 0..3");
  demo->add_option("figure", o.figure, "fig1 | fig2 | fig3 | fig4")->required();
  demo->add_option("index", o.theta_index, "theta index: pi/12, 3pi/12, 7pi/12, 11pi/12")->required();
  demo->add_option("--grid", o.grid, "grid points for fig1/fig3")->check(CLI::PositiveNumber);
  demo->add_option("--out", o.out, "output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*scan) return cmd_scan(o);
    if (*roots) return cmd_roots(o);
    if (*eigvec) return cmd_eigvec(o);
    if (*evolve) return cmd_evolve(o);
    if (*demo) return cmd_demo(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
