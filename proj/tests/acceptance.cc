// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one [PASS]/[FAIL] line per criterion, with indented
// detail lines for each individual check.
//
//   acceptance                  all criteria
//   acceptance --criterion 3    a single criterion

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "oracles.h"
#include "qmetro/errors.h"
#include "qmetro/fisher_bounds.h"
#include "qmetro/fock_oracle.h"
#include "qmetro/homodyne.h"
#include "qmetro/special_poly.h"
#include "qmetro/states.h"
#include "qmetro/sweep.h"

namespace {

using namespace qmetro;

class Report {
 public:
  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("    %s %s\n", ok ? "ok  " : "FAIL", buf);
    ok_ = ok_ && ok;
  }
  // |value/expected - 1| <= tol
  void relative(const char* what, double value, double expected, double tol) {
    const double dev = std::abs(value / expected - 1.0);
    check(dev <= tol, "%s = %.6g, expected %.6g +/- %.1f%% (deviation %.2f%%)", what,
          value, expected, 100.0 * tol, 100.0 * dev);
  }
  void absolute(const char* what, double value, double expected, double tol) {
    check(std::abs(value - expected) <= tol, "%s = %.6g, expected %.6g +/- %.3g", what,
          value, expected, tol);
  }
  void at_most(const char* what, double value, double bound) {
    check(value <= bound, "%s = %.3g (bound %.1g)", what, value, bound);
  }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

Complex amp(double x) { return Complex(std::sqrt(x), 0.0); }

std::vector<double> monotonic_grid() {
  std::vector<double> xs;
  for (int i = 0; i <= 38; ++i) xs.push_back(0.5 + 0.25 * i);
  return xs;
}

void section4_anchors(Report& r) {
  const double nbar = mean_photon_pacs(amp(4.0), 4);
  r.absolute("mean_photon_pacs(|a|^2=4, n=4)", nbar, 10.38, 0.02);
  r.absolute("heisenberg_limit", heisenberg_limit(nbar), 0.096, 0.007);
  r.absolute("standard_quantum_limit", standard_quantum_limit(nbar), 0.310, 0.005);
  r.relative("sqrt(qcrb_independent(|a|^2=4, n=4, l=0, d=1))",
             std::sqrt(qcrb_independent(amp(4.0), 4, 0, 1).value), 0.22, 0.10);
}

void figure1_anchors(Report& r) {
  r.relative("qcrb_independent(|a|^2=4, n=10, d=12)",
             qcrb_independent(amp(4.0), 10, 0, 12).value, 0.53, 0.10);
  r.relative("qcrb_independent(|a|^2=4, n=0, d=12)",
             qcrb_independent(amp(4.0), 0, 0, 12).value, 0.75, 0.10);
}

void figure2_anchors(Report& r) {
  const int ns[] = {0, 1, 7, 10};
  const double expected[] = {0.36, 0.22, 0.049, 0.032};
  for (int i = 0; i < 4; ++i) {
    char what[96];
    std::snprintf(what, sizeof what, "qcrb_linear(|a|^2=5, d=5, n=%d)", ns[i]);
    r.relative(what, qcrb_linear(amp(5.0), ns[i], 5, 0).value, expected[i], 0.10);
  }
  r.relative("qcrb_linear(|a|^2=4, n=7, d=10)", qcrb_linear(amp(4.0), 7, 10, 0).value,
             0.19, 0.10);
  r.relative("qcrb_linear(|a|^2=4, n=7, d=5)", qcrb_linear(amp(4.0), 7, 5, 0).value,
             0.05, 0.15);
  r.relative("qcrb_linear(|a|^2=1, d=5, n=7, l=0)", qcrb_linear(amp(1.0), 7, 5, 0).value,
             0.125674, 0.005);
  r.relative("qcrb_linear(|a|^2=1, d=5, n=7, l=1)", qcrb_linear(amp(1.0), 7, 5, 1).value,
             0.125677, 0.005);
}

void figure3_anchors(Report& r) {
  const double nl = qcrb_nonlinear(amp(1.0), 7, 5, 0).value;
  r.relative("qcrb_nonlinear(|a|^2=1, d=5, n=7)", nl, 0.0011, 0.15);
  r.relative("linear/nonlinear ratio", qcrb_linear(amp(1.0), 7, 5, 0).value / nl, 109.0,
             0.20);
}

void oracle_equivalence(Report& r) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (double x : {0.5, 1.0, 4.0})
    for (int n : {0, 1, 4})
      for (int l : {0, 1}) {
        const ModeObservable g[] = {number_operator(0)};
        const double oracle = qfim_numeric(ghz_pacs_state({amp(x), n, 2, l}), g)(0, 0);
        const double closed = qfi_independent(amp(x), n, l);
        worst = std::max(worst, std::abs(closed / oracle - 1.0));
        ++points;
      }
  r.check(points == 18, "grid size %d", points);
  r.at_most("max relative deviation qfi_independent vs oracle", worst, 1e-8);

  double dense_worst = 0.0;
  for (int cutoff : {8, 10, 12})
    for (double x : {0.02, 0.05})
      for (int n : {0, 1})
        for (int l : {0, 1}) {
          const auto s = ghz_pacs_state({amp(x), n, 1, l}, cutoff);
          std::vector<double> id(cutoff + 1, 1.0), num(cutoff + 1), sq(cutoff + 1);
          for (int k = 0; k <= cutoff; ++k) {
            num[k] = k;
            sq[k] = double(k) * k;
          }
          const std::vector<ModeObservable> obs[] = {
              {}, {number_operator(0)}, {number_operator(0), number_operator(1)},
              {number_squared(1)}, {number_squared(0), number_operator(1)}};
          const std::vector<double>* spectra[][2] = {
              {&id, &id}, {&num, &id}, {&num, &num}, {&id, &sq}, {&sq, &num}};
          for (int i = 0; i < 5; ++i) {
            const Complex a = branch_expectation(s, obs[i]);
            const Complex b =
                oracle::dense_two_mode_expectation(s, *spectra[i][0], *spectra[i][1]);
            dense_worst = std::max(dense_worst, std::abs(a - b));
          }
        }
  r.at_most("max |branch factorization - dense tensor| (d=1, cutoff<=12)", dense_worst,
            1e-12);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.check(secs < 60.0, "runtime %.2f s (limit 60 s)", secs);
}

void property_suites(Report& r) {
  double lag = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (double x : {-8.0, -4.0, -1.0, -0.25, 0.0, 0.5, 1.0, 3.0, 7.5}) {
      const long double series = oracle::laguerre_series(n, x);
      lag = std::max(lag, double(std::abs(laguerre(n, x) - series) /
                                 std::max(1.0L, std::abs(series))));
    }
  r.at_most("Laguerre recurrence vs series (n<=20)", lag, 1e-10);

  double tail = 0.0, drift = 0.0;
  for (double x : {0.0, 0.5, 4.0, 10.0, 25.0})
    for (int n : {0, 1, 4, 10}) {
      const SingleModeFock v = pacs_fock(amp(x), n);
      tail = std::max(tail, 1.0 - v.norm_squared());
      const SingleModeFock w = pacs_fock(amp(x), n, 2 * v.cutoff());
      drift = std::max(drift, std::abs(w.norm_squared() - v.norm_squared()));
    }
  r.at_most("PACS tail mass at default cutoff", tail, kTailTolerance);
  r.at_most("PACS norm change under cutoff doubling", drift, kTailTolerance);

  double sym = 0.0, eig = 0.0;
  for (double x : {1.0, 4.0})
    for (int n : {0, 4})
      for (int d : {2, 5}) {
        const FisherMatrix f = qfim_linear_unchecked(amp(x), n, d, 0);
        const Eigen::MatrixXd m = f.to_dense();
        sym = std::max(sym, (m - m.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
        const auto ev = f.eigenvalues();
        for (int i = 0; i < d; ++i)
          eig = std::max(eig, std::abs(ev[i] - solver.eigenvalues()(i)) / f.norm());
      }
  r.at_most("QFIM asymmetry", sym, 1e-10);
  r.at_most("structured vs dense eigenvalues (relative to norm)", eig, 1e-10);

  int non_monotone = 0, nl_ge_lin = 0, lin_ge_ind = 0, total = 0;
  for (int n : {0, 1, 4, 7, 10})
    for (int d : {2, 5, 10})
      for (int l : {0, 1}) {
        double pi = INFINITY, pl = INFINITY, pn = INFINITY;
        for (double x : monotonic_grid()) {
          const double ind = qcrb_independent(amp(x), n, l, d).value;
          const double lin = qcrb_linear(amp(x), n, d, l).value;
          const double nl = qcrb_nonlinear(amp(x), n, d, l).value;
          non_monotone += !(ind < pi) + !(lin < pl) + !(nl < pn);
          nl_ge_lin += !(nl < lin);
          lin_ge_ind += !(lin < ind);
          ++total;
          pi = ind;
          pl = lin;
          pn = nl;
        }
      }
  r.check(non_monotone == 0, "monotone decrease in |a|^2: %d violations over %d points",
          non_monotone, 3 * total);
  r.check(nl_ge_lin == 0, "nonlinear < linear: %d violations over %d points", nl_ge_lin,
          total);
  r.check(lin_ge_ind == 0, "linear < independent: %d violations over %d points",
          lin_ge_ind, total);

  double compat = 0.0;
  for (double x : {0.5, 1.0, 4.0})
    for (int n : {0, 1, 4})
      for (int d : {1, 2, 5})
        for (int l : {0, 1}) {
          const auto s = ghz_pacs_state({amp(x), n, d, l});
          compat = std::max(compat, compatibility_check(s, number_generators(0, d + 1)));
          compat =
              std::max(compat, compatibility_check(s, number_generators(0, d + 1, true)));
        }
  const auto stress = ghz_pacs_state({Complex(1.0, 0.5), 1, 2, 1});
  compat = std::max(compat, compatibility_check(stress, number_generators(0, 3)));
  r.at_most("compatibility_check", compat, 1e-10);
}

void homodyne_suite(Report& r) {
  double fock = 0.0;
  for (double a : {0.5, 1.0, 2.0})
    for (int n : {0, 1, 3}) {
      const SingleModeFock mode = pacs_fock(a, n, 80);
      for (double p = -6.0; p <= 6.0; p += 0.125)
        fock = std::max(fock, std::abs(quad_pacs(p, a, n) -
                                       oracle::fock_series_amplitude(p, mode)));
    }
  r.at_most("quadrature amplitude vs Fock series", fock, 1e-9);

  double norm_dev = 0.0, refine_dev = 0.0, mean0 = 0.0;
  for (double x : {0.25, 1.0, 4.0})
    for (int n : {0, 1, 3})
      for (int d : {1, 2})
        for (int l : {0, 1}) {
          const StateParams s{amp(x), n, d, l};
          const QuadratureGrid g = default_mode_grid(s);
          const auto state = ghz_quadrature_state(s);
          const PtotMoments a = joint_moments(state, g);
          const PtotMoments b = joint_moments(state, g.refined());
          norm_dev = std::max(norm_dev, std::abs(a.norm - 1.0));
          refine_dev = std::max({refine_dev, std::abs(a.norm - b.norm),
                                 std::abs(a.second - b.second) / std::abs(b.second)});
          const QuadratureGrid sg = default_slice_grid(s);
          const MarginalParams mp{s, 0.1};
          const double c = slice_integral(mp, sg);
          const double f = slice_integral(mp, sg.refined());
          refine_dev = std::max(refine_dev, std::abs(c - f) / std::abs(f));
          if (l == 0)
            mean0 = std::max(mean0, std::abs(signal_mean({s, 0.0}, sg)));
        }
  r.at_most("oracle joint normalization at phi=0, |norm-1|", norm_dev, 1e-8);
  r.at_most("signal_mean(phi=0, l=0)", mean0, 1e-8);
  r.at_most("grid-doubling change (relative)", refine_dev, 1e-8);

  r.relative("small-|a| ratio V(0.01)/V(0.02)",
             variance_small_alpha({0.01, 1, 2, 0}) / variance_small_alpha({0.02, 1, 2, 0}),
             16.0, 0.01);
  r.relative("large-|a| ratio V(4)/V(8) at n=2",
             variance_large_alpha({4.0, 2, 2, 0}) / variance_large_alpha({8.0, 2, 2, 0}),
             256.0, 0.01);

  int violations = 0, cases = 0;
  for (ReferenceState st : {ReferenceState::kNoon, ReferenceState::kEcs})
    for (int d : {2, 5})
      for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const ReferenceBounds b = reference_bounds(st, x, d);
        violations += !(b.linear < b.independent) +
                      !(b.nonlinear < b.independent_nonlinear);
        cases += 2;
      }
  r.check(violations == 0,
          "NOON/ECS simultaneous beats independent (d in {2,5}): %d violations over %d",
          violations, cases);
}

void determinism(Report& r) {
  const std::string a = format_csv(run_preset("fig2a", 1));
  const std::string b = format_csv(run_preset("fig2a", 0));
  r.check(a == b, "preset fig2a byte-identical across runs (%zu bytes)", a.size());
}

struct Criterion {
  const char* title;
  std::function<void(Report&)> run;
};

const Criterion kCriteria[] = {
    {"section 4 anchor set", section4_anchors},
    {"independent-estimation figure anchors", figure1_anchors},
    {"linear-protocol figure anchors", figure2_anchors},
    {"nonlinear-protocol figure anchor", figure3_anchors},
    {"oracle equivalence suite", oracle_equivalence},
    {"property suites", property_suites},
    {"homodyne suite and reference constructions", homodyne_suite},
    {"preset determinism", determinism},
};

bool run(int index) {
  const Criterion& c = kCriteria[index - 1];
  Report r;
  try {
    c.run(r);
  } catch (const std::exception& e) {
    r.check(false, "unexpected error: %s", e.what());
  }
  std::printf("[%s] criterion %d: %s\n", r.ok() ? "PASS" : "FAIL", index, c.title);
  std::fflush(stdout);
  return r.ok();
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int kCount = sizeof kCriteria / sizeof kCriteria[0];
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (int i = 1; i <= kCount; ++i) selected.push_back(i);
  bool ok = true;
  for (int c : selected) {
    if (c < 1 || c > kCount) {
      std::fprintf(stderr, "no criterion %d\n", c);
      return 2;
    }
    ok = run(c) && ok;
  }
  return ok ? 0 : 1;
}
