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

#include "qmetro/fock_oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmetro/errors.h"

namespace qmetro {
namespace {

// <u| f(n^) |v> for a diagonal f.
Complex diagonal_element(const SingleModeFock& u, const SingleModeFock& v,
                         const std::vector<double>& spectrum) {
  const int k = std::min(u.cutoff(), v.cutoff());
  Complex s(0.0);
  for (int i = 0; i <= k; ++i) s += std::conj(u[i]) * v[i] * spectrum[i];
  return s;
}

}  // namespace

ModeObservable number_operator(int mode) {
  return {mode, [](int k) { return static_cast<double>(k); }};
}

ModeObservable number_squared(int mode) {
  return {mode, [](int k) { return static_cast<double>(k) * k; }};
}

std::vector<ModeObservable> number_generators(int first, int count,
                                              bool squared) {
  std::vector<ModeObservable> g;
  g.reserve(count);
  for (int i = 0; i < count; ++i)
    g.push_back(squared ? number_squared(first + i) : number_operator(first + i));
  return g;
}

Complex branch_expectation(const BranchProductState& state,
                           std::span<const ModeObservable> observables) {
  const int modes = state.mode_count();
  int max_cutoff = 0;
  for (const auto& b : state.branches())
    for (const auto& m : b.modes) max_cutoff = std::max(max_cutoff, m.cutoff());

  // Combined diagonal spectrum per mode; empty means identity.
  std::vector<std::vector<double>> spectra(modes);
  for (const auto& obs : observables) {
    if (obs.mode_index < 0 || obs.mode_index >= modes) {
      throw InvalidArgumentError("observable mode index " +
                                 std::to_string(obs.mode_index) +
                                 " out of range");
    }
    auto& s = spectra[obs.mode_index];
    if (s.empty()) s.assign(max_cutoff + 1, 1.0);
    for (int k = 0; k <= max_cutoff; ++k) s[k] *= obs.spectrum(k);
  }

  Complex total(0.0);
  for (const auto& bi : state.branches()) {
    for (const auto& bj : state.branches()) {
      Complex term = std::conj(bi.weight) * bj.weight;
      for (int m = 0; m < modes && term != Complex(0.0); ++m) {
        term *= spectra[m].empty()
                    ? bi.modes[m].inner(bj.modes[m])
                    : diagonal_element(bi.modes[m], bj.modes[m], spectra[m]);
      }
      total += term;
    }
  }
  return total;
}

FisherMatrix qfim_numeric(const BranchProductState& state,
                          std::span<const ModeObservable> generators) {
  const int d = static_cast<int>(generators.size());
  if (d < 1) throw DimensionError("at least one generator is required");
  const double norm = branch_expectation(state, {}).real();
  std::vector<double> first(d);
  for (int p = 0; p < d; ++p)
    first[p] = branch_expectation(state, generators.subspan(p, 1)).real() / norm;
  Eigen::MatrixXd f(d, d);
  for (int p = 0; p < d; ++p) {
    for (int q = p; q < d; ++q) {
      const ModeObservable pair[] = {generators[p], generators[q]};
      const double second = branch_expectation(state, pair).real() / norm;
      f(p, q) = f(q, p) = 4.0 * (second - first[p] * first[q]);
    }
  }
  return FisherMatrix::dense(std::move(f));
}

double compatibility_check(const BranchProductState& state,
                           std::span<const ModeObservable> generators) {
  const int d = static_cast<int>(generators.size());
  double worst = 0.0;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const ModeObservable pair[] = {generators[p], generators[q]};
      worst = std::max(worst, std::abs(branch_expectation(state, pair).imag()));
    }
  }
  return worst;
}

double total_photon_number(const BranchProductState& state) {
  const double norm = branch_expectation(state, {}).real();
  double total = 0.0;
  for (int m = 0; m < state.mode_count(); ++m) {
    const ModeObservable n[] = {number_operator(m)};
    total += branch_expectation(state, n).real();
  }
  return total / norm;
}

std::string_view reference_name(ReferenceState s) {
  return s == ReferenceState::kNoon ? "noon" : "ecs";
}

namespace {

double trace_inverse(const BranchProductState& state, int d, bool squared) {
  return qcrb_trace_inverse(qfim_numeric(state, number_generators(1, d, squared)))
      .value;
}

double ecs_amplitude_for(double mean_photon) {
  const auto photons = [](double a) {
    return total_photon_number(ecs_state(a, 1));
  };
  double lo = 0.0, hi = std::sqrt(mean_photon) + 2.0;
  while (photons(hi) < mean_photon) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid > 0.0 && photons(mid) < mean_photon ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ReferenceBounds reference_bounds(ReferenceState s, double alpha_sq, int d) {
  if (d < 1) throw InvalidArgumentError("d must be >= 1");
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
    throw InvalidArgumentError("alpha_sq must be finite and >= 0");
  ReferenceBounds r{};
  if (s == ReferenceState::kNoon) {
    const int per_parameter = std::max(1, static_cast<int>(std::lround(alpha_sq)));
    const BranchProductState sim = noon_state(d * per_parameter, d);
    const BranchProductState probe = noon_state(per_parameter, 1);
    r.photons = d * per_parameter;
    r.mean_photon = total_photon_number(sim);
    r.linear = trace_inverse(sim, d, false);
    r.nonlinear = trace_inverse(sim, d, true);
    r.independent = d * trace_inverse(probe, 1, false);
    r.independent_nonlinear = d * trace_inverse(probe, 1, true);
    return r;
  }
  const BranchProductState sim = ecs_state(std::sqrt(alpha_sq), d);
  r.photons = 0;
  r.mean_photon = total_photon_number(sim);
  r.linear = trace_inverse(sim, d, false);
  r.nonlinear = trace_inverse(sim, d, true);
  const BranchProductState probe =
      ecs_state(ecs_amplitude_for(r.mean_photon / d), 1);
  r.independent = d * trace_inverse(probe, 1, false);
  r.independent_nonlinear = d * trace_inverse(probe, 1, true);
  return r;
}

}  // namespace qmetro
