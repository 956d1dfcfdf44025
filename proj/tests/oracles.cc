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

#include "oracles.h"

#include <cmath>
#include <numbers>

namespace qmetro::oracle {

long double laguerre_series(int n, long double x) {
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) {
    long double term = 1.0L;
    // n! / ((k!)^2 (n-k)!) = C(n,k) / k!
    for (int i = 1; i <= k; ++i) term *= static_cast<long double>(n - k + i) / i / i;
    term *= std::pow(x, static_cast<long double>(k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

std::complex<double> fock_wavefunction(double p, int k) {
  // psi_0 = pi^{-1/4} e^{-p^2/2}; psi_{j} = sqrt(2/j) p psi_{j-1}
  //                                        - sqrt((j-1)/j) psi_{j-2}.
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * p * p);
  for (int j = 1; j <= k; ++j) {
    const double next = std::sqrt(2.0 / j) * p * cur - std::sqrt((j - 1.0) / j) * prev;
    prev = cur;
    cur = next;
  }
  static const std::complex<double> minus_i(0.0, -1.0);
  return std::pow(minus_i, k) * cur;
}

std::complex<double> fock_series_amplitude(double p, const SingleModeFock& mode) {
  std::complex<double> s(0.0);
  for (int k = 0; k <= mode.cutoff(); ++k) s += mode[k] * fock_wavefunction(p, k);
  return s;
}

std::complex<double> dense_two_mode_expectation(
    const BranchProductState& state, const std::vector<double>& spectrum0,
    const std::vector<double>& spectrum1) {
  int k0 = 0, k1 = 0;
  for (const auto& b : state.branches()) {
    k0 = std::max(k0, b.modes.at(0).cutoff());
    k1 = std::max(k1, b.modes.at(1).cutoff());
  }
  const int dim1 = k1 + 1;
  std::vector<std::complex<double>> psi((k0 + 1) * dim1, 0.0);
  for (const auto& b : state.branches()) {
    for (int i = 0; i <= b.modes[0].cutoff(); ++i)
      for (int j = 0; j <= b.modes[1].cutoff(); ++j)
        psi[i * dim1 + j] += b.weight * b.modes[0][i] * b.modes[1][j];
  }
  std::complex<double> s(0.0);
  for (int i = 0; i <= k0; ++i)
    for (int j = 0; j <= k1; ++j) {
      const auto v = psi[i * dim1 + j];
      s += std::conj(v) * v * spectrum0.at(i) * spectrum1.at(j);
    }
  return s;
}

namespace {

std::complex<double> p_element(const SingleModeFock& u, const SingleModeFock& v) {
  // <u| i (a^dag - a) / sqrt2 |v>
  const int k = std::min(u.cutoff(), v.cutoff());
  std::complex<double> s(0.0);
  for (int j = 0; j < k; ++j) {
    const double r = std::sqrt(j + 1.0);
    s += std::conj(u[j + 1]) * r * v[j] - std::conj(u[j]) * r * v[j + 1];
  }
  return std::complex<double>(0.0, 1.0) * s / std::numbers::sqrt2;
}

std::complex<double> p2_element(const SingleModeFock& u, const SingleModeFock& v) {
  // p^2 = -(a^dag - a)^2 / 2 = (a a^dag + a^dag a - a^2 - a^dag^2) / 2
  const int k = std::min(u.cutoff(), v.cutoff());
  std::complex<double> s(0.0);
  for (int j = 0; j <= k; ++j) {
    s += std::conj(u[j]) * v[j] * (2.0 * j + 1.0);
    if (j + 2 <= k) {
      const double r = std::sqrt((j + 1.0) * (j + 2.0));
      s -= std::conj(u[j + 2]) * v[j] * r;
      s -= std::conj(u[j]) * v[j + 2] * r;
    }
  }
  return 0.5 * s;
}

}  // namespace

FockPtot fock_ptot_moments(const BranchProductState& state) {
  const int modes = state.mode_count();
  std::complex<double> norm(0.0), first(0.0), second(0.0);
  for (const auto& bi : state.branches()) {
    for (const auto& bj : state.branches()) {
      const auto w = std::conj(bi.weight) * bj.weight;
      std::vector<std::complex<double>> o(modes), p(modes), q(modes);
      for (int m = 0; m < modes; ++m) {
        o[m] = bi.modes[m].inner(bj.modes[m]);
        p[m] = p_element(bi.modes[m], bj.modes[m]);
        q[m] = p2_element(bi.modes[m], bj.modes[m]);
      }
      // Brute force over which modes carry p or p^2.
      std::complex<double> overlap(1.0), lin(0.0), quad(0.0);
      for (int m = 0; m < modes; ++m) overlap *= o[m];
      for (int a = 0; a < modes; ++a) {
        for (int b = 0; b < modes; ++b) {
          std::complex<double> t(1.0);
          for (int m = 0; m < modes; ++m) {
            if (a == b && m == a) t *= q[m];
            else if (m == a || m == b) t *= p[m];
            else t *= o[m];
          }
          quad += t;
        }
        std::complex<double> t(1.0);
        for (int m = 0; m < modes; ++m) t *= (m == a) ? p[m] : o[m];
        lin += t;
      }
      norm += w * overlap;
      first += w * lin;
      second += w * quad;
    }
  }
  return {norm.real(), first.real() / norm.real(), second.real() / norm.real()};
}

BranchProductState rotated_ghz_fock(const StateParams& params, double phi,
                                    int cutoff) {
  const double norm = ghz_norm(params.alpha, params.n, params.d, params.l);
  const auto rot = std::polar(1.0, phi);
  std::vector<Branch> branches;
  for (const double s : {1.0, -1.0}) {
    Branch b;
    b.weight = norm * (s > 0 ? 1.0 : params.parity_sign()) *
               std::polar(1.0, params.n * phi);
    b.modes.push_back(pacs_fock(s * params.alpha * rot, params.n, cutoff));
    for (int i = 0; i < params.d; ++i)
      b.modes.push_back(coherent_fock(s * params.alpha, cutoff));
    branches.push_back(std::move(b));
  }
  return BranchProductState(std::move(branches));
}

}  // namespace qmetro::oracle
