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

// Test-only reference computations. Everything here is written against
// first principles (explicit series, dense tensors, Fock matrices) and must
// not route through the library code paths it is used to check.

#ifndef QMETRO_TESTS_ORACLES_H_
#define QMETRO_TESTS_ORACLES_H_

#include <complex>
#include <vector>

#include "qmetro/states.h"

namespace qmetro::oracle {

/// Explicit alternating sum sum_k (-1)^k n! x^k / ((k!)^2 (n-k)!).
long double laguerre_series(int n, long double x);

/// <p|k> = pi^{-1/4} (2^k k!)^{-1/2} (-i)^k H_k(p) e^{-p^2/2}, through the
/// normalized Hermite-function recurrence.
std::complex<double> fock_wavefunction(double p, int k);

/// sum_k c_k <p|k>.
std::complex<double> fock_series_amplitude(double p, const SingleModeFock& mode);

/// Literal two-mode tensor: builds the full (K0+1)(K1+1) amplitude vector of
/// a two-mode BranchProductState and evaluates
/// <psi| f0(n_0) f1(n_1) |psi> on it.
std::complex<double> dense_two_mode_expectation(
    const BranchProductState& state, const std::vector<double>& spectrum0,
    const std::vector<double>& spectrum1);

/// Moments of p_tot = sum_m p_m from Fock-basis matrix elements of
/// p = i (a^dag - a) / sqrt2. Returns {<psi|psi>, <p_tot>, <p_tot^2>}, the
/// last two normalized.
struct FockPtot {
  double norm;
  double mean;
  double second;
};
FockPtot fock_ptot_moments(const BranchProductState& state);

/// GHZ-type PACS state with the reference mode rotated by exp(i phi n),
/// built from Fock amplitudes.
BranchProductState rotated_ghz_fock(const StateParams& params, double phi,
                                    int cutoff);

}  // namespace qmetro::oracle

#endif  // QMETRO_TESTS_ORACLES_H_
