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

#ifndef QMETRO_STATES_H_
#define QMETRO_STATES_H_

#include <optional>
#include <vector>

#include "qmetro/special_poly.h"

namespace qmetro {

/// Probability mass a truncated single-mode state may leave above its cutoff.
inline constexpr double kTailTolerance = 1e-12;

/// Normalization brackets at or below this value are treated as a vanishing
/// state.
inline constexpr double kDegenerateTolerance = 1e-12;

/// (alpha, n, d, l): coherent amplitude, photon-addition order on the
/// reference mode, number of phase-carrying modes and GHZ parity.
struct StateParams {
  Complex alpha{0.0, 0.0};
  int n = 0;
  int d = 1;
  int l = 0;

  double alpha_sq() const { return std::norm(alpha); }
  /// Parity sign cos(l*pi) = (-1)^l.
  double parity_sign() const { return l == 0 ? 1.0 : -1.0; }
  /// Throws InvalidArgumentError when an invariant does not hold.
  void validate() const;
};

/// Fock-basis amplitudes c_0..c_K of one optical mode.
class SingleModeFock {
 public:
  explicit SingleModeFock(std::vector<Complex> coefficients);

  const std::vector<Complex>& coefficients() const { return coefficients_; }
  int cutoff() const { return static_cast<int>(coefficients_.size()) - 1; }
  Complex operator[](int k) const { return coefficients_[k]; }

  double norm_squared() const;
  /// <this|other>; modes with different cutoffs are zero-padded.
  Complex inner(const SingleModeFock& other) const;

 private:
  std::vector<Complex> coefficients_;
};

/// One term of a superposition of mode-factorized product states.
struct Branch {
  Complex weight;
  std::vector<SingleModeFock> modes;
};

/// sum_b weight_b * (x)_m |psi_{b,m}>. Every branch has the same number of
/// modes. Expectations of mode-diagonal operators factorize over modes, so
/// storage stays linear in the mode count.
class BranchProductState {
 public:
  explicit BranchProductState(std::vector<Branch> branches);

  const std::vector<Branch>& branches() const { return branches_; }
  int mode_count() const { return mode_count_; }

  /// <this|other> including all cross-branch terms.
  Complex inner(const BranchProductState& other) const;
  double norm_squared() const;

 private:
  std::vector<Branch> branches_;
  int mode_count_;
};

/// n + ceil(|alpha|^2 + 10 sqrt(|alpha|^2 + 1)).
int default_cutoff(Complex alpha, int n);

/// Exact tail mass 1 - sum_{k<=K} |c_k|^2 of the PACS |alpha, n> at cutoff K.
double pacs_tail_mass(Complex alpha, int n, int cutoff);

/// Coherent state |alpha> truncated at `cutoff` photons. Without an explicit
/// cutoff the default is used and extended until the tail mass is below
/// kTailTolerance; an explicit cutoff that leaves too much mass throws
/// TruncationError.
SingleModeFock coherent_fock(Complex alpha, std::optional<int> cutoff = {});

/// Photon-added coherent state (a^dag)^n |alpha>, normalized by
/// n! L_n(-|alpha|^2). Amplitudes below |n> are zero.
SingleModeFock pacs_fock(Complex alpha, int n, std::optional<int> cutoff = {});

/// Number state |k> in a basis of size cutoff + 1.
SingleModeFock number_state(int k, int cutoff);

/// <-alpha, n | alpha, n> = exp(-2|alpha|^2) L_n(|alpha|^2) / L_n(-|alpha|^2).
double pacs_overlap_opposite(Complex alpha, int n);

/// N_l(alpha, n, d) of the (d+1)-mode GHZ-type PACS. Throws
/// DegenerateStateError when the normalization bracket vanishes.
double ghz_norm(Complex alpha, int n, int d, int l);

/// N_l [ |alpha,n>_0 (x)_i |alpha>_i + e^{i l pi} |-alpha,n>_0 (x)_i |-alpha>_i ].
BranchProductState ghz_pacs_state(const StateParams& params,
                                  std::optional<int> cutoff = {});

/// Generalized NOON state over d+1 modes: uniform superposition of |N> in
/// mode k with vacuum elsewhere.
BranchProductState noon_state(int photons, int d,
                              std::optional<int> cutoff = {});

/// Generalized entangled coherent state over d+1 modes: |alpha> in mode k
/// with vacuum elsewhere, normalized including the e^{-|alpha|^2} overlaps.
BranchProductState ecs_state(Complex alpha, int d,
                             std::optional<int> cutoff = {});

}  // namespace qmetro

#endif  // QMETRO_STATES_H_
