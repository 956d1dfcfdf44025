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

#ifndef QMETRO_FISHER_BOUNDS_H_
#define QMETRO_FISHER_BOUNDS_H_

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qmetro/states.h"

namespace qmetro {

/// Relative tolerance for the PSD check: eigenvalues may dip to -tol*||F||.
inline constexpr double kPsdTolerance = 1e-10;
/// Smallest |eigenvalue| relative to ||F|| accepted as invertible.
inline constexpr double kSingularTolerance = 1e-12;

enum class Protocol {
  kIndependent,
  kLinear,
  kNonlinear,
  kHomodyne,
  kOracleTraceInverse,
};

std::string_view protocol_name(Protocol p);

/// Real symmetric d x d quantum Fisher information matrix: either the
/// two-value form (one diagonal value, one off-diagonal value) produced by
/// the closed forms, or a dense matrix from the Fock oracle.
class FisherMatrix {
 public:
  static FisherMatrix structured(int dim, double diagonal, double offdiagonal);
  static FisherMatrix dense(Eigen::MatrixXd matrix);

  int dim() const { return dim_; }
  bool is_structured() const { return !dense_.has_value(); }
  double diagonal_value() const { return diagonal_; }
  double offdiagonal_value() const { return offdiagonal_; }

  double operator()(int p, int q) const;
  Eigen::MatrixXd to_dense() const;

  /// Ascending eigenvalues. Structured matrices use the closed-form
  /// spectrum {diag - off (d-1 times), diag + (d-1) off}.
  std::vector<double> eigenvalues() const;
  /// Spectral norm max |eigenvalue|.
  double norm() const;
  bool is_psd(double rel_tol = kPsdTolerance) const;

 private:
  FisherMatrix() = default;

  int dim_ = 0;
  double diagonal_ = 0.0;
  double offdiagonal_ = 0.0;
  std::optional<Eigen::MatrixXd> dense_;
};

/// Total-variance bound |delta phi|^2 together with what produced it.
struct BoundResult {
  Protocol protocol;
  double value;
  std::optional<StateParams> params;
};

// Independent estimation (three-mode state, generator a^dag a on the PACS
// mode).

/// Single-parameter QFI 4(<H^2> - <H>^2) from the closed-form moments.
double qfi_independent(Complex alpha, int n, int l);
/// d / F for d parameters each estimated with its own copy of the probe.
BoundResult qcrb_independent(Complex alpha, int n, int l, int d);

// Simultaneous estimation, linear generators H_p = a_p^dag a_p.

struct BghTerms {
  double b;
  double g;
  double h;
};
BghTerms bgh(Complex alpha, int n, int d, int l);

/// F_pq = 4 [delta_pq b g - b^2 h^2]. Throws PsdViolationError when the
/// matrix is indefinite beyond kPsdTolerance; qfim_linear_unchecked returns
/// it regardless so callers can report the condition.
FisherMatrix qfim_linear(Complex alpha, int n, int d, int l);
FisherMatrix qfim_linear_unchecked(Complex alpha, int n, int d, int l);

/// Closed-form linear bound d (sqrt(d) + 1)^2 h^2 / (4 g^2).
BoundResult qcrb_linear(Complex alpha, int n, int d, int l);

/// Tr(F^{-1}). Structured matrices use the rank-one update form
/// (d-1)/A + 1/(A + d B) with A = diagonal - offdiagonal, B = offdiagonal;
/// dense ones go through an eigen-decomposition. Throws SingularMatrixError.
BoundResult qcrb_trace_inverse(const FisherMatrix& f);

/// det(F) / Tr(F) for two-parameter problems.
double effective_qfi(const FisherMatrix& f);

// Simultaneous estimation, nonlinear generators H_p = (a_p^dag a_p)^2.

struct RsTerms {
  double r;
  double s;
};
RsTerms rs(Complex alpha, int n, int d, int l);
BoundResult qcrb_nonlinear(Complex alpha, int n, int d, int l);

// Reference limits.

/// Mean photon number of a single PACS mode:
/// (n+1) L_{n+1}(-|alpha|^2) / L_n(-|alpha|^2) - 1.
double mean_photon_pacs(Complex alpha, int n);
double heisenberg_limit(double mean_photons);
double standard_quantum_limit(double mean_photons);

}  // namespace qmetro

#endif  // QMETRO_FISHER_BOUNDS_H_
