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

#include "qmetro/fisher_bounds.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmetro/errors.h"
#include "qmetro/special_poly.h"

namespace qmetro {
namespace {

// (n+k)! L_{n+k}(y) / (n! L_n(-x)) for x = |alpha|^2.
class ScaledMoments {
 public:
  ScaledMoments(double x, int n) : x_(x), n_(n), base_(laguerre(n, -x)) {}

  double term(int k, double y) const {
    return std::exp(log_factorial(n_ + k) - log_factorial(n_)) *
           laguerre(n_ + k, y) / base_;
  }
  // <a^dag a> structure: A1 - A0.
  double first(double y) const { return term(1, y) - term(0, y); }
  // <(a^dag a)^2> structure: A2 - 3 A1 + A0.
  double second(double y) const {
    return term(2, y) - 3.0 * term(1, y) + term(0, y);
  }
  // <(a^dag a)^4> structure: A4 - 10 A3 + 25 A2 - 15 A1 + A0.
  double fourth(double y) const {
    return term(4, y) - 10.0 * term(3, y) + 25.0 * term(2, y) -
           15.0 * term(1, y) + term(0, y);
  }
  // n! L_n(-x), the PACS normalization.
  double log_base() const { return log_factorial(n_) + std::log(base_); }
  double x() const { return x_; }

 private:
  double x_;
  int n_;
  double base_;
};

// direct(-x) + sign * e^{-rate x} * cross(+x), with the magnitude of the
// two parts for cancellation checks.
struct Combined {
  double value;
  double scale;
};

template <typename F>
Combined combine(const ScaledMoments& m, double sign, double rate, F f) {
  const double direct = f(-m.x());
  const double cross = sign * std::exp(-rate * m.x()) * f(m.x());
  return {direct + cross, std::abs(direct) + std::abs(cross)};
}

void check_nonzero(const Combined& c, const char* what) {
  if (!std::isfinite(c.value) || std::abs(c.value) <= 1e-13 * c.scale) {
    throw DivisionByZeroError(std::string(what) + " vanishes at this point");
  }
}

double parity(int l) { return l == 0 ? 1.0 : -1.0; }

void validate(Complex alpha, int n, int d, int l) {
  StateParams{alpha, n, d, l}.validate();
}

double rank_one_bound_prefactor(int d) {
  const double s = std::sqrt(static_cast<double>(d)) + 1.0;
  return d * s * s / 4.0;
}

}  // namespace

std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kIndependent: return "independent";
    case Protocol::kLinear: return "linear";
    case Protocol::kNonlinear: return "nonlinear";
    case Protocol::kHomodyne: return "homodyne";
    case Protocol::kOracleTraceInverse: return "oracle";
  }
  return "unknown";
}

FisherMatrix FisherMatrix::structured(int dim, double diagonal,
                                      double offdiagonal) {
  if (dim < 1) throw DimensionError("Fisher matrix dimension must be >= 1");
  FisherMatrix f;
  f.dim_ = dim;
  f.diagonal_ = diagonal;
  f.offdiagonal_ = dim == 1 ? 0.0 : offdiagonal;
  return f;
}

FisherMatrix FisherMatrix::dense(Eigen::MatrixXd matrix) {
  if (matrix.rows() < 1 || matrix.rows() != matrix.cols())
    throw DimensionError("Fisher matrix must be square and non-empty");
  FisherMatrix f;
  f.dim_ = static_cast<int>(matrix.rows());
  // Symmetrize away rounding noise.
  Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  f.diagonal_ = sym.diagonal().mean();
  f.offdiagonal_ = 0.0;
  f.dense_ = std::move(sym);
  return f;
}

double FisherMatrix::operator()(int p, int q) const {
  if (dense_) return (*dense_)(p, q);
  return p == q ? diagonal_ : offdiagonal_;
}

Eigen::MatrixXd FisherMatrix::to_dense() const {
  if (dense_) return *dense_;
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dim_, dim_, offdiagonal_);
  m.diagonal().setConstant(diagonal_);
  return m;
}

std::vector<double> FisherMatrix::eigenvalues() const {
  std::vector<double> ev;
  if (dense_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(*dense_,
                                                          Eigen::EigenvaluesOnly);
    const auto& v = solver.eigenvalues();
    ev.assign(v.data(), v.data() + v.size());
  } else {
    ev.assign(dim_ - 1, diagonal_ - offdiagonal_);
    ev.push_back(diagonal_ + (dim_ - 1) * offdiagonal_);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

double FisherMatrix::norm() const {
  double m = 0.0;
  for (double e : eigenvalues()) m = std::max(m, std::abs(e));
  return m;
}

bool FisherMatrix::is_psd(double rel_tol) const {
  const auto ev = eigenvalues();
  return ev.front() >= -rel_tol * norm();
}

double qfi_independent(Complex alpha, int n, int l) {
  validate(alpha, n, 1, l);
  // Three-mode probe: the reference PACS mode plus two coherent modes.
  const double c = ghz_norm(alpha, n, 2, l);
  const ScaledMoments m(std::norm(alpha), n);
  const double pre = 2.0 * c * c;
  const double sign = parity(l);
  const double h2 =
      pre * combine(m, sign, 6.0, [&](double y) { return m.second(y); }).value;
  const double h1 =
      pre * combine(m, sign, 6.0, [&](double y) { return m.first(y); }).value;
  return 4.0 * (h2 - h1 * h1);
}

BoundResult qcrb_independent(Complex alpha, int n, int l, int d) {
  validate(alpha, n, d, l);
  const double f = qfi_independent(alpha, n, l);
  if (!(f > 0.0)) throw DivisionByZeroError("independent QFI is not positive");
  return {Protocol::kIndependent, d / f, StateParams{alpha, n, d, l}};
}

BghTerms bgh(Complex alpha, int n, int d, int l) {
  validate(alpha, n, d, l);
  const double norm = ghz_norm(alpha, n, d, l);
  const ScaledMoments m(std::norm(alpha), n);
  const double rate = 2.0 * d;
  const double sign = parity(l);
  const double g_hat =
      combine(m, sign, rate, [&](double y) { return m.second(y); }).value;
  const double h_hat =
      combine(m, sign, rate, [&](double y) { return m.first(y); }).value;
  const double log_base = m.log_base();
  return {std::exp(std::log(2.0 * norm * norm) - log_base),
          std::exp(log_base) * g_hat, std::exp(log_base) * h_hat};
}

FisherMatrix qfim_linear_unchecked(Complex alpha, int n, int d, int l) {
  validate(alpha, n, d, l);
  const double norm = ghz_norm(alpha, n, d, l);
  const ScaledMoments m(std::norm(alpha), n);
  const double rate = 2.0 * d;
  const double sign = parity(l);
  // b*g and b*h without forming the factorial-sized g and h.
  const double bg = 2.0 * norm * norm *
      combine(m, sign, rate, [&](double y) { return m.second(y); }).value;
  const double bh = 2.0 * norm * norm *
      combine(m, sign, rate, [&](double y) { return m.first(y); }).value;
  return FisherMatrix::structured(d, 4.0 * (bg - bh * bh), -4.0 * bh * bh);
}

FisherMatrix qfim_linear(Complex alpha, int n, int d, int l) {
  FisherMatrix f = qfim_linear_unchecked(alpha, n, d, l);
  if (!f.is_psd()) {
    const double lo = f.eigenvalues().front();
    throw PsdViolationError(
        "linear QFIM is indefinite (min eigenvalue " + std::to_string(lo) + ")",
        lo);
  }
  return f;
}

BoundResult qcrb_linear(Complex alpha, int n, int d, int l) {
  validate(alpha, n, d, l);
  const ScaledMoments m(std::norm(alpha), n);
  const double rate = 2.0 * d;
  const double sign = parity(l);
  const Combined g =
      combine(m, sign, rate, [&](double y) { return m.second(y); });
  check_nonzero(g, "g(alpha, n, d)");
  const double h =
      combine(m, sign, rate, [&](double y) { return m.first(y); }).value;
  const double ratio = h / g.value;
  return {Protocol::kLinear, rank_one_bound_prefactor(d) * ratio * ratio,
          StateParams{alpha, n, d, l}};
}

BoundResult qcrb_trace_inverse(const FisherMatrix& f) {
  const double scale = f.norm();
  const auto ev = f.eigenvalues();
  double smallest = std::abs(ev.front());
  for (double e : ev) smallest = std::min(smallest, std::abs(e));
  if (!(scale > 0.0) || smallest <= kSingularTolerance * scale)
    throw SingularMatrixError("Fisher matrix is singular");
  double trace = 0.0;
  if (f.is_structured()) {
    const int d = f.dim();
    const double a = f.diagonal_value() - f.offdiagonal_value();
    const double top = f.diagonal_value() + (d - 1) * f.offdiagonal_value();
    trace = (d - 1) / (d > 1 ? a : 1.0) + 1.0 / top;
  } else {
    for (double e : ev) trace += 1.0 / e;
  }
  return {Protocol::kOracleTraceInverse, trace, std::nullopt};
}

double effective_qfi(const FisherMatrix& f) {
  if (f.dim() != 2)
    throw DimensionError("effective QFI is defined for two parameters only");
  const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
  const double tr = f(0, 0) + f(1, 1);
  if (tr == 0.0) throw DivisionByZeroError("Fisher matrix has zero trace");
  return det / tr;
}

RsTerms rs(Complex alpha, int n, int d, int l) {
  validate(alpha, n, d, l);
  ghz_norm(alpha, n, d, l);  // degenerate-state check
  const ScaledMoments m(std::norm(alpha), n);
  const double rate = 2.0 * d;
  const double sign = parity(l);
  const double r_hat =
      combine(m, sign, rate, [&](double y) { return m.fourth(y); }).value;
  const double s_hat =
      combine(m, sign, rate, [&](double y) { return m.second(y); }).value;
  const double base = std::exp(m.log_base());
  return {base * r_hat, base * s_hat};
}

BoundResult qcrb_nonlinear(Complex alpha, int n, int d, int l) {
  validate(alpha, n, d, l);
  ghz_norm(alpha, n, d, l);
  const ScaledMoments m(std::norm(alpha), n);
  const double rate = 2.0 * d;
  const double sign = parity(l);
  const Combined r =
      combine(m, sign, rate, [&](double y) { return m.fourth(y); });
  check_nonzero(r, "r(alpha, n, d)");
  const double s =
      combine(m, sign, rate, [&](double y) { return m.second(y); }).value;
  const double ratio = s / r.value;
  return {Protocol::kNonlinear, rank_one_bound_prefactor(d) * ratio * ratio,
          StateParams{alpha, n, d, l}};
}

double mean_photon_pacs(Complex alpha, int n) {
  if (n < 0) throw InvalidArgumentError("n must be >= 0");
  const double x = std::norm(alpha);
  return (n + 1.0) * laguerre(n + 1, -x) / laguerre(n, -x) - 1.0;
}

double heisenberg_limit(double mean_photons) {
  if (!(mean_photons > 0.0) || !std::isfinite(mean_photons))
    throw InvalidArgumentError("mean photon number must be positive");
  return 1.0 / mean_photons;
}

double standard_quantum_limit(double mean_photons) {
  if (!(mean_photons > 0.0) || !std::isfinite(mean_photons))
    throw InvalidArgumentError("mean photon number must be positive");
  return 1.0 / std::sqrt(mean_photons);
}

}  // namespace qmetro
