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

#include "qmetro/states.h"

#include <cmath>
#include <string>
#include <utility>

#include "qmetro/errors.h"

namespace qmetro {
namespace {

constexpr int kMaxCutoff = 1 << 16;

// Amplitudes of the normalized PACS on 0..cutoff, computed in log domain.
std::vector<Complex> pacs_amplitudes(Complex alpha, int n, int cutoff) {
  std::vector<Complex> c(cutoff + 1, Complex(0.0));
  if (n > cutoff) return c;
  const double x = std::norm(alpha);
  if (x == 0.0) {
    c[n] = 1.0;
    return c;
  }
  const double log_abs_alpha = 0.5 * std::log(x);
  const double arg = std::arg(alpha);
  const double log_prefactor =
      -0.5 * x - 0.5 * (log_factorial(n) + std::log(laguerre(n, -x)));
  for (int k = 0; k + n <= cutoff; ++k) {
    const double log_mag = log_prefactor + k * log_abs_alpha +
                           0.5 * log_factorial(k + n) - log_factorial(k);
    c[k + n] = std::polar(std::exp(log_mag), k * arg);
  }
  return c;
}

double tail_of(const std::vector<Complex>& c) {
  double sum = 0.0;
  for (const auto& v : c) sum += std::norm(v);
  return 1.0 - sum;
}

SingleModeFock truncated_pacs(Complex alpha, int n, std::optional<int> cutoff) {
  if (n < 0) throw InvalidArgumentError("photon-addition order must be >= 0");
  if (!std::isfinite(std::norm(alpha)))
    throw InvalidArgumentError("coherent amplitude must be finite");
  if (cutoff) {
    if (*cutoff < 0) throw InvalidArgumentError("cutoff must be >= 0");
    auto c = pacs_amplitudes(alpha, n, *cutoff);
    const double tail = tail_of(c);
    if (tail > kTailTolerance) {
      throw TruncationError("cutoff " + std::to_string(*cutoff) +
                            " leaves tail mass " + std::to_string(tail) +
                            " above tolerance");
    }
    return SingleModeFock(std::move(c));
  }
  int k = default_cutoff(alpha, n);
  for (;;) {
    auto c = pacs_amplitudes(alpha, n, k);
    if (tail_of(c) <= kTailTolerance) return SingleModeFock(std::move(c));
    k += 4;
    if (k > kMaxCutoff)
      throw TruncationError("no cutoff below the hard limit reaches tolerance");
  }
}

}  // namespace

void StateParams::validate() const {
  if (n < 0) throw InvalidArgumentError("n must be >= 0");
  if (d < 1) throw InvalidArgumentError("d must be >= 1");
  if (l != 0 && l != 1) throw InvalidArgumentError("l must be 0 or 1");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw InvalidArgumentError("alpha must be finite");
}

SingleModeFock::SingleModeFock(std::vector<Complex> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty())
    throw InvalidArgumentError("a mode needs at least one Fock amplitude");
}

double SingleModeFock::norm_squared() const {
  double s = 0.0;
  for (const auto& c : coefficients_) s += std::norm(c);
  return s;
}

Complex SingleModeFock::inner(const SingleModeFock& other) const {
  const std::size_t k = std::min(coefficients_.size(), other.coefficients_.size());
  Complex s(0.0);
  for (std::size_t i = 0; i < k; ++i)
    s += std::conj(coefficients_[i]) * other.coefficients_[i];
  return s;
}

BranchProductState::BranchProductState(std::vector<Branch> branches)
    : branches_(std::move(branches)), mode_count_(0) {
  if (branches_.empty())
    throw InvalidArgumentError("a state needs at least one branch");
  mode_count_ = static_cast<int>(branches_.front().modes.size());
  if (mode_count_ == 0) throw InvalidArgumentError("branches need modes");
  for (const auto& b : branches_) {
    if (static_cast<int>(b.modes.size()) != mode_count_)
      throw InvalidArgumentError("all branches must have the same mode count");
  }
}

Complex BranchProductState::inner(const BranchProductState& other) const {
  if (other.mode_count_ != mode_count_)
    throw InvalidArgumentError("mode count mismatch");
  Complex total(0.0);
  for (const auto& bi : branches_) {
    for (const auto& bj : other.branches_) {
      Complex term = std::conj(bi.weight) * bj.weight;
      for (int m = 0; m < mode_count_; ++m) term *= bi.modes[m].inner(bj.modes[m]);
      total += term;
    }
  }
  return total;
}

double BranchProductState::norm_squared() const { return inner(*this).real(); }

int default_cutoff(Complex alpha, int n) {
  const double x = std::norm(alpha);
  return n + static_cast<int>(std::ceil(x + 10.0 * std::sqrt(x + 1.0)));
}

double pacs_tail_mass(Complex alpha, int n, int cutoff) {
  return tail_of(pacs_amplitudes(alpha, n, cutoff));
}

SingleModeFock coherent_fock(Complex alpha, std::optional<int> cutoff) {
  return truncated_pacs(alpha, 0, cutoff);
}

SingleModeFock pacs_fock(Complex alpha, int n, std::optional<int> cutoff) {
  return truncated_pacs(alpha, n, cutoff);
}

SingleModeFock number_state(int k, int cutoff) {
  if (k < 0 || k > cutoff)
    throw InvalidArgumentError("number state outside the truncated basis");
  std::vector<Complex> c(cutoff + 1, Complex(0.0));
  c[k] = 1.0;
  return SingleModeFock(std::move(c));
}

double pacs_overlap_opposite(Complex alpha, int n) {
  const double x = std::norm(alpha);
  return std::exp(-2.0 * x) * laguerre(n, x) / laguerre(n, -x);
}

double ghz_norm(Complex alpha, int n, int d, int l) {
  StateParams{alpha, n, d, l}.validate();
  const double x = std::norm(alpha);
  const double sign = l == 0 ? 1.0 : -1.0;
  const double cross = std::exp(-2.0 * (d + 1) * x) * laguerre(n, x) /
                       laguerre(n, -x);
  const double bracket = 2.0 + 2.0 * sign * cross;
  if (bracket <= kDegenerateTolerance) {
    throw DegenerateStateError(
        "GHZ normalization bracket vanishes (antisymmetric state of "
        "indistinguishable branches)");
  }
  return 1.0 / std::sqrt(bracket);
}

BranchProductState ghz_pacs_state(const StateParams& params,
                                  std::optional<int> cutoff) {
  params.validate();
  const double norm = ghz_norm(params.alpha, params.n, params.d, params.l);
  std::vector<Branch> branches;
  for (const double s : {1.0, -1.0}) {
    const Complex a = s * params.alpha;
    Branch b;
    b.weight = s > 0 ? Complex(norm) : Complex(norm * params.parity_sign());
    b.modes.reserve(params.d + 1);
    b.modes.push_back(pacs_fock(a, params.n, cutoff));
    const SingleModeFock coherent = coherent_fock(a, cutoff);
    for (int i = 0; i < params.d; ++i) b.modes.push_back(coherent);
    branches.push_back(std::move(b));
  }
  return BranchProductState(std::move(branches));
}

BranchProductState noon_state(int photons, int d, std::optional<int> cutoff) {
  if (d < 1) throw InvalidArgumentError("d must be >= 1");
  if (photons < 0) throw InvalidArgumentError("photon number must be >= 0");
  if (photons == 0)
    throw DegenerateStateError("NOON state with zero photons has identical branches");
  const int k = cutoff.value_or(photons);
  const SingleModeFock excited = number_state(photons, k);
  const SingleModeFock vacuum = number_state(0, k);
  const Complex w(1.0 / std::sqrt(d + 1.0));
  std::vector<Branch> branches;
  for (int b = 0; b <= d; ++b) {
    Branch br{w, {}};
    for (int m = 0; m <= d; ++m) br.modes.push_back(m == b ? excited : vacuum);
    branches.push_back(std::move(br));
  }
  return BranchProductState(std::move(branches));
}

BranchProductState ecs_state(Complex alpha, int d, std::optional<int> cutoff) {
  if (d < 1) throw InvalidArgumentError("d must be >= 1");
  const double x = std::norm(alpha);
  const double overlap = std::exp(-x);
  if (1.0 - overlap <= kDegenerateTolerance)
    throw DegenerateStateError("ECS branches are indistinguishable at alpha = 0");
  const SingleModeFock excited = coherent_fock(alpha, cutoff);
  const SingleModeFock vacuum = number_state(0, excited.cutoff());
  const Complex w(1.0 / std::sqrt((d + 1.0) * (1.0 + d * overlap)));
  std::vector<Branch> branches;
  for (int b = 0; b <= d; ++b) {
    Branch br{w, {}};
    for (int m = 0; m <= d; ++m) br.modes.push_back(m == b ? excited : vacuum);
    branches.push_back(std::move(br));
  }
  return BranchProductState(std::move(branches));
}

}  // namespace qmetro
