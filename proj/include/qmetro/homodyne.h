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

#ifndef QMETRO_HOMODYNE_H_
#define QMETRO_HOMODYNE_H_

#include <vector>

#include "qmetro/fisher_bounds.h"
#include "qmetro/states.h"

namespace qmetro {

/// Gauss-Hermite nodes for integrands shaped like exp(-envelope p^2) times a
/// smooth factor. Weights absorb exp(+envelope p^2), so
/// sum_i weights[i] * f(points[i]) approximates the plain integral of f.
class QuadratureGrid {
 public:
  static QuadratureGrid gauss_hermite(int nodes, double envelope = 1.0);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  int nodes() const { return static_cast<int>(points_.size()); }
  double envelope() const { return envelope_; }

  /// Same envelope, twice the nodes.
  QuadratureGrid refined() const;

  template <typename F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) sum{};
    for (std::size_t i = 0; i < points_.size(); ++i)
      sum += weights_[i] * f(points_[i]);
    return sum;
  }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  double envelope_ = 1.0;
};

inline constexpr int kMaxQuadratureNodes = 512;

/// Grid for the equal-p slice exp(-(1+d) p^2) of the (d+1)-mode state.
QuadratureGrid default_slice_grid(const StateParams& params);
/// Grid for single-mode overlap integrals (envelope exp(-p^2)).
QuadratureGrid default_mode_grid(const StateParams& params);

/// <p|alpha> derived from the Fock expansion with
/// <p|k> = pi^{-1/4} (2^k k!)^{-1/2} (-i)^k H_k(p) e^{-p^2/2}:
///   pi^{-1/4} exp(-p^2/2 - i sqrt2 p alpha + alpha^2/2 - |alpha|^2/2).
Complex quad_coherent(double p, Complex alpha);
/// Same expression with +|alpha|^2/2 in the exponent, kept for comparison.
/// Not normalizable for alpha != 0.
Complex quad_coherent_printed(double p, Complex alpha);

/// <p|alpha, n> = [n! L_n(-|alpha|^2)]^{-1/2} (-i/sqrt2)^n
///                H_n(p + i alpha/sqrt2) <p|alpha>.
Complex quad_pacs(double p, Complex alpha, int n);
/// Variant with the (i/sqrt2)^n prefactor and quad_coherent_printed.
Complex quad_pacs_printed(double p, Complex alpha, int n);

/// PACS |alpha, n> of one mode in the p representation (n = 0: coherent).
struct ModeAmplitude {
  Complex alpha;
  int n = 0;
  Complex operator()(double p) const { return quad_pacs(p, alpha, n); }
};

struct QuadratureBranch {
  Complex weight;
  std::vector<ModeAmplitude> modes;
};

/// Superposition of product states of PACS modes, the p-representation
/// counterpart of BranchProductState.
struct QuadratureState {
  std::vector<QuadratureBranch> branches;
  int mode_count() const {
    return branches.empty() ? 0 : static_cast<int>(branches.front().modes.size());
  }
};

QuadratureState ghz_quadrature_state(const StateParams& params);

/// Applies exp(i phi a^dag a) to mode 0: alpha -> alpha e^{i phi} and the
/// photon-added part picks up e^{i n phi}.
QuadratureState rotate_reference_mode(const QuadratureState& state, double phi);

/// <psi|psi>, <p_tot> and <p_tot^2> of p_tot = sum_m p_m, integrating every
/// mode separately (the joint density over all d+1 quadratures). Mean and
/// second moment are normalized by <psi|psi>.
struct PtotMoments {
  double norm;
  double mean;
  double second;
};
PtotMoments joint_moments(const QuadratureState& state,
                          const QuadratureGrid& mode_grid);

struct MarginalParams {
  StateParams state;
  double phi = 0.0;
};

/// |<p, p, ..., p|Psi_out>|^2 computed from the exact amplitudes.
double marginal(double p, const MarginalParams& params);

/// The first-order-in-phi closed form with its printed prefactor
/// C^2 = N_l^2 pi^{-(1+d)/2} 2^{-n} [n! L_n(-alpha^2)]^{-1} e^{2 alpha^2 (1+d)}.
/// Requires real alpha.
double marginal_first_order(double p, const MarginalParams& params);

/// Smallest value of marginal_first_order on the grid; throws
/// NegativityError when it is below -1e-9.
double check_first_order_nonnegative(const MarginalParams& params,
                                     const QuadratureGrid& grid);

enum class MarginalForm { kExact, kFirstOrder };

/// (1+d) * integral p P(p|phi) dp over the equal-p slice. Throws
/// GridInadequateError when doubling the grid moves the result by > 1e-8.
double signal_mean(const MarginalParams& params, const QuadratureGrid& grid,
                   MarginalForm form = MarginalForm::kExact);

/// Integral of P(p|phi) over the equal-p slice (not a probability; the
/// slice of a (d+1)-variable density).
double slice_integral(const MarginalParams& params, const QuadratureGrid& grid,
                      MarginalForm form = MarginalForm::kExact);

/// <p_tot> of the joint density at phi.
double joint_signal_mean(const MarginalParams& params,
                         const QuadratureGrid& mode_grid);

/// Error propagation (<p_tot^2> - <p_tot>^2) / |d<p_tot>/dphi|^2 at `phi`,
/// with the derivative from Richardson-extrapolated central differences
/// (h = 1e-4 and h/2). Throws ZeroDerivativeError when the signal does not
/// respond to the phase and GridInadequateError on unconverged moments.
BoundResult variance_homodyne(const QuadratureState& state, double phi,
                              const QuadratureGrid& mode_grid);
BoundResult variance_homodyne(const MarginalParams& params,
                              const QuadratureGrid& mode_grid);

/// Small- and large-alpha asymptotic forms of the homodyne variance. Both
/// need n >= 1.
double variance_small_alpha(const StateParams& params);
double variance_large_alpha(const StateParams& params);

}  // namespace qmetro

#endif  // QMETRO_HOMODYNE_H_
