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

#include "qmetro/homodyne.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "qmetro/errors.h"
#include "qmetro/special_poly.h"

namespace qmetro {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr Complex kI(0.0, 1.0);

constexpr int kHardNodeLimit = 2048;
constexpr double kGridTolerance = 1e-8;
constexpr double kNegativityTolerance = 1e-9;
constexpr double kDerivativeStep = 1e-4;

// Orthonormal Hermite function recurrence at z, returning
// (psi_n, psi_{n-1}) scaled by exp(-log_scale).
struct HermiteFunctionPair {
  double current;
  double previous;
  double log_scale;
};

HermiteFunctionPair hermite_functions(int n, double z) {
  double p1 = 1.0, p2 = 0.0;
  double log_scale = -0.25 * std::log(kPi) - 0.5 * z * z;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    if (std::abs(p1) > 1e150) {
      p1 *= 1e-150;
      p2 *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
    }
  }
  return {p1, p2, log_scale};
}

// Exact amplitudes on one mode, evaluated on a grid and cached per branch.
std::vector<Complex> sample(const ModeAmplitude& mode,
                            const std::vector<double>& points) {
  std::vector<Complex> v(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) v[i] = mode(points[i]);
  return v;
}

double real_alpha(const StateParams& s, const char* what) {
  if (s.alpha.imag() != 0.0)
    throw InvalidArgumentError(std::string(what) + " assumes a real amplitude");
  return s.alpha.real();
}

Complex slice_amplitude(double p, const QuadratureState& state) {
  Complex a(0.0);
  for (const auto& b : state.branches) {
    Complex t = b.weight;
    for (const auto& m : b.modes) t *= m(p);
    a += t;
  }
  return a;
}

double slice_integral_on(const MarginalParams& params, const QuadratureGrid& grid,
                         MarginalForm form, int power) {
  if (form == MarginalForm::kExact) {
    const QuadratureState s =
        rotate_reference_mode(ghz_quadrature_state(params.state), params.phi);
    return grid.integrate([&](double p) {
      return std::pow(p, power) * std::norm(slice_amplitude(p, s));
    });
  }
  return grid.integrate([&](double p) {
    return std::pow(p, power) * marginal_first_order(p, params);
  });
}

void require_converged(double coarse, double fine, const char* what) {
  if (std::abs(coarse - fine) > kGridTolerance * std::max(1.0, std::abs(fine))) {
    throw GridInadequateError(std::string(what) + " changed by " +
                              std::to_string(std::abs(coarse - fine)) +
                              " under grid refinement");
  }
}

int nodes_for(double frequency, int degree) {
  const int n = std::max({64, degree + 8,
                          static_cast<int>(std::ceil(frequency * frequency))}) + 32;
  return std::min(n, kMaxQuadratureNodes);
}

}  // namespace

QuadratureGrid QuadratureGrid::gauss_hermite(int nodes, double envelope) {
  if (nodes < 1 || nodes > kHardNodeLimit)
    throw InvalidArgumentError("quadrature node count out of range");
  if (!(envelope > 0.0)) throw InvalidArgumentError("envelope must be positive");
  // Nodes: eigenvalues of the Jacobi matrix, polished by Newton steps on
  // the normalized Hermite function.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(nodes);
  Eigen::VectorXd sub(std::max(nodes - 1, 0));
  for (int k = 1; k < nodes; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi;
  jacobi.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> t(nodes), w(nodes);
  for (int i = 0; i < nodes; ++i) {
    double z = jacobi.eigenvalues()(i);
    HermiteFunctionPair h{};
    for (int iter = 0; iter < 3; ++iter) {
      h = hermite_functions(nodes, z);
      if (h.previous == 0.0) break;
      z -= h.current / (std::sqrt(2.0 * nodes) * h.previous);
    }
    h = hermite_functions(nodes, z);
    const double derivative_log =
        std::log(std::sqrt(2.0 * nodes) * std::abs(h.previous)) + h.log_scale;
    // Gauss-Hermite weight times exp(z^2) = 2 / psi_n'(z)^2.
    t[i] = z;
    w[i] = std::exp(std::log(2.0) - 2.0 * derivative_log);
  }
  // Exact symmetry.
  for (int i = 0; i < nodes / 2; ++i) {
    const int j = nodes - 1 - i;
    const double z = 0.5 * (t[j] - t[i]);
    const double wt = 0.5 * (w[i] + w[j]);
    t[i] = -z;
    t[j] = z;
    w[i] = w[j] = wt;
  }
  if (nodes % 2 == 1) t[nodes / 2] = 0.0;

  QuadratureGrid g;
  g.envelope_ = envelope;
  const double s = 1.0 / std::sqrt(envelope);
  g.points_.resize(nodes);
  g.weights_.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    g.points_[i] = t[i] * s;
    g.weights_[i] = w[i] * s;
  }
  return g;
}

QuadratureGrid QuadratureGrid::refined() const {
  return gauss_hermite(std::min(2 * nodes(), kHardNodeLimit), envelope_);
}

QuadratureGrid default_slice_grid(const StateParams& params) {
  const double a = std::abs(params.alpha);
  const double frequency = 2.0 * kSqrt2 * a * std::sqrt(1.0 + params.d);
  return QuadratureGrid::gauss_hermite(nodes_for(frequency, 2 * params.n + 8),
                                       1.0 + params.d);
}

QuadratureGrid default_mode_grid(const StateParams& params) {
  const double a = std::abs(params.alpha);
  return QuadratureGrid::gauss_hermite(nodes_for(2.0 * kSqrt2 * a + 2.0 * a,
                                                 2 * params.n + 8));
}

Complex quad_coherent(double p, Complex alpha) {
  return std::pow(kPi, -0.25) * std::exp(-0.5 * p * p - kI * kSqrt2 * p * alpha +
                                         0.5 * alpha * alpha - 0.5 * std::norm(alpha));
}

Complex quad_coherent_printed(double p, Complex alpha) {
  return std::pow(kPi, -0.25) * std::exp(-0.5 * p * p - kI * kSqrt2 * p * alpha +
                                         0.5 * alpha * alpha + 0.5 * std::norm(alpha));
}

namespace {

Complex pacs_prefactor(Complex alpha, int n, Complex unit) {
  const double x = std::norm(alpha);
  const double log_mag = -0.5 * (log_factorial(n) + std::log(laguerre(n, -x))) -
                         0.5 * n * std::log(2.0);
  return std::exp(log_mag) * std::pow(unit, n);
}

}  // namespace

Complex quad_pacs(double p, Complex alpha, int n) {
  if (n < 0) throw InvalidArgumentError("n must be >= 0");
  if (n == 0) return quad_coherent(p, alpha);
  return pacs_prefactor(alpha, n, -kI) * hermite(n, p + kI * alpha / kSqrt2) *
         quad_coherent(p, alpha);
}

Complex quad_pacs_printed(double p, Complex alpha, int n) {
  if (n < 0) throw InvalidArgumentError("n must be >= 0");
  return pacs_prefactor(alpha, n, kI) * hermite(n, p + kI * alpha / kSqrt2) *
         quad_coherent_printed(p, alpha);
}

QuadratureState ghz_quadrature_state(const StateParams& params) {
  params.validate();
  const double norm = ghz_norm(params.alpha, params.n, params.d, params.l);
  QuadratureState s;
  for (const double sign : {1.0, -1.0}) {
    QuadratureBranch b;
    b.weight = sign > 0 ? norm : norm * params.parity_sign();
    b.modes.push_back({sign * params.alpha, params.n});
    for (int i = 0; i < params.d; ++i) b.modes.push_back({sign * params.alpha, 0});
    s.branches.push_back(std::move(b));
  }
  return s;
}

QuadratureState rotate_reference_mode(const QuadratureState& state, double phi) {
  QuadratureState out = state;
  const Complex rot = std::polar(1.0, phi);
  for (auto& b : out.branches) {
    if (b.modes.empty()) continue;
    b.modes[0].alpha *= rot;
    b.weight *= std::polar(1.0, b.modes[0].n * phi);
  }
  return out;
}

PtotMoments joint_moments(const QuadratureState& state,
                          const QuadratureGrid& mode_grid) {
  const int modes = state.mode_count();
  const auto& pts = mode_grid.points();
  const auto& wts = mode_grid.weights();
  std::vector<std::vector<std::vector<Complex>>> samples;
  for (const auto& b : state.branches) {
    std::vector<std::vector<Complex>> per_mode;
    for (const auto& m : b.modes) per_mode.push_back(sample(m, pts));
    samples.push_back(std::move(per_mode));
  }

  Complex norm(0.0), first(0.0), second(0.0);
  std::vector<Complex> m0(modes), m1(modes), m2(modes);
  for (std::size_t i = 0; i < state.branches.size(); ++i) {
    for (std::size_t j = 0; j < state.branches.size(); ++j) {
      for (int m = 0; m < modes; ++m) {
        Complex s0(0.0), s1(0.0), s2(0.0);
        for (std::size_t k = 0; k < pts.size(); ++k) {
          const Complex v = wts[k] * std::conj(samples[i][m][k]) * samples[j][m][k];
          s0 += v;
          s1 += v * pts[k];
          s2 += v * pts[k] * pts[k];
        }
        m0[m] = s0;
        m1[m] = s1;
        m2[m] = s2;
      }
      const Complex w = std::conj(state.branches[i].weight) * state.branches[j].weight;
      // Products of overlaps with one or two modes replaced by moments.
      Complex overlap(1.0), lin(0.0), quad(0.0);
      for (int m = 0; m < modes; ++m) {
        Complex others(1.0);
        for (int q = 0; q < modes; ++q)
          if (q != m) others *= m0[q];
        lin += m1[m] * others;
        quad += m2[m] * others;
        for (int r = m + 1; r < modes; ++r) {
          Complex rest(1.0);
          for (int q = 0; q < modes; ++q)
            if (q != m && q != r) rest *= m0[q];
          quad += 2.0 * m1[m] * m1[r] * rest;
        }
        overlap *= m0[m];
      }
      norm += w * overlap;
      first += w * lin;
      second += w * quad;
    }
  }
  const double n = norm.real();
  return {n, first.real() / n, second.real() / n};
}

double marginal(double p, const MarginalParams& params) {
  const QuadratureState s =
      rotate_reference_mode(ghz_quadrature_state(params.state), params.phi);
  return std::norm(slice_amplitude(p, s));
}

double marginal_first_order(double p, const MarginalParams& params) {
  const StateParams& s = params.state;
  s.validate();
  const double alpha = real_alpha(s, "marginal_first_order");
  const double phi = params.phi;
  const int n = s.n;
  const int d = s.d;
  const double norm = ghz_norm(s.alpha, n, d, s.l);
  const double x = alpha * alpha;
  const double log_c2 = 2.0 * std::log(norm) - 0.5 * (1.0 + d) * std::log(kPi) -
                        n * std::log(2.0) -
                        (log_factorial(n) + std::log(laguerre(n, -x))) +
                        2.0 * x * (1.0 + d);
  const double shift = alpha / kSqrt2;
  const double hm = hermite(n, p - shift);
  const double hp = hermite(n, p + shift);
  const double dhm = hermite_derivative(n, p - shift);
  const double dhp = hermite_derivative(n, p + shift);
  const double arg = s.l * kPi + 2.0 * kSqrt2 * p * alpha * (1.0 + d);
  const double braces =
      std::exp(2.0 * kSqrt2 * p * alpha * phi) * hm * hm +
      std::exp(-2.0 * kSqrt2 * p * alpha * phi) * hp * hp +
      2.0 * std::cos(arg) * hm * hp -
      kSqrt2 * n * alpha * phi * std::sin(arg) * (dhm * hp + hm * dhp);
  return std::exp(log_c2 - p * p * (1.0 + d)) * braces;
}

double check_first_order_nonnegative(const MarginalParams& params,
                                     const QuadratureGrid& grid) {
  double lo = std::numeric_limits<double>::infinity();
  for (double p : grid.points()) lo = std::min(lo, marginal_first_order(p, params));
  if (lo < -kNegativityTolerance) {
    throw NegativityError("first-order marginal is negative (min " +
                              std::to_string(lo) + ")",
                          lo);
  }
  return lo;
}

double signal_mean(const MarginalParams& params, const QuadratureGrid& grid,
                   MarginalForm form) {
  params.state.validate();
  const double scale = 1.0 + params.state.d;
  const double coarse = scale * slice_integral_on(params, grid, form, 1);
  const double fine = scale * slice_integral_on(params, grid.refined(), form, 1);
  require_converged(coarse, fine, "signal mean");
  return fine;
}

double slice_integral(const MarginalParams& params, const QuadratureGrid& grid,
                      MarginalForm form) {
  params.state.validate();
  const double coarse = slice_integral_on(params, grid, form, 0);
  const double fine = slice_integral_on(params, grid.refined(), form, 0);
  require_converged(coarse, fine, "slice integral");
  return fine;
}

double joint_signal_mean(const MarginalParams& params,
                         const QuadratureGrid& mode_grid) {
  const QuadratureState s =
      rotate_reference_mode(ghz_quadrature_state(params.state), params.phi);
  const double coarse = joint_moments(s, mode_grid).mean;
  const double fine = joint_moments(s, mode_grid.refined()).mean;
  require_converged(coarse, fine, "joint signal mean");
  return fine;
}

BoundResult variance_homodyne(const QuadratureState& state, double phi,
                              const QuadratureGrid& mode_grid) {
  const QuadratureGrid fine_grid = mode_grid.refined();
  const QuadratureState here = rotate_reference_mode(state, phi);
  const PtotMoments coarse = joint_moments(here, mode_grid);
  const PtotMoments fine = joint_moments(here, fine_grid);
  require_converged(coarse.norm, fine.norm, "joint norm");
  require_converged(coarse.mean, fine.mean, "<p_tot>");
  require_converged(coarse.second, fine.second, "<p_tot^2>");

  auto mean_at = [&](double h) {
    return joint_moments(rotate_reference_mode(state, phi + h), fine_grid).mean;
  };
  const double h = kDerivativeStep;
  const double d1 = (mean_at(h) - mean_at(-h)) / (2.0 * h);
  const double d2 = (mean_at(h / 2) - mean_at(-h / 2)) / h;
  const double derivative = (4.0 * d2 - d1) / 3.0;
  const double variance = fine.second - fine.mean * fine.mean;
  if (std::abs(derivative) <= kGridTolerance * (1.0 + std::sqrt(std::abs(variance)))) {
    throw ZeroDerivativeError(
        "<p_tot> does not depend on the phase at this working point");
  }
  return {Protocol::kHomodyne, variance / (derivative * derivative), std::nullopt};
}

BoundResult variance_homodyne(const MarginalParams& params,
                              const QuadratureGrid& mode_grid) {
  BoundResult r = variance_homodyne(ghz_quadrature_state(params.state),
                                    params.phi, mode_grid);
  r.params = params.state;
  return r;
}

namespace {

double asymptotic_prefactor(const StateParams& params) {
  params.validate();
  if (params.n < 1)
    throw InvalidArgumentError("homodyne asymptotics need n >= 1");
  if (std::abs(params.alpha) == 0.0)
    throw InvalidArgumentError("homodyne asymptotics need alpha != 0");
  const double norm = ghz_norm(params.alpha, params.n, params.d, params.l);
  return std::pow(kPi, 0.5 * params.d) / (norm * norm) /
         (static_cast<double>(params.n) * params.n);
}

}  // namespace

double variance_small_alpha(const StateParams& params) {
  const double a = std::abs(params.alpha);
  return asymptotic_prefactor(params) * (2.0 * params.n + 1.0) /
         std::pow(a, 4) * std::sqrt(1.0 + params.d);
}

double variance_large_alpha(const StateParams& params) {
  const double a = std::abs(params.alpha);
  return asymptotic_prefactor(params) / std::pow(a, 4.0 * params.n) *
         std::pow(1.0 + params.d, 1.5);
}

}  // namespace qmetro
