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

#ifndef QMETRO_FOCK_ORACLE_H_
#define QMETRO_FOCK_ORACLE_H_

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qmetro/fisher_bounds.h"
#include "qmetro/states.h"

namespace qmetro {

/// A Fock-diagonal single-mode operator: |k> -> spectrum(k) |k>.
struct ModeObservable {
  int mode_index;
  std::function<double(int)> spectrum;
};

/// a^dag a on `mode`.
ModeObservable number_operator(int mode);
/// (a^dag a)^2 on `mode`.
ModeObservable number_squared(int mode);

/// <psi| prod_i obs_i |psi> without renormalization. Observables on the same
/// mode multiply their spectra; modes without observables contribute plain
/// overlaps. An empty list gives <psi|psi>.
Complex branch_expectation(const BranchProductState& state,
                           std::span<const ModeObservable> observables);

/// F_pq = 4 Re(<H_p H_q> - <H_p><H_q>), with expectations taken in the
/// normalized state. Generators must be Fock-diagonal (hence commuting).
FisherMatrix qfim_numeric(const BranchProductState& state,
                          std::span<const ModeObservable> generators);

/// max_{p,q} |Im <H_p H_q>|; vanishes for commuting Hermitian generators.
double compatibility_check(const BranchProductState& state,
                           std::span<const ModeObservable> generators);

/// n^ (or n^2 when `squared`) on each of modes first..first+count-1.
std::vector<ModeObservable> number_generators(int first, int count,
                                              bool squared = false);

/// Total photon number <sum_m n_m> of a normalized state.
double total_photon_number(const BranchProductState& state);

enum class ReferenceState { kNoon, kEcs };

std::string_view reference_name(ReferenceState s);

// Bounds for a reference construction at matched total photon number.
// Simultaneous bounds are Tr(F^-1) of the (d+1)-mode state with generators
// on modes 1..d; independent bounds use d two-mode probes, each holding a
// 1/d share of the photons.
struct ReferenceBounds {
  double independent;            // generator n
  double independent_nonlinear;  // generator n^2
  double linear;
  double nonlinear;
  double mean_photon;
  int photons;  // NOON photon number N; 0 for ECS
};

/// NOON: M = max(1, round(alpha_sq)) photons per parameter, N = d M in the
/// simultaneous state. ECS: amplitude sqrt(alpha_sq) in the simultaneous
/// state, two-mode amplitudes found by bisection on the photon number.
ReferenceBounds reference_bounds(ReferenceState s, double alpha_sq, int d);

}  // namespace qmetro

#endif  // QMETRO_FOCK_ORACLE_H_
