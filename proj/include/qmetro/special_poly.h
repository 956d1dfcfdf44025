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

#ifndef QMETRO_SPECIAL_POLY_H_
#define QMETRO_SPECIAL_POLY_H_

#include <complex>

namespace qmetro {

using Complex = std::complex<double>;

/// Laguerre polynomial L_n(x) by the three-term recurrence
///   (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
/// The explicit alternating sum cancels badly for large |x|; it is kept in
/// the tests as an oracle only.
double laguerre(int n, double x);

/// Physicists' Hermite polynomial, H_{k+1} = 2z H_k - 2k H_{k-1}.
Complex hermite(int n, Complex z);
double hermite(int n, double x);

/// H'_n(z) = 2n H_{n-1}(z).
Complex hermite_derivative(int n, Complex z);
double hermite_derivative(int n, double x);

/// ln(k!). Exact accumulation of ln(i) below a table limit, lgamma above.
double log_factorial(int k);

/// k! * L_k(x), returned as sign and log-magnitude so that large orders do
/// not overflow. `log_abs` is -inf when the product is exactly zero.
struct SignedLog {
  double log_abs;
  int sign;  // -1, 0 or +1
  double value() const;
};
SignedLog factorial_laguerre(int k, double x);

}  // namespace qmetro

#endif  // QMETRO_SPECIAL_POLY_H_
