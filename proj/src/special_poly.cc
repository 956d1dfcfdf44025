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

#include "qmetro/special_poly.h"

#include <array>
#include <cmath>
#include <limits>

#include "qmetro/errors.h"

namespace qmetro {
namespace {

constexpr int kLogFactorialTableSize = 1024;

const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const std::array<double, kLogFactorialTableSize> table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    // Accumulated in long double; the stored values are correctly rounded
    // to well below 1e-12 relative.
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int k = 1; k < kLogFactorialTableSize; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

template <typename T>
T hermite_impl(int n, T z) {
  if (n < 0) throw InvalidArgumentError("hermite: negative order");
  T prev(1.0);
  if (n == 0) return prev;
  T cur = T(2.0) * z;
  for (int k = 1; k < n; ++k) {
    T next = T(2.0) * z * cur - T(2.0 * k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double laguerre(int n, double x) {
  if (n < 0) throw InvalidArgumentError("laguerre: negative order");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex hermite(int n, Complex z) { return hermite_impl<Complex>(n, z); }
double hermite(int n, double x) { return hermite_impl<double>(n, x); }

Complex hermite_derivative(int n, Complex z) {
  if (n < 0) throw InvalidArgumentError("hermite_derivative: negative order");
  if (n == 0) return Complex(0.0);
  return 2.0 * n * hermite(n - 1, z);
}

double hermite_derivative(int n, double x) {
  if (n < 0) throw InvalidArgumentError("hermite_derivative: negative order");
  if (n == 0) return 0.0;
  return 2.0 * n * hermite(n - 1, x);
}

double log_factorial(int k) {
  if (k < 0) throw InvalidArgumentError("log_factorial: negative argument");
  if (k < kLogFactorialTableSize) return log_factorial_table()[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

SignedLog factorial_laguerre(int k, double x) {
  const double l = laguerre(k, x);
  if (l == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {log_factorial(k) + std::log(std::abs(l)), l > 0.0 ? 1 : -1};
}

}  // namespace qmetro
