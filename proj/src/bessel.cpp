/* Copyright 2026 The phasenrs Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "phasenrs/bessel.hpp"

#include <cmath>
#include <vector>

#include "phasenrs/core.hpp"

namespace pnrs {
namespace {

double series(int n, double x) {
  // sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)
  // Extended precision absorbs the cancellation near |x| = 12.
  const long double h = 0.5L * x;
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= h / i;
  if (term == 0.0L) return 0.0;
  long double sum = term;
  const long double h2 = h * h;
  for (int k = 1; k < 500; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) && k > h) break;
  }
  return static_cast<double>(sum);
}

double miller(int n, double x) {
  // Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by
  // J_0 + 2 sum J_2k = 1. Valid for x > 0.
  const int top0 = std::max(n, static_cast<int>(x)) + 30 + static_cast<int>(10.0 * std::cbrt(x));
  const int top = top0 + (top0 % 2);
  double jp1 = 0.0, j = 1e-300, want = 0.0, norm = 0.0;
  for (int k = top; k >= 1; --k) {
    const double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == n) want = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      want *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += j;
  if (n == 0) want = j;
  return want / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  if (!std::isfinite(x) || std::abs(x) > 1000.0) throw DomainError("bessel_j: |x| > 1000");
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2) sign = -sign;
  }
  if (x < 0) {
    x = -x;
    if (n % 2) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;
  const double v = (x < 12.0) ? series(n, x) : miller(n, x);
  return sign * v;
}

double first_j0_zero() {
  static const double root = [] {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (bessel_j(0, mid) > 0) lo = mid; else hi = mid;
    }
    // One Newton step polishes the last bit: J0' = -J1.
    double r = 0.5 * (lo + hi);
    r += bessel_j(0, r) / bessel_j(1, r);
    return r;
  }();
  return root;
}

}  // namespace pnrs
