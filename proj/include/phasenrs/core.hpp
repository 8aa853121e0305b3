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

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pnrs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised for arguments outside an operation's supported domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when two artifacts that must agree (grid vs metadata) do not.
class DataMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation is applied to data it is not defined for.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wraps an angle into [0, 2pi).
inline double wrap_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Wraps an angle into (-pi, pi].
inline double wrap_pi(double x) {
  double r = wrap_2pi(x + kPi) - kPi;
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace pnrs
