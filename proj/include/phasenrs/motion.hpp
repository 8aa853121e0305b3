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

#include <variant>
#include <vector>

#include "phasenrs/response.hpp"

namespace pnrs {

struct Stationary {};
//! z(t) = A sin(w_p t + phi0), p = A k0.
struct Harmonic {
  double p = 0.0;
  double omega_p = 1.0;
  double phi0 = 0.0;
};
//! Step at t = 0+ followed by linear drift: phase phi0 + w_p t.
struct Pssl {
  double phi0 = 0.0;
  double omega_p = 1.0;
};
//! Constant velocity, parameterized by the Doppler detuning k0 v.
struct ConstantVelocity {
  double detuning = 0.0;
};

using MotionPattern = std::variant<Stationary, Harmonic, Pssl, ConstantVelocity>;

void validate_motion(const MotionPattern& m);

//! exp(i k0 [z(t) - z(0)]) for t >= 0.
cplx motion_phase_factor(const MotionPattern& m, double t);

//! alpha_n = J_n(p) exp(i n phi0 - i p sin phi0), n in [-max_order, max_order].
struct SidebandExpansion {
  int max_order = 0;
  std::vector<cplx> coefficients;
  double p = 0.0;
  double phi0 = 0.0;

  cplx alpha(int n) const {
    return (n < -max_order || n > max_order) ? cplx{} : coefficients[static_cast<std::size_t>(n + max_order)];
  }
};

//! Minimal N with sum_{|n|>N} J_n(p)^2 < tol.
int sideband_max_order(double p, double tol);
SidebandExpansion sideband_coefficients(double p, double phi0, double tol = 1e-12);

//! 1 - sum_n alpha_n R^_S(w + n w_p).
ComplexSpectrum oscillating_response_freq(const AnalyzerSpec& a, const SidebandExpansion& e,
                                          double omega_p, const FrequencyGrid& g);
//! Scattering part of the harmonic time response,
//! -exp(i p [sin(w_p t + phi0) - sin phi0]) R_S(t); delta flag = 1.
TimeSignal oscillating_response_time(const AnalyzerSpec& a, const Harmonic& m, const TimeGrid& g);
//! 1 - exp(i phi0) R^_S(w + w_p).
ComplexSpectrum pssl_response_freq(const AnalyzerSpec& a, double phi0, double omega_p,
                                   const FrequencyGrid& g);
//! 1 - J_1(p) exp(i phi0 - i p sin phi0) R^_S(w + w_p).
ComplexSpectrum single_sideband_response(const AnalyzerSpec& a, double p, double phi0,
                                         double omega_p, const FrequencyGrid& g);

}  // namespace pnrs
