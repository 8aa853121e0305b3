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

#include "phasenrs/motion.hpp"

#include <cmath>

#include "phasenrs/bessel.hpp"

namespace pnrs {

void validate_motion(const MotionPattern& m) {
  if (const auto* h = std::get_if<Harmonic>(&m)) {
    if (!(h->p >= 0)) throw DomainError("harmonic amplitude p must be >= 0");
    if (!(h->omega_p > 0)) throw DomainError("harmonic frequency must be > 0");
    if (!(h->phi0 >= 0 && h->phi0 < kTwoPi)) throw DomainError("phi0 must lie in [0, 2pi)");
  } else if (const auto* s = std::get_if<Pssl>(&m)) {
    if (!(s->omega_p > 0)) throw DomainError("PSSL drift frequency must be > 0");
    if (!(s->phi0 >= 0 && s->phi0 < kTwoPi)) throw DomainError("phi0 must lie in [0, 2pi)");
  }
}

cplx motion_phase_factor(const MotionPattern& m, double t) {
  if (t < 0) throw DomainError("motion_phase_factor: t must be >= 0");
  if (const auto* h = std::get_if<Harmonic>(&m))
    return std::polar(1.0, h->p * (std::sin(h->omega_p * t + h->phi0) - std::sin(h->phi0)));
  if (const auto* s = std::get_if<Pssl>(&m)) return t > 0 ? std::polar(1.0, s->phi0 + s->omega_p * t) : cplx(1.0);
  if (const auto* v = std::get_if<ConstantVelocity>(&m)) return std::polar(1.0, v->detuning * t);
  return 1.0;
}

int sideband_max_order(double p, double tol) {
  if (!(tol > 0 && tol <= 1e-4)) throw DomainError("sideband tolerance must lie in (0, 1e-4]");
  if (p == 0.0) return 0;
  // Tail = 1 - J0^2 - 2 sum_{n=1}^{N} J_n^2.
  double captured = bessel_j(0, p) * bessel_j(0, p);
  int n = 0;
  // The floating-point tail saturates near 1e-16; past p + 60 the remaining
  // orders are far below any admissible tolerance.
  while (1.0 - captured >= tol && n < p + 60) {
    ++n;
    const double j = bessel_j(n, p);
    captured += 2.0 * j * j;
  }
  return n;
}

SidebandExpansion sideband_coefficients(double p, double phi0, double tol) {
  SidebandExpansion e;
  e.p = p;
  e.phi0 = phi0;
  e.max_order = sideband_max_order(p, tol);
  const double common = -p * std::sin(phi0);
  for (int n = -e.max_order; n <= e.max_order; ++n)
    e.coefficients.push_back(bessel_j(n, p) * std::polar(1.0, n * phi0 + common));
  return e;
}

ComplexSpectrum oscillating_response_freq(const AnalyzerSpec& a, const SidebandExpansion& e, double omega_p,
                                          const FrequencyGrid& g) {
  a.validate();
  const double reach = e.max_order * omega_p + 50.0 * a.linewidth;
  g.require_covers(a.offset - reach, a.offset + reach, "oscillating_response_freq");
  ComplexSpectrum s{g, std::vector<cplx>(g.count, cplx(1.0))};
  for (int n = -e.max_order; n <= e.max_order; ++n) {
    const cplx al = e.alpha(n);
    if (al == cplx{}) continue;
    for (std::size_t m = 0; m < g.count; ++m) s.values[m] -= al * analyzer_scattering(g.at(m) + n * omega_p, a);
  }
  return s;
}

TimeSignal oscillating_response_time(const AnalyzerSpec& a, const Harmonic& h, const TimeGrid& g) {
  TimeSignal s = analyzer_scattering_time(g, a);
  const MotionPattern m = h;
  for (std::size_t q = 0; q < g.count; ++q) {
    const double t = g.at(q);
    if (t > 0) s.values[q] *= -motion_phase_factor(m, t);
  }
  s.delta = 1.0;
  return s;
}

ComplexSpectrum pssl_response_freq(const AnalyzerSpec& a, double phi0, double omega_p, const FrequencyGrid& g) {
  a.validate();
  g.require_covers(a.offset - omega_p - 50.0 * a.linewidth, a.offset - omega_p + 50.0 * a.linewidth,
                   "pssl_response_freq");
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  const cplx w = std::polar(1.0, phi0);
  for (std::size_t m = 0; m < g.count; ++m) s.values[m] = 1.0 - w * analyzer_scattering(g.at(m) + omega_p, a);
  return s;
}

ComplexSpectrum single_sideband_response(const AnalyzerSpec& a, double p, double phi0, double omega_p,
                                         const FrequencyGrid& g) {
  a.validate();
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  const cplx w = bessel_j(1, p) * std::polar(1.0, phi0 - p * std::sin(phi0));
  for (std::size_t m = 0; m < g.count; ++m) s.values[m] = 1.0 - w * analyzer_scattering(g.at(m) + omega_p, a);
  return s;
}

}  // namespace pnrs
