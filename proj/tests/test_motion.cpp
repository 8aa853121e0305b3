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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "phasenrs/bessel.hpp"
#include "phasenrs/motion.hpp"

using namespace pnrs;

TEST_SUITE("motion") {
  TEST_CASE("sideband weights carry J_n and the common phase") {
    const double p = 1.7, phi0 = 0.9;
    const SidebandExpansion e = sideband_coefficients(p, phi0);
    double s = 0.0;
    for (int n = -e.max_order; n <= e.max_order; ++n) {
      CHECK(std::abs(e.alpha(n)) == doctest::Approx(std::abs(std::cyl_bessel_j(std::abs(n), p))).epsilon(1e-12));
      const cplx expect = bessel_j(n, p) * std::exp(cplx(0, n * phi0 - p * std::sin(phi0)));
      CHECK(std::abs(e.alpha(n) - expect) < 1e-15);
      s += std::norm(e.alpha(n));
    }
    CHECK(1.0 - s < 1e-12);
    CHECK(e.alpha(e.max_order + 1) == cplx(0.0));
  }

  TEST_CASE("sideband truncation order") {
    CHECK(sideband_max_order(0.0, 1e-12) == 0);
    const int n = sideband_max_order(2.4, 1e-12);
    double tail = 0.0;
    for (int k = n + 1; k < 80; ++k) tail += 2 * bessel_j(k, 2.4) * bessel_j(k, 2.4);
    CHECK(tail < 1e-12);
    double tail_prev = tail + 2 * bessel_j(n, 2.4) * bessel_j(n, 2.4);
    CHECK(tail_prev >= 1e-12);
  }

  TEST_CASE("sum of sidebands reproduces the oscillating phase factor") {
    const Harmonic h{2.1, 7.0, 0.4};
    const SidebandExpansion e = sideband_coefficients(h.p, h.phi0, 1e-15);
    for (double t : {0.05, 0.7, 3.3}) {
      cplx s = 0.0;
      for (int n = -e.max_order; n <= e.max_order; ++n) s += e.alpha(n) * std::exp(cplx(0, n * h.omega_p * t));
      CHECK(std::abs(s - oracle::motion_factor(oracle::Motion::harmonic, h.p, h.omega_p, h.phi0, t)) < 1e-7);
      CHECK(std::abs(motion_phase_factor(MotionPattern{h}, t) - s) < 1e-7);
    }
    CHECK(motion_phase_factor(MotionPattern{Stationary{}}, 2.0) == cplx(1.0));
  }

  TEST_CASE("oscillating analyzer FFT matches the analytic time response") {
    const AnalyzerSpec a{1.5, 1.0, 0.0};
    const Harmonic h{1.2, 9.0, 0.7};
    const SidebandExpansion e = sideband_coefficients(h.p, h.phi0, 1e-16);
    const FrequencyGrid g(0.0, 0.0625, 1u << 16);
    ComplexSpectrum s = oscillating_response_freq(a, e, h.omega_p, g);
    // Remove the unit transmission and the 1/w tails of every sideband.
    for (std::size_t m = 0; m < g.count; ++m) {
      s.values[m] -= 1.0;
      for (int n = -e.max_order; n <= e.max_order; ++n)
        s.values[m] += e.alpha(n) * cplx(0, a.b) / cplx(g.at(m) + n * h.omega_p, 0.5);
    }
    const TimeSignal ts = freq_to_time(s);
    const TimeSignal ref = oscillating_response_time(a, h, ts.grid);
    CHECK(ref.delta == cplx(1.0));
    std::vector<cplx> got, want;
    for (std::size_t q = 0; q < ts.grid.count; ++q) {
      const double t = ts.grid.at(q);
      if (t < 0.25 || t > 30) continue;
      cplx tail = 0.0;
      for (int n = -e.max_order; n <= e.max_order; ++n)
        tail += e.alpha(n) * a.b * std::exp(cplx(-t / 2, n * h.omega_p * t));
      got.push_back(ts.values[q]);
      want.push_back(ref.values[q] + tail);
    }
    CHECK(oracle::rel_l2(got, want) < 1e-6);
  }

  TEST_CASE("PSSL response is a single shifted line") {
    const AnalyzerSpec a{0.8, 1.0, 0.0};
    const FrequencyGrid g(0.0, 0.5, 2048);
    const ComplexSpectrum s = pssl_response_freq(a, 1.1, 20.0, g);
    for (std::size_t m = 0; m < g.count; m += 97)
      CHECK(std::abs(s.values[m] - (1.0 - std::polar(1.0, 1.1) * analyzer_scattering(g.at(m) + 20.0, a))) < 1e-15);
    const ComplexSpectrum one = single_sideband_response(a, first_j0_zero(), 0.0, 20.0, g);
    CHECK(std::abs(one.values[1024] - (1.0 - bessel_j(1, first_j0_zero()) * analyzer_scattering(20.0, a))) < 1e-14);
  }

  TEST_CASE("invalid motion is rejected") {
    CHECK_THROWS_AS(validate_motion(MotionPattern{Harmonic{-1.0, 1.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(validate_motion(MotionPattern{Harmonic{1.0, 0.0, 0.0}}), DomainError);
    const AnalyzerSpec a{0.8, 1.0, 0.0};
    const FrequencyGrid tiny(0.0, 0.1, 64);
    CHECK_THROWS_AS(pssl_response_freq(a, 0.0, 500.0, tiny), DomainError);
  }
}
