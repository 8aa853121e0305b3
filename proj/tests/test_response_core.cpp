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
#include "phasenrs/response.hpp"
#include "phasenrs/units.hpp"

using namespace pnrs;

TEST_SUITE("response_core") {
  TEST_CASE("bessel matches std::cyl_bessel_j") {
    for (int n = 0; n <= 30; ++n)
      for (double x : {1e-3, 0.5, 2.404825557695773, 9.99, 12.0, 25.0, 140.0, 600.0}) {
        const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
        CHECK(std::abs(bessel_j(n, x) - ref) < 1e-12 * std::max(1.0, std::abs(ref)) + 1e-15);
      }
  }

  TEST_CASE("bessel symmetries and sum rule") {
    for (double x : {0.3, 3.7, 41.0}) {
      for (int n = 1; n < 8; ++n) {
        CHECK(bessel_j(-n, x) == doctest::Approx((n % 2 ? -1 : 1) * bessel_j(n, x)).epsilon(1e-14));
        CHECK(bessel_j(n, -x) == doctest::Approx((n % 2 ? -1 : 1) * bessel_j(n, x)).epsilon(1e-14));
      }
      double s = 0.0;
      for (int n = -200; n <= 200; ++n) s += bessel_j(n, x) * bessel_j(n, x);
      CHECK(std::abs(s - 1.0) < 1e-13);
    }
    CHECK(std::abs(bessel_j(0, first_j0_zero())) < 1e-15);
    CHECK(first_j0_zero() == doctest::Approx(2.404825557695773).epsilon(1e-15));
    CHECK_THROWS_AS(bessel_j(1, 5000.0), DomainError);
  }

  TEST_CASE("time unit follows hbar over gamma") {
    const NuclideConstants c;
    CHECK(ns_per_time_unit(c) == doctest::Approx(kHbarEvS / 4.7e-9 * 1e9).epsilon(1e-15));
    CHECK(ns_per_time_unit(c) == doctest::Approx(140.045).epsilon(1e-5));
    CHECK(time_to_ns(ns_to_time(37.5, c), c) == doctest::Approx(37.5).epsilon(1e-15));
    CHECK(freq_to_nev(nev_to_freq(11.0, c), c) == doctest::Approx(11.0).epsilon(1e-15));
  }

  TEST_CASE("thickness parameter is linear in thickness") {
    const NuclideConstants c;
    CHECK(thickness_param(0.0, c) == 0.0);
    CHECK(thickness_param(2.0, c) == doctest::Approx(2 * thickness_param(1.0, c)).epsilon(1e-15));
    CHECK(thickness_param(3.0, c) > 10.0);
    CHECK(thickness_param(3.0, c) < 15.0);
    CHECK_THROWS_AS(thickness_param(-1.0, c), DomainError);
  }

  TEST_CASE("analyzer response limits") {
    AnalyzerSpec a{0.0, 1.0, 0.0};
    CHECK(std::abs(analyzer_response(0.3, a) - cplx(1.0)) < 1e-15);
    a.b = 4.0;
    // far from resonance the response tends to 1 and R_S to i b / w
    const double w = 1e5;
    CHECK(std::abs(analyzer_scattering(w, a) - cplx(0, a.b) / cplx(w, 0.5)) < 1e-8);
    CHECK(std::abs(analyzer_response(0.7, a) + analyzer_scattering(0.7, a) - cplx(1.0)) < 1e-15);
    // on resonance |R^| = exp(-2b)
    CHECK(std::abs(analyzer_response(0.0, a)) == doctest::Approx(std::exp(-2 * a.b)).epsilon(1e-13));
    CHECK(analyzer_scattering_time(-0.1, a) == cplx(0.0));
    a.b = -1.0;
    CHECK_THROWS_AS(a.validate(), DomainError);
  }

  TEST_CASE("analyzer echo matches the Bessel closed form") {
    const AnalyzerSpec a{2.5, 1.3, 4.0};
    for (double t : {0.01, 0.3, 2.0, 9.0})
      CHECK(std::abs(analyzer_scattering_time(t, a) - oracle::rs(t, a.b, a.linewidth, a.offset)) < 1e-13);
  }

  TEST_CASE("FFT of analyzer spectrum matches the closed form") {
    // i b/(w - w_a + i g/2) is subtracted in frequency and b exp(-i w_a t - g t/2)
    // in time, leaving an O(1/w^2) remainder.
    for (double b : {0.5, 3.0, 12.0}) {
      const AnalyzerSpec a{b, 1.0, 2.0};
      const FrequencyGrid g(0.0, 0.0625, 1u << 16);
      ComplexSpectrum s = analyzer_scattering_freq(g, a);
      for (std::size_t m = 0; m < g.count; ++m) s.values[m] -= cplx(0, b) / cplx(g.at(m) - a.offset, 0.5);
      const TimeSignal ts = freq_to_time(s);
      std::vector<cplx> got, ref;
      for (std::size_t q = 0; q < ts.grid.count; ++q) {
        const double t = ts.grid.at(q);
        if (t < 0.25 || t > 30) continue;
        got.push_back(ts.values[q]);
        ref.push_back(oracle::rs(t, b) * std::exp(cplx(0, -a.offset * t)) - b * std::exp(cplx(-t / 2, -a.offset * t)));
      }
      CHECK(oracle::rel_l2(got, ref) < 1e-6);
    }
  }

  TEST_CASE("time_to_freq inverts freq_to_time") {
    const FrequencyGrid g(3.0, 0.1, 4096);
    ComplexSpectrum s{g, std::vector<cplx>(g.count)};
    for (std::size_t m = 0; m < g.count; ++m) s.values[m] = 1.0 / cplx(g.at(m) - 2.0, 1.5);
    const ComplexSpectrum back = time_to_freq(freq_to_time(s), g);
    double err = 0.0;
    for (std::size_t m = 0; m < g.count; ++m) err = std::max(err, std::abs(back.values[m] - s.values[m]));
    CHECK(err < 1e-12);
  }

  TEST_CASE("grid coverage is enforced") {
    const FrequencyGrid g(0.0, 1.0, 1024);
    CHECK_NOTHROW(g.require_covers(-100, 100, "test"));
    CHECK_THROWS_AS(g.require_covers(-100, 900, "test"), DomainError);
    CHECK(is_power_of_two(1024));
    CHECK(!is_power_of_two(1000));
    CHECK(next_power_of_two(1000) == 1024);
  }
}
