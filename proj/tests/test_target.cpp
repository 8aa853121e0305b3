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
#include "phasenrs/pipeline.hpp"

using namespace pnrs;

TEST_SUITE("target_models") {
  TEST_CASE("presets: line counts, symmetry, peak") {
    CHECK(preset_names().size() == 3);
    const std::size_t counts[] = {1, 2, 6};
    std::size_t i = 0;
    for (const auto& name : preset_names()) {
      const TargetModel m = target_preset(name);
      REQUIRE(m.is_rational());
      CHECK(m.rational().lines.size() == counts[i++]);
      CHECK(m.asymptote() == cplx(0.0));
      double peak = 0.0;
      for (double w = -300; w <= 300; w += 0.01) peak = std::max(peak, std::abs(m.freq(w)));
      CHECK(peak == doctest::Approx(0.95).epsilon(1e-6));
      for (double w : {3.0, 17.0, 55.0}) CHECK(std::norm(m.freq(w)) == doctest::Approx(std::norm(m.freq(-w))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(target_preset("no_such"), DomainError);
  }

  TEST_CASE("rational time response matches the pole sum") {
    const TargetModel m = target_preset("two_line");
    std::vector<oracle::Pole> poles;
    for (const auto& l : m.rational().lines) poles.push_back({l.residue, l.center, l.width});
    const TimeGrid g{0.0, 0.01, 300};
    const TimeSignal s = target_response_time(m, g);
    for (std::size_t q = 1; q < g.count; q += 7) CHECK(std::abs(s.values[q] - oracle::rt(poles, g.at(q))) < 1e-13);
    for (double w : {-40.0, 0.0, 12.5}) CHECK(std::abs(m.freq(w) - oracle::rt_hat(poles, w)) < 1e-14);
  }

  TEST_CASE("group delay is d arg R / dw") {
    const TargetModel m = target_preset("zeeman_six_line");
    for (double w : {-50.0, -3.0, 21.0, 90.0}) {
      const double h = 1e-5;
      const double num = std::arg(m.freq(w + h) / m.freq(w - h)) / (2 * h);
      CHECK(target_group_delay(m, w) == doctest::Approx(num).epsilon(1e-6));
    }
    // single Lorentzian at center: tau = 2 / Gamma
    CHECK(target_group_delay(target_preset("single_line"), 0.0) == doctest::Approx(2.0 / 30.0).epsilon(1e-12));
  }

  TEST_CASE("support half-width is the tightest bound") {
    const TargetModel m = target_preset("single_line");
    const double l = target_support_halfwidth(m, 0.1);
    CHECK(std::abs(m.freq(l + 1e-6)) < 0.1);
    CHECK(std::abs(m.freq(-l - 1e-6)) < 0.1);
    CHECK(std::abs(m.freq(l - 1e-3)) >= 0.1 - 1e-9);
    // |0.95 * 15 / (w + 15 i)| = 0.1
    CHECK(l == doctest::Approx(std::sqrt(142.5 * 142.5 - 225.0)).epsilon(1e-6));
    CHECK_THROWS_AS(target_support_halfwidth(m, 0.5), DomainError);
  }

  TEST_CASE("non-passive and malformed targets are rejected") {
    RationalModel r;
    r.lines.push_back({cplx(0, -40.0), 0.0, 2.0});
    CHECK_THROWS_AS(TargetModel{r}, DomainError);
    RationalModel w;
    w.lines.push_back({cplx(0, -0.1), 0.0, -1.0});
    CHECK_THROWS_AS(TargetModel{w}, DomainError);
    ExponentialModel e;
    e.width = 0.0;
    CHECK_THROWS_AS(TargetModel{e}, DomainError);
  }

  TEST_CASE("exponential target: thin limit equals the analyzer form") {
    ExponentialModel e;
    e.width = 1.0;
    e.lines.push_back({2.0, 5.0});
    const TargetModel m(e);
    const AnalyzerSpec a{2.0, 1.0, 5.0};
    for (double w : {-3.0, 4.0, 5.0, 11.0}) CHECK(std::abs(m.freq(w) - analyzer_response(w, a)) < 1e-14);
    const double h = 0.25 / ns_per_time_unit(NuclideConstants{});
    const TimeGrid g{60 * h, h, 200};
    const TimeSignal s = target_response_time(m, g);
    CHECK(s.delta == cplx(1.0));
    for (std::size_t q = 0; q < g.count; q += 13)
      CHECK(std::abs(s.values[q] + oracle::rs(g.at(q), 2.0, 1.0, 5.0)) < 1e-7);
  }
}
