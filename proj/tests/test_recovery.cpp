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
#include "phasenrs/pipeline.hpp"

using namespace pnrs;

namespace {

std::vector<double> phases(int m) {
  std::vector<double> p(m);
  for (int k = 0; k < m; ++k) p[k] = kTwoPi * k / m;
  return p;
}

// D = B(t) C(w), a = (S - w) t - psi(w) + chi(t).
FitResult synthetic_fit(const std::vector<double>& C, const std::vector<double>& psi) {
  FitResult f;
  f.offset_S = 100.0;
  for (std::size_t i = 0; i < C.size(); ++i) f.scan.push_back(90.0 + static_cast<double>(i));
  for (int j = 0; j < 40; ++j) {
    f.t_ns.push_back(15.0 + j);
    f.t.push_back((15.0 + j) / 140.0);
  }
  f.D.resize(f.t.size() * f.scan.size());
  f.a.resize(f.D.size());
  f.residual.assign(f.D.size(), 0.0);
  for (std::size_t iw = 0; iw < f.scan.size(); ++iw)
    for (std::size_t it = 0; it < f.t.size(); ++it) {
      const double t = f.t[it];
      f.D[f.index(it, iw)] = std::exp(-t) * C[iw];
      f.a[f.index(it, iw)] = wrap_2pi((f.offset_S - f.scan[iw]) * t - psi[iw] + 3.0 * t * t + 0.4);
    }
  return f;
}

}  // namespace

TEST_SUITE("recovery") {
  TEST_CASE("cosine fit of 2 cos(phi0 + 0.7)") {
    const auto ph = phases(16);
    std::vector<double> y;
    for (double p : ph) y.push_back(2.0 * std::cos(p + 0.7) + 5.0);
    const CosineFit f = fit_cosine(y.data(), ph);
    CHECK(f.D == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.a == doctest::Approx(0.7).epsilon(1e-14));
    // the constant is not part of the model
    CHECK(f.residual == doctest::Approx(5.0).epsilon(1e-12));
    const std::vector<double> two = {0.0, kPi};
    CHECK_THROWS_AS(fit_cosine(y.data(), two), DomainError);
  }

  TEST_CASE("cosine fit folds D non-negative") {
    const auto ph = phases(8);
    std::vector<double> y;
    for (double p : ph) y.push_back(-1.5 * std::cos(p + 0.2));
    const CosineFit f = fit_cosine(y.data(), ph);
    CHECK(f.D == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(f.a == doctest::Approx(0.2 + kPi).epsilon(1e-14));
  }

  TEST_CASE("window indices") {
    const std::vector<double> t = {15, 16, 17, 18, 19, 20};
    CHECK(window_indices(t, 16, 19) == std::pair<std::size_t, std::size_t>{1, 4});
    CHECK_THROWS_AS(window_indices(t, 18, 18), DomainError);
    CHECK_THROWS_AS(window_indices(t, 10, 18), DomainError);
    CHECK_THROWS_AS(window_indices(t, 18, 19), DomainError);
  }

  TEST_CASE("separable D gives C^2 and the phase up to a constant") {
    std::vector<double> C, psi;
    for (int i = 0; i < 21; ++i) {
      C.push_back(1.0 / (1.0 + 0.05 * (i - 10) * (i - 10)));
      psi.push_back(std::atan(0.3 * (i - 10)));
    }
    const FitResult f = synthetic_fit(C, psi);
    const RecoveredSpectrum r = recover(f, 15.0, 54.0);
    REQUIRE(r.detuning.size() == C.size());
    // detuning S - w ascending means scan descending
    for (std::size_t j = 0; j < C.size(); ++j) {
      const std::size_t iw = C.size() - 1 - j;
      CHECK(r.detuning[j] == doctest::Approx(f.offset_S - f.scan[iw]));
      CHECK(r.amplitude_sq[j] == doctest::Approx(C[iw] * C[iw]).epsilon(1e-12));
    }
    const double off = r.phase[0] - psi[C.size() - 1];
    for (std::size_t j = 0; j < C.size(); ++j) CHECK(std::abs(wrap_pi(r.phase[j] - psi[C.size() - 1 - j] - off)) < 1e-9);
    CHECK(r.excluded_cells == 0);
  }

  TEST_CASE("pi jumps along w_p are unwrapped") {
    std::vector<double> C(15, 1.0), psi(15, 0.2);
    for (int i = 8; i < 15; ++i) psi[i] += kPi;
    const FitResult f = synthetic_fit(C, psi);
    const RecoveredSpectrum on = recover_phase(f, 15.0, 54.0);
    for (std::size_t j = 1; j < on.phase.size(); ++j) CHECK(std::abs(wrap_pi(on.phase[j] - on.phase[0])) < 1e-9);
    PhaseOptions off;
    off.unwrap_pi = false;
    const RecoveredSpectrum raw = recover_phase(f, 15.0, 54.0, off);
    CHECK(std::abs(std::abs(wrap_pi(raw.phase[0] - raw.phase[14])) - kPi) < 1e-9);
  }

  TEST_CASE("cells below the D floor are excluded") {
    std::vector<double> C(9, 1.0), psi(9, 0.0);
    C[4] = 1e-6;
    const FitResult f = synthetic_fit(C, psi);
    const RecoveredSpectrum r = recover_phase(f, 15.0, 54.0);
    CHECK(r.excluded_cells == f.t.size());
    CHECK(std::isnan(r.phase[4]));
  }

  TEST_CASE("sensing-head prediction: symmetries") {
    ConfigDoc doc = ConfigDoc::parse(default_config_text("single_line"));
    RunConfig rc = build_run_config(doc);
    const ExperimentConfig& c = rc.experiment;
    const auto t = c.time_axis();
    const double wp = c.offset_S - 0.3 * c.support_l;
    const auto a = sensing_head_predict(c, 0.4, wp, t);
    const auto b = sensing_head_predict(c, 0.4 + kPi, wp, t);
    for (std::size_t i = 0; i < t.size(); i += 17) CHECK(b[i] == doctest::Approx(-a[i]).epsilon(1e-12));
    ExperimentConfig c2 = c;
    RationalModel m = c.target.rational();
    for (auto& l : m.lines) l.residue *= 0.5;
    c2.target = TargetModel(m);
    const auto h = sensing_head_predict(c2, 0.4, wp, t);
    for (std::size_t i = 0; i < t.size(); i += 17) CHECK(a[i] == doctest::Approx(4.0 * h[i]).epsilon(1e-12));
    const SensingHeadTerms s = sensing_head_terms(c, c.offset_S);
    CHECK(s.x == 0.0);
    CHECK(s.tau1 == doctest::Approx(2.0 / 30.0).epsilon(1e-12));
    CHECK(s.C == doctest::Approx(0.95).epsilon(1e-12));
  }

  TEST_CASE("Doppler recovery needs constant-velocity data") {
    ConfigDoc doc = ConfigDoc::parse(default_config_text("single_line"));
    doc.set("scan", "count", ConfigValue{std::int64_t{3}, 0});
    doc.set("scan", "phases", ConfigValue{std::int64_t{8}, 0});
    const RunConfig rc = build_run_config(doc);
    const IntensityGrid h = detector_intensity(rc.experiment);
    CHECK_THROWS_AS(doppler_recover(h, 15, 110), ContractViolation);
    const IntensityGrid d = detector_intensity(doppler_experiment(rc, 1.0));
    const RecoveredSpectrum r = doppler_recover(d, 15, 110);
    CHECK(*std::min_element(r.amplitude_sq.begin(), r.amplitude_sq.end()) == 0.0);
    CHECK(*std::max_element(r.amplitude_sq.begin(), r.amplitude_sq.end()) == 1.0);
    CHECK(r.method == "doppler");
  }
}
