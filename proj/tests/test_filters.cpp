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
#include "phasenrs/bessel.hpp"
#include "phasenrs/pipeline.hpp"

using namespace pnrs;

namespace {

RunConfig small_config(int count = 5) {
  ConfigDoc doc = ConfigDoc::parse(default_config_text("single_line"));
  doc.set("scan", "count", ConfigValue{std::int64_t{count}, 0});
  doc.set("scan", "phases", ConfigValue{std::int64_t{16}, 0});
  doc.set("window", "t_max_ns", ConfigValue{100.0, 0});
  doc.set("window", "t2_ns", ConfigValue{100.0, 0});
  return build_run_config(doc);
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("filters") {
  TEST_CASE("phi0 harmonics of a cosine and Hermitian symmetry") {
    const RunConfig rc = small_config(2);
    IntensityGrid g = detector_intensity(rc.experiment);
    for (std::size_t iw = 0; iw < g.nscan(); ++iw)
      for (std::size_t ip = 0; ip < g.nphi(); ++ip)
        for (std::size_t it = 0; it < g.nt(); ++it) g.at(it, ip, iw) = 3.0 + 2.0 * std::cos(g.phi0[ip] + 0.7);
    const PhiComponents pc = phi0_fourier(g, 3);
    CHECK(std::abs(pc.at(0, 5, 1) - cplx(3.0)) < 1e-14);
    CHECK(std::abs(pc.at(1, 5, 1) - std::polar(1.0, -0.7)) < 1e-14);
    CHECK(std::abs(pc.at(2, 5, 1)) < 1e-14);
    const PhiComponents real = phi0_fourier(detector_intensity(rc.experiment), 3);
    for (int f = 1; f <= 3; ++f)
      for (std::size_t it = 0; it < g.nt(); it += 11) CHECK(std::abs(real.at(-f, it, 0) - std::conj(real.at(f, it, 0))) < 1e-15);
    CHECK_THROWS_AS(phi0_fourier(g, 8), DomainError);
  }

  TEST_CASE("phi0 DFT of alpha_n alpha_m* has a single component") {
    for (double p : {0.5, first_j0_zero()}) {
      const int m_phases = 32;
      for (int n = -4; n <= 4; ++n)
        for (int m = -4; m <= 4; ++m) {
          std::vector<cplx> comp(m_phases, cplx{});
          for (int k = 0; k < m_phases; ++k) {
            const double phi = kTwoPi * k / m_phases;
            const SidebandExpansion e = sideband_coefficients(p, phi, 1e-14);
            const cplx v = e.alpha(n) * std::conj(e.alpha(m));
            for (int f = 0; f < m_phases; ++f) comp[f] += v * std::polar(1.0 / m_phases, f * phi);
          }
          const int want = ((m - n) % m_phases + m_phases) % m_phases;
          for (int f = 0; f < m_phases; ++f) {
            const double expect = f == want ? bessel_j(n, p) * bessel_j(m, p) : 0.0;
            CHECK(std::abs(comp[f] - expect) < 1e-10);
          }
        }
    }
  }

  TEST_CASE("band filter passes in-band tones and rejects the rest") {
    const std::size_t n = 700;
    const double dt = 0.25 / 140.047;
    FilterParams p;
    p.S = 600;
    p.l = 100;
    p.band_halfwidth = 100;
    std::vector<cplx> in(n), out(n), mixed(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = j * dt;
      in[j] = std::polar(1.0, -250.0 * t);
      out[j] = std::polar(1.0, -700.0 * t);
      mixed[j] = in[j] + out[j];
    }
    for (MaskKind k : {MaskKind::erf, MaskKind::rect, MaskKind::tukey}) {
      p.mask = k;
      const auto kept = band_filter(mixed, dt, {250.0}, p);
      double err = 0.0;
      for (std::size_t j = 50; j < n - 50; ++j) err = std::max(err, std::abs(kept[j] - in[j]));
      CHECK(err < 0.02);
      const auto dropped = band_filter(out, dt, {250.0, -250.0}, p);
      double leak = 0.0;
      for (std::size_t j = 50; j < n - 50; ++j) leak = std::max(leak, std::abs(dropped[j]));
      CHECK(leak < 0.02);
    }
    CHECK(t_filter(mixed, dt, 250.0, p) == band_filter(mixed, dt, {250.0}, p));
  }

  TEST_CASE("overlapping bands are merged, not double counted") {
    const std::size_t n = 600;
    const double dt = 0.25 / 140.047;
    FilterParams p;
    p.S = 600;
    p.l = 100;
    p.band_halfwidth = 100;
    std::vector<cplx> s(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = std::polar(1.0, -10.0 * j * dt);
    const auto a = band_filter(s, dt, {20.0, -20.0}, p);
    double err = 0.0;
    for (std::size_t j = 40; j < n - 40; ++j) err = std::max(err, std::abs(a[j] - s[j]));
    CHECK(err < 0.01);
  }

  TEST_CASE("filter order: phi0 DFT then t filter equals the reverse") {
    const RunConfig rc = small_config(3);
    const IntensityGrid g = detector_intensity(rc.experiment);
    const FilteredSignal fs = combined_filter(g, rc.filter);
    const double dt = g.t[1] - g.t[0];
    for (std::size_t iw = 0; iw < g.nscan(); ++iw) {
      const double x = rc.filter.S - g.scan[iw];
      std::vector<cplx> acc(g.nt(), cplx{});
      for (std::size_t ip = 0; ip < g.nphi(); ++ip) {
        std::vector<cplx> slice(g.nt());
        for (std::size_t it = 0; it < g.nt(); ++it) slice[it] = g.at(it, ip, iw);
        const auto f = band_filter(slice, dt, {x, -x}, rc.filter);
        const cplx e = std::polar(1.0 / g.nphi(), g.phi0[ip]);
        for (std::size_t it = 0; it < g.nt(); ++it) acc[it] += e * f[it];
      }
      const std::vector<cplx> plus(fs.plus.begin() + iw * g.nt(), fs.plus.begin() + (iw + 1) * g.nt());
      double scale = 0.0;
      for (auto v : plus) scale = std::max(scale, std::abs(v));
      CHECK(max_abs_diff(acc, plus) < 1e-10 * scale);
    }
  }

  TEST_CASE("phi0-independent content is removed") {
    const RunConfig rc = small_config(3);
    const IntensityGrid g = detector_intensity(rc.experiment);
    IntensityGrid h = g;
    for (std::size_t iw = 0; iw < g.nscan(); ++iw)
      for (std::size_t ip = 0; ip < g.nphi(); ++ip)
        for (std::size_t it = 0; it < g.nt(); ++it) h.at(it, ip, iw) += 50.0 + 10.0 * std::exp(-g.t[it]);
    const FilteredSignal a = combined_filter(g, rc.filter), b = combined_filter(h, rc.filter);
    double scale = 0.0;
    for (auto v : a.plus) scale = std::max(scale, std::abs(v));
    CHECK(max_abs_diff(a.plus, b.plus) < 1e-11 * 60.0 / scale * scale + 1e-12);
    CHECK(a.imag_residue() < 1e-12);
  }

  TEST_CASE("OpenMP and serial filters agree bit for bit") {
    const RunConfig rc = small_config(4);
    const IntensityGrid g = detector_intensity(rc.experiment);
    const FilteredSignal a = combined_filter(g, rc.filter), b = combined_filter_serial(g, rc.filter);
    CHECK(a.plus == b.plus);
    CHECK(a.minus == b.minus);
  }

  TEST_CASE("separation condition") {
    CHECK(check_separation(6.0, 1.0).ok);
    CHECK(!check_separation(5.0, 1.0).ok);
    CHECK(check_separation(6.0, 1.0).margin == doctest::Approx(1.0));
    CHECK(check_separation(1.0, 0.0).ok);
  }

  TEST_CASE("combined filter refuses grids without phi0") {
    RunConfig rc = small_config(3);
    ExperimentConfig c = doppler_experiment(rc, 1.0);
    const IntensityGrid g = detector_intensity(c);
    CHECK_THROWS_AS(combined_filter(g, rc.filter), ContractViolation);
    FilterParams bad = rc.filter;
    bad.band_halfwidth = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK(mask_kind_from_name(mask_kind_name(MaskKind::tukey)) == MaskKind::tukey);
    CHECK_THROWS_AS(mask_kind_from_name("hann"), DomainError);
  }
}
