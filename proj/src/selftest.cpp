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

#include "phasenrs/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "phasenrs/bessel.hpp"
#include "phasenrs/config.hpp"
#include "phasenrs/filters.hpp"
#include "phasenrs/pipeline.hpp"
#include "phasenrs/recovery.hpp"

namespace pnrs {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CheckResult bessel_sum_rule() {
  double worst = 0.0;
  for (double x : {0.5, first_j0_zero(), 7.3, 40.0, 250.0}) {
    const int top = static_cast<int>(x) + 60;
    long double s = 0.0L;
    for (int n = -top; n <= top; ++n) s += static_cast<long double>(bessel_j(n, x)) * bessel_j(n, x);
    worst = std::max(worst, std::abs(static_cast<double>(s) - 1.0));
  }
  return {"bessel_sum_rule", worst < 1e-13, fmt("max |sum J_n^2 - 1| = %.3g", worst)};
}

CheckResult bessel_reference() {
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n)
    for (double x : {0.1, 1.0, 2.4, 5.5, 11.9, 12.1, 30.0, 77.7}) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      worst = std::max(worst, std::abs(bessel_j(n, x) - ref));
    }
  return {"bessel_vs_std", worst < 1e-12, fmt("max |J - std::cyl_bessel_j| = %.3g", worst)};
}

double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

// Two poles with equal residue: the spectrum falls off as 1/w^2.
CheckResult fft_pole_pair() {
  const FrequencyGrid g(0.0, 0.05, 1u << 17);
  const double w1 = -3.0, g1 = 1.0, w2 = 4.0, g2 = 2.5;
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  for (std::size_t m = 0; m < g.count; ++m) {
    const double w = g.at(m);
    s.values[m] = 1.0 / cplx(w - w1, g1 / 2) - 1.0 / cplx(w - w2, g2 / 2);
  }
  const TimeSignal t = freq_to_time(s);
  std::vector<cplx> got, ref;
  for (std::size_t q = 0; q < t.grid.count; ++q) {
    const double tt = t.grid.at(q);
    if (tt < 0.5 || tt > 40.0) continue;
    got.push_back(t.values[q]);
    ref.push_back(cplx(0, -1) * (std::polar(std::exp(-g1 * tt / 2), -w1 * tt) - std::polar(std::exp(-g2 * tt / 2), -w2 * tt)));
  }
  const double e = rel_l2(got, ref);
  return {"fft_pole_pair", e < 1e-6, fmt("relative L2 = %.3g", e)};
}

// Analyzer echo: FFT of R^_S minus its leading i b / (w + i/2) tail against the
// closed-form R_S(t) minus b exp(-t/2).
CheckResult fft_analyzer() {
  const AnalyzerSpec a{3.0, 1.0, 0.0};
  const FrequencyGrid g(0.0, 0.05, 1u << 17);
  ComplexSpectrum s = analyzer_scattering_freq(g, a);
  for (std::size_t m = 0; m < g.count; ++m) s.values[m] -= cplx(0, a.b) / cplx(g.at(m), 0.5);
  const TimeSignal t = freq_to_time(s);
  std::vector<cplx> got, ref;
  for (std::size_t q = 0; q < t.grid.count; ++q) {
    const double tt = t.grid.at(q);
    if (tt < 0.5 || tt > 40.0) continue;
    got.push_back(t.values[q]);
    ref.push_back(analyzer_scattering_time(tt, a) - a.b * std::exp(-tt / 2));
  }
  const double e = rel_l2(got, ref);
  return {"fft_analyzer_response", e < 1e-6, fmt("relative L2 = %.3g", e)};
}

CheckResult config_round_trip() {
  for (const auto& name : preset_names()) {
    const ConfigDoc a = ConfigDoc::parse(default_config_text(name));
    const ConfigDoc b = ConfigDoc::parse(a.serialize());
    if (!(a == b) || a.serialize() != b.serialize()) return {"config_round_trip", false, "preset " + name + " differs"};
  }
  return {"config_round_trip", true, "parse/serialize/parse identity for all presets"};
}

ExperimentConfig small_experiment(double b) {
  RunConfig rc = build_run_config(ConfigDoc::parse(default_config_text("single_line")));
  ExperimentConfig c = rc.experiment;
  c.analyzer.b = b;
  const double S = c.offset_S, l = c.support_l;
  c.scan = {S - 0.5 * l, S - 0.1 * l, S + 0.3 * l};
  c.t_max_ns = 120.0;
  return c;
}

CheckResult it_elimination() {
  const IntensityGrid g = detector_intensity(small_experiment(0.0));
  const PhiComponents pc = phi0_fourier(g, 4);
  double dc = 0.0, worst = 0.0;
  for (std::size_t iw = 0; iw < g.nscan(); ++iw)
    for (std::size_t it = 0; it < g.nt(); ++it) {
      dc = std::max(dc, std::abs(pc.at(0, it, iw)));
      for (int f : pc.f_values)
        if (f != 0) worst = std::max(worst, std::abs(pc.at(f, it, iw)));
    }
  const double r = worst / dc;
  return {"it_elimination", r < 1e-12, fmt("max |I^f|/|I^0| for f != 0 at b = 0: %.3g", r)};
}

CheckResult sensing_head(const IntensityGrid& g) {
  const ExperimentConfig& c = g.meta;
  FilterParams fp;
  fp.S = c.offset_S;
  fp.l = c.support_l;
  fp.band_halfwidth = c.support_l;
  const FilteredSignal fs = combined_filter(g, fp);
  // Late window: the target ringing must have decayed for the expansion to hold.
  const auto [i1, i2] = window_indices(g.t_ns, 40.0, 110.0);
  const std::vector<double> tw(g.t.begin() + static_cast<long>(i1), g.t.begin() + static_cast<long>(i2) + 1);
  double worst = 0.0;
  for (std::size_t iw = 0; iw < g.nscan(); ++iw) {
    const auto pred = sensing_head_first(c, g.scan[iw], tw);
    std::vector<cplx> got(tw.size());
    for (std::size_t k = 0; k < tw.size(); ++k) got[k] = fs.plus[iw * fs.nt() + i1 + k];
    worst = std::max(worst, rel_l2(got, pred));
  }
  return {"sensing_head_equivalence", worst < 0.05, fmt("max relative L2 over [40, 110] ns = %.3g", worst)};
}

}  // namespace

CheckResult parseval_check(const IntensityGrid& g) {
  CheckResult r{"parseval_band_limit", true, ""};
  const std::size_t m = g.nphi();
  if (m < 4) {
    r.detail = "fewer than 4 phases; nothing to test";
    return r;
  }
  const int half = static_cast<int>(m / 2);
  int fmax = half - 1;
  if (g.meta.motion == MotionKind::pssl) {
    fmax = 1;
  } else if (g.meta.motion == MotionKind::harmonic) {
    // Harmonic f carries sum_a J_a J_{a+f}; past the first f where that sum
    // drops below 1e-7 the energy fraction is far below the threshold.
    const double p = g.meta.p;
    const int nmax = sideband_max_order(p, 1e-16) + 4;
    int band = 1;
    for (;; ++band) {
      double s = 0.0;
      for (int a = -nmax; a <= nmax; ++a) s += std::abs(bessel_j(a, p) * bessel_j(a + band, p));
      if (s < 1e-7) break;
    }
    if (band > half) {
      r.detail = fmt("motion bandwidth |f| < %.0f does not fit below the phase Nyquist limit; nothing to test", band);
      return r;
    }
    fmax = band - 1;
  }
  std::vector<cplx> tw(m * m);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t k = 0; k < m; ++k) tw[f * m + k] = std::polar(1.0, kTwoPi * static_cast<double>(f * k % m) / static_cast<double>(m));
  double emax = 0.0;
  for (double v : g.values) emax = std::max(emax, v * v);
  double worst = 0.0;
  std::vector<double> y(m);
  for (std::size_t iw = 0; iw < g.nscan(); ++iw)
    for (std::size_t it = 0; it < g.nt(); ++it) {
      double total = 0.0, out = 0.0;
      for (std::size_t k = 0; k < m; ++k) y[k] = g.at(it, k, iw);
      for (std::size_t f = 0; f < m; ++f) {
        cplx c{};
        for (std::size_t k = 0; k < m; ++k) c += y[k] * tw[f * m + k];
        const double e = std::norm(c);
        total += e;
        const int fs = static_cast<int>(f) <= half ? static_cast<int>(f) : static_cast<int>(f) - static_cast<int>(m);
        if (std::abs(fs) > fmax) out += e;
      }
      if (total > 1e-24 * emax * static_cast<double>(m * m)) worst = std::max(worst, out / total);
    }
  r.pass = worst < 1e-10;
  r.detail = fmt("max out-of-band energy fraction above |f| = %.0f: %.3g", fmax, worst);
  return r;
}

std::vector<CheckResult> run_selftest(const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> out;
  auto run = [&](const std::function<CheckResult()>& fn, const char* name) {
    CheckResult c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c = {name, false, std::string("threw: ") + e.what()};
    }
    out.push_back(c);
    if (on_result) on_result(c);
  };
  run(bessel_sum_rule, "bessel_sum_rule");
  run(bessel_reference, "bessel_vs_std");
  run(fft_pole_pair, "fft_pole_pair");
  run(fft_analyzer, "fft_analyzer_response");
  run(config_round_trip, "config_round_trip");
  run(it_elimination, "it_elimination");
  IntensityGrid g;
  run(
      [&] {
        g = detector_intensity(small_experiment(0.5));
        return sensing_head(g);
      },
      "sensing_head_equivalence");
  run(
      [&] {
        if (g.values.empty()) throw DomainError("no grid from the previous check");
        return parseval_check(g);
      },
      "parseval_band_limit");
  run(
      [&] {
        if (g.values.empty()) throw DomainError("no grid from the previous check");
        IntensityGrid bad = g;
        bad.at(bad.nt() / 2, 3, 1) *= 1.01;
        CheckResult c = parseval_check(bad);
        return CheckResult{"parseval_detects_corruption", !c.pass, c.detail};
      },
      "parseval_detects_corruption");
  return out;
}

}  // namespace pnrs
