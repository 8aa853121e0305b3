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

#include "phasenrs/filters.hpp"

#include <algorithm>
#include <cmath>

namespace pnrs {

std::size_t PhiComponents::f_index(int f) const {
  for (std::size_t i = 0; i < f_values.size(); ++i)
    if (f_values[i] == f) return i;
  throw DomainError("phi0 component f = " + std::to_string(f) + " not present");
}

PhiComponents phi0_fourier(const IntensityGrid& g, int f_max) {
  const std::size_t m = g.nphi();
  if (f_max < 0 || m < static_cast<std::size_t>(2 * f_max + 2)) throw DomainError("phi0 axis too short for requested f_max");
  for (std::size_t k = 0; k < m; ++k) {
    const double want = g.phi0[0] + kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    if (std::abs(g.phi0[k] - want) > 1e-9) throw DomainError("phi0 axis is not uniform over [0, 2pi)");
  }
  PhiComponents pc;
  pc.nt = g.nt();
  pc.nscan = g.nscan();
  for (int f = -f_max; f <= f_max; ++f) pc.f_values.push_back(f);
  pc.data.assign(pc.f_values.size() * pc.nscan * pc.nt, cplx{});
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t fi = 0; fi < pc.f_values.size(); ++fi) {
    const int f = pc.f_values[fi];
    for (std::size_t iw = 0; iw < pc.nscan; ++iw) {
      cplx* dst = &pc.data[(fi * pc.nscan + iw) * pc.nt];
      for (std::size_t k = 0; k < m; ++k) {
        const cplx e = std::polar(inv, f * g.phi0[k]);
        const double* src = &g.values[g.index(0, k, iw)];
        for (std::size_t it = 0; it < pc.nt; ++it) dst[it] += e * src[it];
      }
    }
  }
  return pc;
}

SeparationReport check_separation(double S, double l) {
  SeparationReport r;
  r.ok = (l == 0.0) ? S > 0 : S > 5.0 * l;
  const double wp = S - l;
  r.margin = std::abs(3.0 * wp - 2.0 * S) - 2.0 * l;
  return r;
}

const char* mask_kind_name(MaskKind k) {
  switch (k) {
    case MaskKind::rect: return "rect";
    case MaskKind::tukey: return "tukey";
    case MaskKind::erf: return "erf";
  }
  return "?";
}

MaskKind mask_kind_from_name(const std::string& s) {
  if (s == "rect") return MaskKind::rect;
  if (s == "tukey") return MaskKind::tukey;
  if (s == "erf") return MaskKind::erf;
  throw DomainError("unknown mask kind '" + s + "'");
}

void FilterParams::validate() const {
  if (!(band_halfwidth > 0)) throw DomainError("band half-width must be > 0");
  if (!(edge_fraction > 0 && edge_fraction <= 1)) throw DomainError("edge fraction must lie in (0, 1]");
}

namespace {

double mask_value(double f, double half, const FilterParams& p) {
  const double a = std::abs(f);
  const double edge = p.edge_fraction * p.band_halfwidth;
  switch (p.mask) {
    case MaskKind::rect: return a <= half ? 1.0 : 0.0;
    case MaskKind::tukey: {
      const double flat = std::max(0.0, half - edge);
      if (a <= flat) return 1.0;
      if (a >= half) return 0.0;
      return 0.5 * (1.0 + std::cos(kPi * (a - flat) / (half - flat)));
    }
    case MaskKind::erf: return 0.5 * (std::erf((f + half) / edge) - std::erf((f - half) / edge));
  }
  return 0.0;
}

}  // namespace

std::vector<cplx> band_filter(const std::vector<cplx>& sig, double dt, const std::vector<double>& centers,
                              const FilterParams& p) {
  p.validate();
  const std::size_t L = sig.size();
  std::vector<cplx> out(L, cplx{});
  if (L == 0) return out;
  for (double c : centers)
    if (std::abs(c) >= kPi / dt) throw DomainError("band center above the Nyquist frequency of the time grid");
  std::vector<std::pair<double, double>> iv;
  for (double c : centers) iv.emplace_back(c - p.band_halfwidth, c + p.band_halfwidth);
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& b : iv) {
    if (!merged.empty() && b.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, b.second);
    else
      merged.push_back(b);
  }
  const std::size_t n2 = 2 * L;
  const Fft& fwd = fft_plan(n2, -1);
  const Fft& bwd = fft_plan(n2, +1);
  FftBuffer buf(n2);
  for (const auto& [lo, hi] : merged) {
    const double c = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < L; ++j) {
      const cplx d = sig[j] * std::polar(1.0, c * dt * static_cast<double>(j));
      buf[j] = d;
      buf[n2 - 1 - j] = d;
    }
    fwd.execute(buf.data());
    for (std::size_t k = 0; k < n2; ++k) {
      const long kk = (k < L) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n2);
      const double f = kTwoPi * static_cast<double>(kk) / (static_cast<double>(n2) * dt);
      buf[k] *= mask_value(f, half, p) / static_cast<double>(n2);
    }
    bwd.execute(buf.data());
    for (std::size_t j = 0; j < L; ++j) out[j] += buf[j] * std::polar(1.0, -c * dt * static_cast<double>(j));
  }
  return out;
}

std::vector<cplx> t_filter(const std::vector<cplx>& sig, double dt, double center, const FilterParams& p) {
  return band_filter(sig, dt, {center}, p);
}

cplx FilteredSignal::resynth(std::size_t it, std::size_t ip, std::size_t iw) const {
  const cplx e = std::polar(1.0, -phi0[ip]);
  const std::size_t k = iw * nt() + it;
  return plus[k] * e + minus[k] * std::conj(e);
}

double FilteredSignal::imag_residue() const {
  double im = 0.0, re = 0.0;
  for (std::size_t iw = 0; iw < scan.size(); ++iw)
    for (std::size_t ip = 0; ip < phi0.size(); ++ip)
      for (std::size_t it = 0; it < nt(); ++it) {
        const cplx v = resynth(it, ip, iw);
        im = std::max(im, std::abs(v.imag()));
        re = std::max(re, std::abs(v.real()));
      }
  return re > 0 ? im / re : im;
}

namespace {

FilteredSignal filter_shell(const IntensityGrid& g, const FilterParams& p) {
  if (g.meta.motion != MotionKind::harmonic && g.meta.motion != MotionKind::pssl)
    throw ContractViolation("combined filter needs a phi0-resolved grid (harmonic or PSSL motion)");
  if (g.nt() < 2) throw DomainError("time axis too short to filter");
  FilteredSignal fs;
  fs.t = g.t;
  fs.t_ns = g.t_ns;
  fs.phi0 = g.phi0;
  fs.scan = g.scan;
  fs.meta = g.meta;
  fs.separation_ok = check_separation(p.S, p.l).ok;
  fs.plus.assign(g.nt() * g.nscan(), cplx{});
  fs.minus.assign(g.nt() * g.nscan(), cplx{});
  return fs;
}

void filter_scan(const PhiComponents& pc, const FilterParams& p, double dt, std::size_t iw, FilteredSignal& fs) {
  const double x = p.S - fs.scan[iw];
  const std::vector<double> centers = (std::abs(x) > 1e-12) ? std::vector<double>{x, -x} : std::vector<double>{0.0};
  const std::size_t nt = fs.nt();
  for (int f : {1, -1}) {
    const cplx* src = pc.series(f, iw);
    const std::vector<cplx> s(src, src + nt);
    const auto r = band_filter(s, dt, centers, p);
    std::copy(r.begin(), r.end(), (f == 1 ? fs.plus : fs.minus).begin() + static_cast<long>(iw * nt));
  }
}

}  // namespace

FilteredSignal combined_filter_serial(const IntensityGrid& g, const FilterParams& p) {
  FilteredSignal fs = filter_shell(g, p);
  const PhiComponents pc = phi0_fourier(g, 1);
  const double dt = g.t[1] - g.t[0];
  for (std::size_t iw = 0; iw < g.nscan(); ++iw) filter_scan(pc, p, dt, iw, fs);
  return fs;
}

FilteredSignal combined_filter(const IntensityGrid& g, const FilterParams& p) {
  FilteredSignal fs = filter_shell(g, p);
  const PhiComponents pc = phi0_fourier(g, 1);
  const double dt = g.t[1] - g.t[0];
  fft_plan(2 * g.nt(), -1);
  fft_plan(2 * g.nt(), +1);
  const long ns = static_cast<long>(g.nscan());
#pragma omp parallel for schedule(dynamic, 4)
  for (long iw = 0; iw < ns; ++iw) filter_scan(pc, p, dt, static_cast<std::size_t>(iw), fs);
  return fs;
}

}  // namespace pnrs
