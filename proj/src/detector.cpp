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

#include "phasenrs/detector.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "phasenrs/bessel.hpp"

namespace pnrs {

const char* motion_kind_name(MotionKind k) {
  switch (k) {
    case MotionKind::harmonic: return "harmonic";
    case MotionKind::pssl: return "pssl";
    case MotionKind::constant_velocity: return "constant_velocity";
    case MotionKind::stationary: return "stationary";
  }
  return "?";
}

MotionKind motion_kind_from_name(const std::string& s) {
  if (s == "harmonic") return MotionKind::harmonic;
  if (s == "pssl") return MotionKind::pssl;
  if (s == "constant_velocity") return MotionKind::constant_velocity;
  if (s == "stationary") return MotionKind::stationary;
  throw DomainError("unknown motion kind '" + s + "'");
}

void ExperimentConfig::validate() const {
  nuclide.validate();
  analyzer.validate();
  const bool phased = motion == MotionKind::harmonic || motion == MotionKind::pssl;
  if (phased && (phases < 8 || phases % 2)) throw DomainError("phase count M must be even and >= 8");
  if (scan.empty()) throw DomainError("scan axis is empty");
  if (phased)
    for (double w : scan)
      if (!(w > 0)) throw DomainError("oscillation frequencies must be > 0");
  if (!(t_min_ns < t_max_ns)) throw DomainError("t_min must be < t_max");
  if (!(t_min_ns >= 0)) throw DomainError("t_min must be >= 0");
  if (!(dt_ns > 0)) throw DomainError("dt must be > 0");
  if (fft_oversample < 1) throw DomainError("fft_oversample must be >= 1");
  if (!is_power_of_two(fft_size) || fft_size < 1024) throw DomainError("fft_size must be a power of two >= 1024");
  if (motion == MotionKind::harmonic && !(p >= 0)) throw DomainError("modulation amplitude p must be >= 0");
}

std::vector<double> ExperimentConfig::phase_axis() const {
  if (motion != MotionKind::harmonic && motion != MotionKind::pssl) return {0.0};
  std::vector<double> ph(static_cast<std::size_t>(phases));
  for (int k = 0; k < phases; ++k) ph[static_cast<std::size_t>(k)] = kTwoPi * k / phases;
  return ph;
}

long ExperimentConfig::first_sample() const { return std::lround(t_min_ns / dt_ns); }

std::size_t ExperimentConfig::time_count() const {
  return static_cast<std::size_t>(std::lround(t_max_ns / dt_ns) - first_sample() + 1);
}

std::vector<double> ExperimentConfig::time_axis_ns() const {
  std::vector<double> t(time_count());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = static_cast<double>(first_sample() + static_cast<long>(j)) * dt_ns;
  return t;
}

std::vector<double> ExperimentConfig::time_axis() const {
  const double unit = ns_per_time_unit(nuclide);
  auto t = time_axis_ns();
  for (auto& v : t) v /= unit;
  return t;
}

void IntensityGrid::check_consistent() const {
  if (t.size() != t_ns.size()) throw DataMismatch("time axes differ in length");
  if (values.size() != nt() * nphi() * nscan()) throw DataMismatch("value count does not match axis lengths");
  if (meta.time_count() != nt()) throw DataMismatch("time axis does not match metadata window");
  if (meta.phase_axis().size() != nphi()) throw DataMismatch("phase axis does not match metadata");
  if (meta.scan.size() != nscan()) throw DataMismatch("scan axis does not match metadata");
  const auto tn = meta.time_axis_ns();
  for (std::size_t i = 0; i < nt(); ++i)
    if (std::abs(tn[i] - t_ns[i]) > 1e-9 * std::max(1.0, std::abs(tn[i]))) throw DataMismatch("time axis values do not match metadata");
  for (std::size_t i = 0; i < nscan(); ++i)
    if (meta.scan[i] != scan[i]) throw DataMismatch("scan axis values do not match metadata");
  for (double v : values)
    if (!std::isfinite(v) || v < 0) throw DataMismatch("intensity values must be finite and non-negative");
}

FieldEngine::FieldEngine(const ExperimentConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const double dt = cfg_.dt_ns / ns_per_time_unit(cfg_.nuclide);
  const double omega = cfg_.fft_oversample * kTwoPi / dt;
  const std::size_t n = cfg_.fft_size;
  grid_ = FrequencyGrid(0.0, omega / static_cast<double>(n), n);
  stride_ = static_cast<std::size_t>(cfg_.fft_oversample);
  first_ = cfg_.first_sample();
  nwin_ = cfg_.time_count();
  if (static_cast<std::size_t>(first_ + static_cast<long>(nwin_)) * stride_ >= n / 2)
    throw DomainError("FFT period too short for the time window; raise fft_size");
  if (cfg_.motion == MotionKind::harmonic) nmax_ = sideband_max_order(cfg_.p, cfg_.sideband_tol);

  // The target support must sit well inside the grid. Analyzer lines past
  // 0.45 Omega are far from it, where R^_T is flat over the analyzer width;
  // those use the far-line form in sideband_field.
  far_limit_ = 0.45 * omega;
  const double reach = std::abs(cfg_.target.weighted_center()) + cfg_.target.outermost_offset() +
                       50.0 * cfg_.target.narrowest_width() + 50.0 * cfg_.analyzer.linewidth +
                       std::abs(cfg_.analyzer.offset);
  if (2.0 * reach > far_limit_)
    throw DomainError("FFT frequency span too small for the target support; lower dt or raise fft_oversample");

  const cplx c0 = cfg_.target.asymptote();
  rt_minus_c0_.resize(n);
  for (std::size_t m = 0; m < n; ++m) rt_minus_c0_[m] = cfg_.target.freq(grid_.at(m)) - c0;
  TimeGrid tg{static_cast<double>(first_) * dt, dt, nwin_};
  rt_win_ = target_response_time(cfg_.target, tg).values;
  twin_.resize(nwin_);
  for (std::size_t j = 0; j < nwin_; ++j) twin_[j] = tg.at(j);
}

void FieldEngine::sideband_field(double x, cplx* out, FftBuffer& buf) const {
  const std::size_t n = grid_.count;
  const AnalyzerSpec& a = cfg_.analyzer;
  if (std::abs(x) + 50.0 * a.linewidth + std::abs(a.offset) > far_limit_) {
    const cplx rx = cfg_.target.freq(x);
    for (std::size_t j = 0; j < nwin_; ++j) out[j] = rx * analyzer_scattering_time(twin_[j], a) * std::polar(1.0, -x * twin_[j]);
    return;
  }
  for (std::size_t m = 0; m < n; ++m) {
    const cplx v = rt_minus_c0_[m] * analyzer_scattering(grid_.at(m) - x, a);
    buf[m] = v;
  }
  fft_plan(n, -1).execute(buf.data());
  // Sample q sits at t = q * dt / k; w_m = (m - N/2) dw contributes (-1)^q.
  const double scale = grid_.spacing / kTwoPi;
  const cplx c0 = cfg_.target.asymptote();
  for (std::size_t j = 0; j < nwin_; ++j) {
    const std::size_t q = static_cast<std::size_t>(first_ + static_cast<long>(j)) * stride_;
    out[j] = ((q % 2) ? -scale : scale) * buf[q];
    if (c0 != cplx{}) out[j] += c0 * analyzer_scattering_time(twin_[j], a) * std::polar(1.0, -x * twin_[j]);
  }
}

void FieldEngine::analyzer_lines(double scan_value, double phi0, std::vector<double>& x, std::vector<cplx>& w) const {
  x.clear();
  w.clear();
  const double S = cfg_.offset_S;
  switch (cfg_.motion) {
    case MotionKind::harmonic: {
      const double common = -cfg_.p * std::sin(phi0);
      for (int n = -nmax_; n <= nmax_; ++n) {
        x.push_back(S - n * scan_value);
        w.push_back(bessel_j(n, cfg_.p) * std::polar(1.0, n * phi0 + common));
      }
      break;
    }
    case MotionKind::pssl:
      x.push_back(S - scan_value);
      w.push_back(std::polar(1.0, phi0));
      break;
    case MotionKind::constant_velocity:
      x.push_back(S - scan_value);
      w.push_back(1.0);
      break;
    case MotionKind::stationary:
      x.push_back(S);
      w.push_back(1.0);
      break;
  }
}

ComplexSpectrum detector_field_freq(const ExperimentConfig& cfg, double phi0, double scan_value, const FrequencyGrid& g) {
  const FieldEngine eng(cfg);
  std::vector<double> x;
  std::vector<cplx> w;
  eng.analyzer_lines(scan_value, phi0, x, w);
  for (double xi : x) g.require_covers(xi - 50.0 * cfg.analyzer.linewidth, xi + 50.0 * cfg.analyzer.linewidth, "detector_field_freq");
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  for (std::size_t m = 0; m < g.count; ++m) {
    const double om = g.at(m);
    cplx osc = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) osc -= w[i] * analyzer_scattering(om - x[i], cfg.analyzer);
    s.values[m] = cfg.target.freq(om) * osc;
  }
  return s;
}

namespace {

struct CellWork {
  explicit CellWork(std::size_t n, std::size_t nwin) : buf(n), win(nwin) {}
  FftBuffer buf;
  std::vector<cplx> win;
  std::vector<std::vector<cplx>> fields;
  std::vector<double> x;
  std::vector<cplx> w;
};

// Fills values for one scan index; identical arithmetic in serial and parallel paths.
void simulate_scan_cell(const FieldEngine& eng, const std::vector<double>& phases, std::size_t iw, CellWork& wk,
                        IntensityGrid& out) {
  const auto& cfg = eng.config();
  const std::size_t nt = eng.window_count();
  const double sv = cfg.scan[iw];
  eng.analyzer_lines(sv, phases[0], wk.x, wk.w);
  const std::vector<double> xs = wk.x;
  wk.fields.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    wk.fields[i].resize(nt);
    eng.sideband_field(xs[i], wk.fields[i].data(), wk.buf);
  }
  const auto& rt = eng.target_window();
  for (std::size_t ip = 0; ip < phases.size(); ++ip) {
    eng.analyzer_lines(sv, phases[ip], wk.x, wk.w);
    for (std::size_t it = 0; it < nt; ++it) wk.win[it] = rt[it];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const cplx a = wk.w[i];
      const cplx* f = wk.fields[i].data();
      for (std::size_t it = 0; it < nt; ++it) wk.win[it] -= a * f[it];
    }
    double* dst = &out.values[out.index(0, ip, iw)];
    for (std::size_t it = 0; it < nt; ++it) dst[it] = std::norm(wk.win[it]);
  }
}

IntensityGrid empty_grid(const ExperimentConfig& cfg) {
  IntensityGrid g;
  g.meta = cfg;
  g.t = cfg.time_axis();
  g.t_ns = cfg.time_axis_ns();
  g.phi0 = cfg.phase_axis();
  g.scan = cfg.scan;
  g.values.assign(g.nt() * g.nphi() * g.nscan(), 0.0);
  return g;
}

}  // namespace

std::vector<cplx> detector_field_window(const ExperimentConfig& cfg, double phi0, double scan_value) {
  const FieldEngine eng(cfg);
  CellWork wk(eng.grid().count, eng.window_count());
  eng.analyzer_lines(scan_value, phi0, wk.x, wk.w);
  std::vector<cplx> e = eng.target_window();
  std::vector<cplx> f(eng.window_count());
  for (std::size_t i = 0; i < wk.x.size(); ++i) {
    eng.sideband_field(wk.x[i], f.data(), wk.buf);
    for (std::size_t it = 0; it < e.size(); ++it) e[it] -= wk.w[i] * f[it];
  }
  return e;
}

IntensityGrid detector_intensity_serial(const ExperimentConfig& cfg) {
  const FieldEngine eng(cfg);
  IntensityGrid g = empty_grid(cfg);
  CellWork wk(eng.grid().count, eng.window_count());
  for (std::size_t iw = 0; iw < g.nscan(); ++iw) simulate_scan_cell(eng, g.phi0, iw, wk, g);
  return g;
}

IntensityGrid detector_intensity(const ExperimentConfig& cfg) {
  const FieldEngine eng(cfg);
  IntensityGrid g = empty_grid(cfg);
  fft_plan(eng.grid().count, -1);
  const long ns = static_cast<long>(g.nscan());
#pragma omp parallel
  {
    CellWork wk(eng.grid().count, eng.window_count());
#pragma omp for schedule(dynamic, 1)
    for (long iw = 0; iw < ns; ++iw) simulate_scan_cell(eng, g.phi0, static_cast<std::size_t>(iw), wk, g);
  }
  return g;
}

}  // namespace pnrs
