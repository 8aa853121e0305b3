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

#include "phasenrs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phasenrs/bessel.hpp"

namespace pnrs {

SensingHeadTerms sensing_head_terms(const ExperimentConfig& cfg, double omega_p) {
  SensingHeadTerms s;
  s.x = cfg.offset_S - omega_p;
  const cplx r = cfg.target.freq(s.x);
  s.C = std::abs(r);
  s.phase = std::arg(r);
  if (s.C > 1e-9) {
    s.tau1 = target_group_delay(cfg.target, s.x);
  } else {
    s.defined = false;
  }
  return s;
}

std::vector<cplx> sensing_head_first(const ExperimentConfig& cfg, double omega_p, const std::vector<double>& t) {
  std::vector<cplx> out(t.size());
  if (t.empty()) return out;
  const SensingHeadTerms sh = sensing_head_terms(cfg, omega_p);
  const cplx rx = cfg.target.freq(sh.x);
  std::vector<cplx> rt;
  if (cfg.target.is_rational() || t.size() < 2) {
    const auto poles = cfg.target.leading_poles();
    for (double tt : t) rt.push_back(pole_time_response(poles, tt));
  } else {
    rt = target_response_time(cfg.target, TimeGrid{t[0], t[1] - t[0], t.size()}).values;
  }
  double j0 = 0.0, j1 = 1.0, j2 = 0.0;
  const bool harmonic = cfg.motion == MotionKind::harmonic;
  if (harmonic) {
    j0 = bessel_j(0, cfg.p);
    j1 = bessel_j(1, cfg.p);
    j2 = bessel_j(2, cfg.p);
  } else if (cfg.motion != MotionKind::pssl) {
    throw ContractViolation("sensing-head prediction needs harmonic or PSSL motion");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const cplx g1 = rx * analyzer_scattering_time(t[i] - sh.tau1, cfg.analyzer) * std::polar(1.0, -sh.x * t[i]);
    if (harmonic)
      out[i] = -j1 * (j2 * std::conj(rt[i]) * g1 + j0 * rt[i] * std::conj(g1));
    else
      out[i] = -rt[i] * std::conj(g1);
  }
  return out;
}

std::vector<double> sensing_head_predict(const ExperimentConfig& cfg, double phi0, double omega_p,
                                         const std::vector<double>& t) {
  const auto first = sensing_head_first(cfg, omega_p, t);
  std::vector<double> out(t.size());
  const cplx e = std::polar(1.0, -phi0);
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = 2.0 * std::real(first[i] * e);
  return out;
}

CosineFit fit_cosine(const double* y, const std::vector<double>& phi) {
  const std::size_t m = phi.size();
  if (m < 3) throw DomainError("cosine fit needs at least 3 phases");
  cplx c{};
  for (std::size_t k = 0; k < m; ++k) c += y[k] * std::polar(1.0, phi[k]);
  c *= 2.0 / static_cast<double>(m);
  CosineFit f;
  f.D = std::abs(c);
  f.a = f.D > 0 ? wrap_2pi(-std::arg(c)) : 0.0;
  double ss = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = y[k] - f.D * std::cos(phi[k] + f.a);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / static_cast<double>(m));
  return f;
}

FitResult cosine_fit(const FilteredSignal& fs) {
  FitResult r;
  r.t = fs.t;
  r.t_ns = fs.t_ns;
  r.scan = fs.scan;
  r.offset_S = fs.meta.offset_S;
  const std::size_t nt = fs.nt(), nw = fs.scan.size(), m = fs.phi0.size();
  r.D.assign(nt * nw, 0.0);
  r.a.assign(nt * nw, 0.0);
  r.residual.assign(nt * nw, 0.0);
  const long nws = static_cast<long>(nw);
#pragma omp parallel for schedule(static)
  for (long iw = 0; iw < nws; ++iw) {
    std::vector<double> y(m);
    for (std::size_t it = 0; it < nt; ++it) {
      for (std::size_t k = 0; k < m; ++k) y[k] = fs.resynth(it, k, static_cast<std::size_t>(iw)).real();
      const CosineFit f = fit_cosine(y.data(), fs.phi0);
      const std::size_t idx = r.index(it, static_cast<std::size_t>(iw));
      r.D[idx] = f.D;
      r.a[idx] = f.a;
      r.residual[idx] = f.residual;
    }
  }
  return r;
}

std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& t_ns, double t1_ns, double t2_ns) {
  if (!(t2_ns > t1_ns)) throw DomainError("integration window needs t2 > t1");
  if (t_ns.empty() || t1_ns < t_ns.front() - 1e-9 || t2_ns > t_ns.back() + 1e-9)
    throw DomainError("integration window lies outside the simulated time range");
  std::size_t i1 = 0;
  while (i1 < t_ns.size() && t_ns[i1] < t1_ns - 1e-9) ++i1;
  std::size_t i2 = t_ns.size() - 1;
  while (i2 > 0 && t_ns[i2] > t2_ns + 1e-9) --i2;
  if (i2 < i1 || i2 - i1 + 1 < 3) throw DomainError("integration window holds fewer than 3 time samples");
  return {i1, i2};
}

namespace {

std::vector<std::size_t> ascending_detuning(const std::vector<double>& scan, double S, std::vector<double>& det) {
  std::vector<std::size_t> order(scan.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return S - scan[a] < S - scan[b]; });
  det.resize(scan.size());
  for (std::size_t i = 0; i < order.size(); ++i) det[i] = S - scan[order[i]];
  return order;
}

}  // namespace

RecoveredSpectrum recover_amplitude(const FitResult& fit, double t1_ns, double t2_ns) {
  const auto [i1, i2] = window_indices(fit.t_ns, t1_ns, t2_ns);
  RecoveredSpectrum rs;
  rs.method = "phantasy";
  rs.t1_ns = t1_ns;
  rs.t2_ns = t2_ns;
  const auto order = ascending_detuning(fit.scan, fit.offset_S, rs.detuning);
  const std::size_t nw = fit.scan.size();
  std::vector<double> acc(nw, 0.0);
  std::size_t used = 0;
  for (std::size_t it = i1; it <= i2; ++it) {
    double mx = 0.0;
    for (std::size_t iw = 0; iw < nw; ++iw) mx = std::max(mx, fit.D[fit.index(it, iw)]);
    if (!(mx > 0)) {
      ++rs.excluded_slices;
      continue;
    }
    ++used;
    for (std::size_t j = 0; j < nw; ++j) {
      const double d = fit.D[fit.index(it, order[j])] / mx;
      acc[j] += d * d;
    }
  }
  rs.amplitude_sq.assign(nw, 0.0);
  if (used == 0) return rs;
  const double top = *std::max_element(acc.begin(), acc.end());
  for (std::size_t j = 0; j < nw; ++j) rs.amplitude_sq[j] = top > 0 ? acc[j] / top : 0.0;
  return rs;
}

RecoveredSpectrum recover_phase(const FitResult& fit, double t1_ns, double t2_ns, const PhaseOptions& opt) {
  const auto [i1, i2] = window_indices(fit.t_ns, t1_ns, t2_ns);
  RecoveredSpectrum rs;
  rs.method = "phantasy";
  rs.t1_ns = t1_ns;
  rs.t2_ns = t2_ns;
  const auto order = ascending_detuning(fit.scan, fit.offset_S, rs.detuning);
  const std::size_t nw = fit.scan.size();
  std::vector<cplx> sum(nw, cplx{});
  std::vector<double> ahat(nw);
  std::vector<char> valid(nw);
  for (std::size_t it = i1; it <= i2; ++it) {
    double mx = 0.0;
    for (std::size_t iw = 0; iw < nw; ++iw) mx = std::max(mx, fit.D[fit.index(it, iw)]);
    if (!(mx > 0)) {
      ++rs.excluded_slices;
      continue;
    }
    const double t = fit.t[it];
    double prev = 0.0;
    bool have_prev = false;
    cplx ref{};
    for (std::size_t j = 0; j < nw; ++j) {
      const std::size_t idx = fit.index(it, order[j]);
      valid[j] = fit.D[idx] >= opt.d_floor * mx;
      if (!valid[j]) {
        ++rs.excluded_cells;
        continue;
      }
      // Carrier (S - w_p) t removed; the sign follows exp(-i (S - w_p) t) in the field.
      double v = rs.detuning[j] * t - fit.a[idx];
      if (opt.unwrap_pi && have_prev) {
        const double alt = v + kPi;
        if (std::abs(wrap_pi(alt - prev)) < std::abs(wrap_pi(v - prev))) v = alt;
      }
      ahat[j] = v;
      prev = v;
      have_prev = true;
      ref += fit.D[idx] * std::polar(1.0, v);
    }
    const cplx rot = (opt.align && std::abs(ref) > 0) ? std::polar(1.0, -std::arg(ref)) : cplx(1.0);
    for (std::size_t j = 0; j < nw; ++j)
      if (valid[j]) sum[j] += std::polar(1.0, ahat[j]) * rot;
  }
  rs.phase.assign(nw, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 0; j < nw; ++j)
    if (std::abs(sum[j]) > 0) rs.phase[j] = std::arg(sum[j]);
  return rs;
}

RecoveredSpectrum recover(const FitResult& fit, double t1_ns, double t2_ns, const PhaseOptions& opt) {
  RecoveredSpectrum amp = recover_amplitude(fit, t1_ns, t2_ns);
  const RecoveredSpectrum ph = recover_phase(fit, t1_ns, t2_ns, opt);
  amp.phase = ph.phase;
  amp.excluded_cells = ph.excluded_cells;
  return amp;
}

RecoveredSpectrum doppler_recover(const IntensityGrid& g, double t1_ns, double t2_ns) {
  if (g.meta.motion != MotionKind::constant_velocity)
    throw ContractViolation("Doppler recovery needs a constant-velocity grid");
  const auto [i1, i2] = window_indices(g.t_ns, t1_ns, t2_ns);
  RecoveredSpectrum rs;
  rs.method = "doppler";
  rs.t1_ns = t1_ns;
  rs.t2_ns = t2_ns;
  const auto order = ascending_detuning(g.scan, g.meta.offset_S, rs.detuning);
  const double dt = g.meta.dt_ns;
  std::vector<double> s(g.nscan());
  for (std::size_t j = 0; j < g.nscan(); ++j) {
    double acc = 0.0;
    const double* v = &g.values[g.index(0, 0, order[j])];
    for (std::size_t it = i1; it <= i2; ++it) acc += v[it];
    s[j] = acc * dt;
  }
  const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
  const double lo = *mn, span = *mx - *mn;
  rs.amplitude_sq.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) rs.amplitude_sq[j] = span > 0 ? (s[j] - lo) / span : 0.0;
  rs.phase.assign(s.size(), std::numeric_limits<double>::quiet_NaN());
  return rs;
}

}  // namespace pnrs
