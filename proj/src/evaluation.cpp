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

#include "phasenrs/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace pnrs {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double spectral_error(const RecoveredSpectrum& rec, const TargetModel& ref) {
  if (rec.detuning.size() != rec.amplitude_sq.size())
    throw DataMismatch("spectrum detuning and amplitude lengths differ");
  std::vector<double> r(rec.detuning.size());
  double mx = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = std::norm(ref.freq(rec.detuning[i]));
    mx = std::max(mx, r[i]);
  }
  if (!(mx > 0)) throw DomainError("reference spectrum vanishes on the detuning axis");
  double e = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = rec.amplitude_sq[i] - r[i] / mx;
    e += d * d;
  }
  return e;
}

namespace {

// Lowest value reached walking away from the peak before the curve rises above it.
double side_floor(const std::vector<double>& y, std::size_t i, int step) {
  double m = y[i];
  for (long j = static_cast<long>(i) + step; j >= 0 && j < static_cast<long>(y.size()); j += step) {
    if (y[j] > y[i]) break;
    m = std::min(m, y[j]);
  }
  return m;
}

}  // namespace

int count_local_maxima(const std::vector<double>& y, double prominence) {
  int n = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] >= y[i - 1] && y[i] > y[i + 1])) continue;
    const double base = std::max(side_floor(y, i, -1), side_floor(y, i, +1));
    if (y[i] - base >= prominence) ++n;
  }
  return n;
}

double SweepResult::min_error() const {
  double m = kNaN;
  for (double e : error)
    if (!std::isnan(e) && (std::isnan(m) || e < m)) m = e;
  return m;
}

double SweepResult::min_error_where(double t1_lo, double t2_hi) const {
  double m = kNaN;
  for (std::size_t i = 0; i < t1_ns.size(); ++i)
    for (std::size_t j = 0; j < t2_ns.size(); ++j) {
      if (t1_ns[i] < t1_lo - 1e-9 || t2_ns[j] > t2_hi + 1e-9) continue;
      const double e = at(i, j);
      if (!std::isnan(e) && (std::isnan(m) || e < m)) m = e;
    }
  return m;
}

double SweepResult::error_at(double t1, double t2) const {
  for (std::size_t i = 0; i < t1_ns.size(); ++i)
    if (std::abs(t1_ns[i] - t1) < 1e-9)
      for (std::size_t j = 0; j < t2_ns.size(); ++j)
        if (std::abs(t2_ns[j] - t2) < 1e-9) return at(i, j);
  throw DomainError("window is not on the sweep axes");
}

namespace {

SweepResult sweep_shell(const std::vector<double>& t1s, const std::vector<double>& t2s, const char* method) {
  if (t1s.empty() || t2s.empty()) throw DomainError("sweep axes must not be empty");
  SweepResult r;
  r.t1_ns = t1s;
  r.t2_ns = t2s;
  r.method = method;
  r.error.assign(t1s.size() * t2s.size(), kNaN);
  return r;
}

bool cell_defined(const std::vector<double>& t_ns, double t1, double t2) {
  if (t_ns.size() < 2) return false;
  const double dt = t_ns[1] - t_ns[0];
  return t2 > t1 + 2 * dt + 1e-9 && t1 >= t_ns.front() - 1e-9 && t2 <= t_ns.back() + 1e-9;
}

double phantasy_cell(const FitResult& fit, const TargetModel& ref, double t1, double t2) {
  if (!cell_defined(fit.t_ns, t1, t2)) return kNaN;
  return spectral_error(recover_amplitude(fit, t1, t2), ref);
}

}  // namespace

SweepResult sweep_phantasy(const FitResult& fit, const TargetModel& ref, const std::vector<double>& t1_ns,
                           const std::vector<double>& t2_ns) {
  SweepResult r = sweep_shell(t1_ns, t2_ns, "phantasy");
  const long cells = static_cast<long>(r.error.size());
  const std::size_t n2 = t2_ns.size();
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < cells; ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / n2, j = static_cast<std::size_t>(c) % n2;
    r.error[static_cast<std::size_t>(c)] = phantasy_cell(fit, ref, t1_ns[i], t2_ns[j]);
  }
  return r;
}

SweepResult sweep_phantasy_serial(const FitResult& fit, const TargetModel& ref, const std::vector<double>& t1_ns,
                                  const std::vector<double>& t2_ns) {
  SweepResult r = sweep_shell(t1_ns, t2_ns, "phantasy");
  for (std::size_t i = 0; i < t1_ns.size(); ++i)
    for (std::size_t j = 0; j < t2_ns.size(); ++j)
      r.error[i * t2_ns.size() + j] = phantasy_cell(fit, ref, t1_ns[i], t2_ns[j]);
  return r;
}

SweepResult sweep_doppler(const std::vector<IntensityGrid>& grids, const std::vector<double>& thickness_um,
                          const TargetModel& ref, const std::vector<double>& t1_ns,
                          const std::vector<double>& t2_ns) {
  if (grids.empty() || grids.size() != thickness_um.size())
    throw DataMismatch("one Doppler grid per thickness is required");
  SweepResult r = sweep_shell(t1_ns, t2_ns, "doppler");
  r.thickness_um.assign(r.error.size(), kNaN);
  const long cells = static_cast<long>(r.error.size());
  const std::size_t n2 = t2_ns.size();
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < cells; ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / n2, j = static_cast<std::size_t>(c) % n2;
    for (std::size_t k = 0; k < grids.size(); ++k) {
      if (!cell_defined(grids[k].t_ns, t1_ns[i], t2_ns[j])) continue;
      const double e = spectral_error(doppler_recover(grids[k], t1_ns[i], t2_ns[j]), ref);
      double& cur = r.error[static_cast<std::size_t>(c)];
      if (std::isnan(cur) || e < cur) {
        cur = e;
        r.thickness_um[static_cast<std::size_t>(c)] = thickness_um[k];
      }
    }
  }
  return r;
}

ThicknessResult optimize_thickness(const ExperimentConfig& doppler_cfg, const std::vector<double>& thickness_um,
                                   double t1_ns, double t2_ns) {
  if (thickness_um.empty()) throw DomainError("thickness grid must not be empty");
  ThicknessResult r;
  r.thickness_um = thickness_um;
  for (double d : thickness_um) {
    ExperimentConfig c = doppler_cfg;
    c.analyzer.b = thickness_param(d, c.nuclide);
    const IntensityGrid g = detector_intensity(c);
    const double e = spectral_error(doppler_recover(g, t1_ns, t2_ns), c.target);
    r.error.push_back(e);
    if (std::isnan(r.best_error) || e < r.best_error) {
      r.best_error = e;
      r.best_um = d;
    }
  }
  return r;
}

}  // namespace pnrs
