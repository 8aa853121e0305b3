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
#include <random>
#include <unordered_map>

#include "phasenrs/detector.hpp"

namespace pnrs {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double grid_total(const IntensityGrid& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s;
}

// Visits every cell with its own generator; calls emit(cell, count, rng).
template <class Emit>
void draw_cells(const IntensityGrid& g, double mean_counts, std::uint64_t seed, Emit emit) {
  if (!(mean_counts >= 0)) throw DomainError("mean_counts must be >= 0");
  const double total = grid_total(g);
  if (total <= 0 || mean_counts <= 0) return;
  const double scale = mean_counts / total;
  const std::uint64_t base = splitmix64(seed);
  for (std::size_t c = 0; c < g.values.size(); ++c) {
    const double lambda = g.values[c] * scale;
    if (!(lambda > 0)) continue;
    std::mt19937_64 rng(splitmix64(base ^ splitmix64(c)));
    std::poisson_distribution<long> pois(lambda);
    const long k = pois(rng);
    if (k > 0) emit(c, k, rng);
  }
}

}  // namespace

std::vector<EventRecord> sample_events(const IntensityGrid& g, double mean_counts, std::uint64_t seed) {
  std::vector<EventRecord> ev;
  const double dt = g.meta.dt_ns;
  const double p = g.meta.p;
  draw_cells(g, mean_counts, seed, [&](std::size_t c, long k, std::mt19937_64& rng) {
    const std::size_t it = c % g.nt();
    const std::size_t ip = (c / g.nt()) % g.nphi();
    const std::size_t iw = c / (g.nt() * g.nphi());
    std::uniform_real_distribution<double> u(-0.499, 0.499);
    for (long i = 0; i < k; ++i) ev.push_back({g.t_ns[it] + u(rng) * dt, g.phi0[ip], g.scan[iw], p});
  });
  return ev;
}

IntensityGrid sample_counts(const IntensityGrid& g, double mean_counts, std::uint64_t seed) {
  IntensityGrid out = g;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  draw_cells(g, mean_counts, seed, [&](std::size_t c, long k, std::mt19937_64&) { out.values[c] = static_cast<double>(k); });
  return out;
}

Histogram histogram_events(const std::vector<EventRecord>& events, const IntensityGrid& axes) {
  Histogram h;
  h.grid = axes;
  std::fill(h.grid.values.begin(), h.grid.values.end(), 0.0);
  const double dt = axes.meta.dt_ns;
  const std::size_t nt = axes.nt();
  if (nt == 0) return h;
  const double t0 = axes.t_ns.front();
  std::unordered_map<double, long> phi_index, scan_index;
  for (std::size_t i = 0; i < axes.phi0.size(); ++i) phi_index.emplace(axes.phi0[i], static_cast<long>(i));
  for (std::size_t i = 0; i < axes.scan.size(); ++i) scan_index.emplace(axes.scan[i], static_cast<long>(i));
  auto find = [](const std::unordered_map<double, long>& idx, const std::vector<double>& ax, double v) -> long {
    if (auto it = idx.find(v); it != idx.end()) return it->second;
    for (std::size_t i = 0; i < ax.size(); ++i)
      if (std::abs(ax[i] - v) <= 1e-12 * std::max(1.0, std::abs(v))) return static_cast<long>(i);
    return -1;
  };
  for (const auto& e : events) {
    const long it = std::lround((e.t_ns - t0) / dt);
    const long ip = find(phi_index, axes.phi0, e.phi0);
    const long iw = find(scan_index, axes.scan, e.scan);
    if (it < 0 || it >= static_cast<long>(nt) || ip < 0 || iw < 0) {
      ++h.overflow;
      continue;
    }
    h.grid.at(static_cast<std::size_t>(it), static_cast<std::size_t>(ip), static_cast<std::size_t>(iw)) += 1.0;
  }
  return h;
}

}  // namespace pnrs
