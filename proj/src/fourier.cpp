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

#include "phasenrs/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace pnrs {

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

FrequencyGrid::FrequencyGrid(double c, double s, std::size_t n) : center(c), spacing(s), count(n) {
  if (!(s > 0)) throw DomainError("frequency grid spacing must be positive");
  if (n < 2 || !is_power_of_two(n)) throw DomainError("frequency grid count must be a power of two >= 2");
}

void FrequencyGrid::require_covers(double a, double b, const char* what) const {
  if (a < lo() || b > hi())
    throw DomainError(std::string(what) + ": frequency grid span too small for the requested support");
}

TimeGrid dual_time_grid(const FrequencyGrid& g) {
  TimeGrid t;
  t.spacing = kTwoPi / (g.spacing * static_cast<double>(g.count));
  t.count = g.count;
  t.start = -static_cast<double>(g.count / 2) * t.spacing;
  return t;
}

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t n, int sign) : n_(n), plan_(nullptr) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  cplx* a = alloc(n);
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a),
                           reinterpret_cast<fftw_complex*>(a), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                           FFTW_ESTIMATE);
  free(a);
  if (!plan_) throw DomainError("FFTW planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void Fft::execute(cplx* data) const {
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_), d, d);
}

cplx* Fft::alloc(std::size_t n) {
  auto* p = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
  if (!p) throw std::bad_alloc();
  return p;
}

void Fft::free(cplx* p) { fftw_free(p); }

const Fft& fft_plan(std::size_t n, int sign) {
  static std::mutex m;
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<Fft>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[{n, sign < 0 ? -1 : 1}];
  if (!slot) slot = std::make_unique<Fft>(n, sign);
  return *slot;
}

// With w_m = c + (m - N/2) dw and t_q = (q - N/2) dt, dw dt = 2pi/N:
//   exp(-i w_m t_q) = exp(-i c t_q) exp(-2pi i (m - N/2)(q - N/2)/N),
// and (m - N/2)(q - N/2) = mq - N/2 (m + q) + N^2/4, so the kernel is a plain
// DFT with (-1)^(m+q) and a constant phase (-1)^(N/2) for even N.
TimeSignal freq_to_time(const ComplexSpectrum& s) {
  const auto& g = s.grid;
  if (s.values.size() != g.count) throw DomainError("freq_to_time: spectrum length does not match grid");
  const std::size_t n = g.count;
  TimeSignal out;
  out.grid = dual_time_grid(g);
  FftBuffer buf(n);
  for (std::size_t m = 0; m < n; ++m) buf[m] = (m % 2 ? -1.0 : 1.0) * s.values[m];
  fft_plan(n, -1).execute(buf.data());
  const double quarter = ((n / 2) % 2) ? -1.0 : 1.0;
  out.values.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double t = out.grid.at(q);
    out.values[q] = quarter * (q % 2 ? -1.0 : 1.0) * g.spacing / kTwoPi * std::polar(1.0, -g.center * t) * buf[q];
  }
  return out;
}

ComplexSpectrum time_to_freq(const TimeSignal& s, const FrequencyGrid& g) {
  const TimeGrid d = dual_time_grid(g);
  const std::size_t n = g.count;
  if (s.values.size() != n || s.grid.count != n || std::abs(s.grid.spacing - d.spacing) > 1e-12 * d.spacing ||
      std::abs(s.grid.start - d.start) > 1e-9 * d.spacing)
    throw DomainError("time_to_freq: time grid is not dual to the frequency grid");
  FftBuffer buf(n);
  for (std::size_t q = 0; q < n; ++q)
    buf[q] = (q % 2 ? -1.0 : 1.0) * std::polar(1.0, g.center * d.at(q)) * s.values[q];
  fft_plan(n, +1).execute(buf.data());
  const double quarter = ((n / 2) % 2) ? -1.0 : 1.0;
  ComplexSpectrum out;
  out.grid = g;
  out.values.resize(n);
  for (std::size_t m = 0; m < n; ++m)
    out.values[m] = quarter * (m % 2 ? -1.0 : 1.0) * d.spacing * buf[m] + s.delta;
  return out;
}

}  // namespace pnrs
