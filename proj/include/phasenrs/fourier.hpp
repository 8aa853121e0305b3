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

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "phasenrs/core.hpp"

namespace pnrs {

// Transform convention used throughout:
//   R(t) = (1/2pi) int R^(w) exp(-i w t) dw,   R^(w) = int R(t) exp(i w t) dt.

//! Uniform frequency grid w_m = center + (m - N/2) * spacing, m = 0..N-1.
struct FrequencyGrid {
  double center = 0.0;
  double spacing = 1.0;
  std::size_t count = 0;

  FrequencyGrid() = default;
  FrequencyGrid(double center, double spacing, std::size_t count);
  double at(std::size_t m) const {
    return center + (static_cast<double>(m) - static_cast<double>(count / 2)) * spacing;
  }
  double span() const { return spacing * static_cast<double>(count); }
  double lo() const { return at(0); }
  double hi() const { return at(count - 1); }
  // Throws DomainError unless [lo, hi] covers [a, b].
  void require_covers(double a, double b, const char* what) const;
};

//! Uniform time grid t_q = start + q * spacing.
struct TimeGrid {
  double start = 0.0;
  double spacing = 1.0;
  std::size_t count = 0;

  double at(std::size_t q) const { return start + static_cast<double>(q) * spacing; }
};

//! Time grid dual to g: spacing 2pi/(N dw), centered so that t = 0 is sample N/2.
TimeGrid dual_time_grid(const FrequencyGrid& g);

struct ComplexSpectrum {
  FrequencyGrid grid;
  std::vector<cplx> values;
};

//! Time signal; `delta` is the weight of a symbolic delta(t) term that is
//! never stored as a grid sample.
struct TimeSignal {
  TimeGrid grid;
  std::vector<cplx> values;
  cplx delta{0.0, 0.0};
};

TimeSignal freq_to_time(const ComplexSpectrum& s);
ComplexSpectrum time_to_freq(const TimeSignal& s, const FrequencyGrid& g);

//! Thread-safe cached FFTW plan of a given length and direction.
//! sign = -1 computes sum x_m exp(-2 pi i m q / N), sign = +1 the conjugate kernel.
class Fft {
 public:
  Fft(std::size_t n, int sign);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  // In-place transform; data must come from alloc().
  void execute(cplx* data) const;
  static cplx* alloc(std::size_t n);
  static void free(cplx* p);

 private:
  std::size_t n_;
  void* plan_;
};

//! Shared plan cache; plans are created once under a lock.
const Fft& fft_plan(std::size_t n, int sign);

//! Aligned scratch buffer for Fft::execute.
class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n) : n_(n), p_(Fft::alloc(n)) {}
  ~FftBuffer() { Fft::free(p_); }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  cplx* data() { return p_; }
  const cplx* data() const { return p_; }
  cplx& operator[](std::size_t i) { return p_[i]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  cplx* p_;
};

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace pnrs
