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

#include <cstdint>
#include <string>
#include <vector>

#include "phasenrs/motion.hpp"
#include "phasenrs/target.hpp"
#include "phasenrs/units.hpp"

namespace pnrs {

enum class MotionKind { harmonic, pssl, constant_velocity, stationary };

const char* motion_kind_name(MotionKind k);
MotionKind motion_kind_from_name(const std::string& s);

//! Everything needed to simulate one intensity grid. Frequencies in gamma,
//! window bounds in ns.
struct ExperimentConfig {
  NuclideConstants nuclide;
  AnalyzerSpec analyzer;
  TargetModel target;
  MotionKind motion = MotionKind::harmonic;
  double offset_S = 0.0;
  double p = 0.0;
  //! Scan axis: w_p for harmonic/pssl, detuning for constant_velocity.
  std::vector<double> scan;
  int phases = 32;
  double t_min_ns = 15.0;
  double t_max_ns = 192.0;
  double dt_ns = 0.25;
  int fft_oversample = 4;
  std::size_t fft_size = 1u << 16;
  double sideband_tol = 1e-12;
  double support_l = 0.0;
  bool separation_ok = true;

  void validate() const;
  std::vector<double> phase_axis() const;
  //! Window sample times in units of 1/gamma.
  std::vector<double> time_axis() const;
  std::vector<double> time_axis_ns() const;
  std::size_t time_count() const;
  //! Index offset of the first window sample on the dt grid (t_min / dt).
  long first_sample() const;
};

//! |E_D(t)|^2 on (t, phi0, scan); values laid out [scan][phi0][t].
struct IntensityGrid {
  std::vector<double> t;
  std::vector<double> t_ns;
  std::vector<double> phi0;
  std::vector<double> scan;
  std::vector<double> values;
  ExperimentConfig meta;

  std::size_t nt() const { return t.size(); }
  std::size_t nphi() const { return phi0.size(); }
  std::size_t nscan() const { return scan.size(); }
  std::size_t index(std::size_t it, std::size_t ip, std::size_t iw) const {
    return (iw * nphi() + ip) * nt() + it;
  }
  double& at(std::size_t it, std::size_t ip, std::size_t iw) { return values[index(it, ip, iw)]; }
  double at(std::size_t it, std::size_t ip, std::size_t iw) const { return values[index(it, ip, iw)]; }
  //! Throws DataMismatch if axis lengths, values or metadata disagree.
  void check_consistent() const;
};

//! Precomputed frequency grid and target samples shared by all cells.
class FieldEngine {
 public:
  explicit FieldEngine(const ExperimentConfig& cfg);

  const ExperimentConfig& config() const { return cfg_; }
  const FrequencyGrid& grid() const { return grid_; }
  std::size_t window_count() const { return nwin_; }
  //! Scattering part of R_T at the window samples.
  const std::vector<cplx>& target_window() const { return rt_win_; }
  //! Window samples of FT^-1[R^_T(w) R^_S(w - x)], written to out[0..L).
  //! Lines beyond the grid use R^_T(x) R_S(t) exp(-i x t).
  //! `buf` must have size grid().count.
  void sideband_field(double x, cplx* out, FftBuffer& buf) const;
  //! Lines x_n and weights alpha_n of the moving analyzer for one cell.
  void analyzer_lines(double scan_value, double phi0, std::vector<double>& x,
                      std::vector<cplx>& w) const;

 private:
  ExperimentConfig cfg_;
  FrequencyGrid grid_;
  std::size_t nwin_ = 0;
  std::size_t stride_ = 0;
  long first_ = 0;
  std::vector<cplx> rt_minus_c0_;
  std::vector<cplx> rt_win_;
  std::vector<double> twin_;
  int nmax_ = 0;
  double far_limit_ = 0.0;
};

//! Detector spectrum R^_T(w) R^_osc(w - S) with unit input field.
ComplexSpectrum detector_field_freq(const ExperimentConfig& cfg, double phi0, double scan_value,
                                    const FrequencyGrid& g);
//! Detector field at the window samples for one (phi0, scan) cell.
std::vector<cplx> detector_field_window(const ExperimentConfig& cfg, double phi0, double scan_value);

//! OpenMP over scan cells. Bit-identical to the serial reference.
IntensityGrid detector_intensity(const ExperimentConfig& cfg);
//! Serial reference implementation.
IntensityGrid detector_intensity_serial(const ExperimentConfig& cfg);

struct EventRecord {
  double t_ns;
  double phi0;
  double scan;
  double p;
};

//! Poisson counts per cell with expected total mean_counts; one independent
//! stream per cell derived from the seed, so the result does not depend on
//! thread count.
std::vector<EventRecord> sample_events(const IntensityGrid& g, double mean_counts, std::uint64_t seed);
//! Same draws as sample_events, returned directly as a count grid.
IntensityGrid sample_counts(const IntensityGrid& g, double mean_counts, std::uint64_t seed);

struct Histogram {
  IntensityGrid grid;
  std::size_t overflow = 0;
};
//! Bins events on the axes of `axes` (values ignored).
Histogram histogram_events(const std::vector<EventRecord>& events, const IntensityGrid& axes);

//! SplitMix64 step; used to derive independent per-cell seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pnrs
