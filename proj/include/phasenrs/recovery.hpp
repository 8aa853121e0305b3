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

#include <string>
#include <vector>

#include "phasenrs/filters.hpp"

namespace pnrs {

//! Sensing-head quantities for one w_p.
struct SensingHeadTerms {
  double x = 0.0;      // S - w_p
  double tau1 = 0.0;   // group delay at x
  double C = 0.0;      // |R^_T(x)|
  double phase = 0.0;  // arg R^_T(x)
  bool defined = true;
};
SensingHeadTerms sensing_head_terms(const ExperimentConfig& cfg, double omega_p);

//! Analytic f = +1 component after filtering:
//! -J1 [J2 R_T*(t) G1(t) + J0 R_T(t) G1*(t)], G1 = R^_T(x) R_S(t - tau1) exp(-i x t).
std::vector<cplx> sensing_head_first(const ExperimentConfig& cfg, double omega_p,
                                     const std::vector<double>& t);
//! Filtered-signal prediction 2 Re{I^{+1} exp(-i phi0)}.
std::vector<double> sensing_head_predict(const ExperimentConfig& cfg, double phi0, double omega_p,
                                         const std::vector<double>& t);

//! D cos(phi0 + a) fit per (t, scan); laid out [scan][t].
struct FitResult {
  std::vector<double> t;
  std::vector<double> t_ns;
  std::vector<double> scan;
  std::vector<double> D;
  std::vector<double> a;
  std::vector<double> residual;
  double offset_S = 0.0;

  std::size_t nt() const { return t.size(); }
  std::size_t index(std::size_t it, std::size_t iw) const { return iw * nt() + it; }
};

struct CosineFit {
  double D = 0.0;
  double a = 0.0;
  double residual = 0.0;
};
//! Closed-form first-harmonic projection on a uniform phase grid.
CosineFit fit_cosine(const double* y, const std::vector<double>& phi);

FitResult cosine_fit(const FilteredSignal& fs);

struct RecoveredSpectrum {
  std::vector<double> detuning;
  std::vector<double> amplitude_sq;
  std::vector<double> phase;
  double t1_ns = 0.0;
  double t2_ns = 0.0;
  std::string method;
  std::size_t excluded_slices = 0;
  std::size_t excluded_cells = 0;
};

struct PhaseOptions {
  bool unwrap_pi = true;
  bool align = true;
  double d_floor = 1e-3;
};

RecoveredSpectrum recover_amplitude(const FitResult& fit, double t1_ns, double t2_ns);
RecoveredSpectrum recover_phase(const FitResult& fit, double t1_ns, double t2_ns,
                                const PhaseOptions& opt = {});
//! Amplitude and phase in one spectrum.
RecoveredSpectrum recover(const FitResult& fit, double t1_ns, double t2_ns,
                          const PhaseOptions& opt = {});

//! Integrated intensity over [t1, t2] per detuning, rescaled to [0, 1].
//! The grid must come from constant-velocity motion.
RecoveredSpectrum doppler_recover(const IntensityGrid& g, double t1_ns, double t2_ns);

//! Window indices [i1, i2] of [t1_ns, t2_ns] on a time axis; throws DomainError.
std::pair<std::size_t, std::size_t> window_indices(const std::vector<double>& t_ns, double t1_ns,
                                                   double t2_ns);

}  // namespace pnrs
