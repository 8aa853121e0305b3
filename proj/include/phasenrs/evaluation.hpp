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

#include <limits>
#include <string>
#include <vector>

#include "phasenrs/recovery.hpp"

namespace pnrs {

//! Sum over scan points of (amplitude_sq - |R^_T|^2 / max)^2; the reference
//! is normalized over the same detuning points.
double spectral_error(const RecoveredSpectrum& rec, const TargetModel& ref);

//! Local maxima whose prominence is at least `prominence`.
int count_local_maxima(const std::vector<double>& y, double prominence = 0.05);

//! Error heatmap over (t1, t2); undefined cells hold NaN. Laid out [t1][t2].
struct SweepResult {
  std::vector<double> t1_ns;
  std::vector<double> t2_ns;
  std::vector<double> error;
  //! Doppler only: analyzer thickness (um) achieving each cell's error.
  std::vector<double> thickness_um;
  std::string method;
  std::string config_hash;

  double at(std::size_t i, std::size_t j) const { return error[i * t2_ns.size() + j]; }
  //! Minimum over defined cells; NaN if none.
  double min_error() const;
  //! Minimum over cells with t1 >= t1_lo and t2 <= t2_hi.
  double min_error_where(double t1_lo, double t2_hi) const;
  //! Error at the given window (must lie on the axes); NaN if undefined.
  double error_at(double t1, double t2) const;
};

//! PHANTASY sweep from one fit. Cells with t2 <= t1 + 2 dt are undefined.
SweepResult sweep_phantasy(const FitResult& fit, const TargetModel& ref,
                           const std::vector<double>& t1_ns, const std::vector<double>& t2_ns);
//! Serial reference of sweep_phantasy.
SweepResult sweep_phantasy_serial(const FitResult& fit, const TargetModel& ref,
                                  const std::vector<double>& t1_ns, const std::vector<double>& t2_ns);

//! Doppler sweep over grids simulated at several thicknesses; each cell keeps
//! the thickness with the smallest error.
SweepResult sweep_doppler(const std::vector<IntensityGrid>& grids, const std::vector<double>& thickness_um,
                          const TargetModel& ref, const std::vector<double>& t1_ns,
                          const std::vector<double>& t2_ns);

struct ThicknessResult {
  std::vector<double> thickness_um;
  std::vector<double> error;
  double best_um = 0.0;
  double best_error = std::numeric_limits<double>::quiet_NaN();
};

//! Grid search over Doppler analyzer thickness at a fixed window.
ThicknessResult optimize_thickness(const ExperimentConfig& doppler_cfg, const std::vector<double>& thickness_um,
                                   double t1_ns, double t2_ns);

}  // namespace pnrs
