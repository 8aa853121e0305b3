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

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "phasenrs/fourier.hpp"

namespace pnrs {

//! a / (w - center + i width/2).
struct RationalLine {
  cplx residue;
  double center = 0.0;
  double width = 1.0;
};

//! c0 + sum_j a_j / (w - w_j + i G_j/2).
struct RationalModel {
  cplx c0{0.0, 0.0};
  std::vector<RationalLine> lines;
};

struct ExponentialLine {
  double b = 0.0;
  double center = 0.0;
};

//! exp(sum_j -i b_j / (w - w_j + i g_t/2)).
struct ExponentialModel {
  double width = 1.0;
  std::vector<ExponentialLine> lines;
};

class TargetModel {
 public:
  TargetModel() = default;
  //! Throws DomainError on invalid parameters or a non-passive response.
  explicit TargetModel(RationalModel m);
  explicit TargetModel(ExponentialModel m);

  bool is_rational() const { return std::holds_alternative<RationalModel>(m_); }
  const RationalModel& rational() const { return std::get<RationalModel>(m_); }
  const ExponentialModel& exponential() const { return std::get<ExponentialModel>(m_); }

  cplx freq(double w) const;
  //! d/dw of freq(w).
  cplx freq_derivative(double w) const;
  //! Asymptote of freq(w) for |w| -> inf; weight of the delta term in time.
  cplx asymptote() const;
  //! Simple poles whose sum matches freq(w) - asymptote() to O(1/w^2).
  std::vector<RationalLine> leading_poles() const;
  //! Amplitude-weighted line center.
  double weighted_center() const;
  //! Largest line width; sets the resolution needed to sample the model.
  double narrowest_width() const;
  double outermost_offset() const;

 private:
  std::variant<RationalModel, ExponentialModel> m_{RationalModel{}};
};

//! Time response of a pole set: theta(t) sum (-i a_j) exp(-i w_j t - G_j t/2).
cplx pole_time_response(const std::vector<RationalLine>& poles, double t);

ComplexSpectrum target_response_freq(const TargetModel& m, const FrequencyGrid& g);
//! Scattering part on the grid; TimeSignal::delta = asymptote().
//! Rational models are evaluated analytically, others through an FFT whose
//! step divides the grid spacing and with leading poles removed analytically.
TimeSignal target_response_time(const TargetModel& m, const TimeGrid& g);
//! tau(w) = d arg R^_T / dw; throws DomainError where |R^_T| <= 1e-9.
double target_group_delay(const TargetModel& m, double w);
//! Smallest l with |R^_T(w) - c0| < eps for all |w - center| > l.
double target_support_halfwidth(const TargetModel& m, double eps);

//! Absorptive Lorentzian lines (center, width, relative weight), scaled so
//! that max |R^_T| = peak.
TargetModel absorptive_lines(const std::vector<std::array<double, 3>>& spec, double peak = 0.95);

std::vector<std::string> preset_names();
//! single_line, two_line, zeeman_six_line.
TargetModel target_preset(const std::string& name);

}  // namespace pnrs
