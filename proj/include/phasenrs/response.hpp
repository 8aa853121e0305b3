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

#include "phasenrs/fourier.hpp"
#include "phasenrs/units.hpp"

namespace pnrs {

//! Single-line analyzer: b and linewidth in units of gamma, offset is the
//! local resonance position (the simulator applies S separately).
struct AnalyzerSpec {
  double b = 0.0;
  double linewidth = 1.0;
  double offset = 0.0;

  void validate() const;
};

// R^(w) = exp(-i b / (w - w_a + i g/2)).
cplx analyzer_response(double w, const AnalyzerSpec& a);
// R^_S(w) = 1 - R^(w).
cplx analyzer_scattering(double w, const AnalyzerSpec& a);
// R_S(t) = theta(t) sqrt(b/t) J1(2 sqrt(b t)) exp(-i w_a t - g t/2).
cplx analyzer_scattering_time(double t, const AnalyzerSpec& a);

ComplexSpectrum analyzer_response_freq(const FrequencyGrid& g, const AnalyzerSpec& a);
ComplexSpectrum analyzer_scattering_freq(const FrequencyGrid& g, const AnalyzerSpec& a);
//! R_S(t) on the grid (no delta term).
TimeSignal analyzer_scattering_time(const TimeGrid& g, const AnalyzerSpec& a);
//! Full response delta(t) - R_S(t); the delta is carried in TimeSignal::delta.
TimeSignal analyzer_response_time(const TimeGrid& g, const AnalyzerSpec& a);

}  // namespace pnrs
