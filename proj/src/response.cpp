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

#include "phasenrs/response.hpp"

#include <cmath>

#include "phasenrs/bessel.hpp"

namespace pnrs {

void AnalyzerSpec::validate() const {
  if (!(b >= 0)) throw DomainError("analyzer thickness parameter b must be >= 0");
  if (!(linewidth > 0)) throw DomainError("analyzer linewidth must be > 0");
}

cplx analyzer_response(double w, const AnalyzerSpec& a) {
  const cplx den(w - a.offset, 0.5 * a.linewidth);
  return std::exp(cplx(0.0, -a.b) / den);
}

cplx analyzer_scattering(double w, const AnalyzerSpec& a) {
  // 1 - exp(z) via expm1 keeps precision for thin foils and far tails.
  const cplx z = cplx(0.0, -a.b) / cplx(w - a.offset, 0.5 * a.linewidth);
  const double er = std::expm1(z.real());
  const double s = std::sin(z.imag());
  const double c1 = -2.0 * std::sin(0.5 * z.imag()) * std::sin(0.5 * z.imag());  // cos - 1
  // exp(z) - 1 = (er + 1)(cos + i sin) - 1 = er cos + (cos - 1) + i (er + 1) sin
  const cplx em1(er * (1.0 + c1) + c1, (er + 1.0) * s);
  return -em1;
}

cplx analyzer_scattering_time(double t, const AnalyzerSpec& a) {
  if (t <= 0.0 || a.b == 0.0) return {};
  const double u = 2.0 * std::sqrt(a.b * t);
  // sqrt(b/t) J1(u) = b * 2 J1(u)/u, regular at t -> 0.
  const double core = a.b * 2.0 * bessel_j(1, u) / u;
  return core * std::polar(std::exp(-0.5 * a.linewidth * t), -a.offset * t);
}

ComplexSpectrum analyzer_response_freq(const FrequencyGrid& g, const AnalyzerSpec& a) {
  a.validate();
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  for (std::size_t m = 0; m < g.count; ++m) s.values[m] = analyzer_response(g.at(m), a);
  return s;
}

ComplexSpectrum analyzer_scattering_freq(const FrequencyGrid& g, const AnalyzerSpec& a) {
  a.validate();
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  for (std::size_t m = 0; m < g.count; ++m) s.values[m] = analyzer_scattering(g.at(m), a);
  return s;
}

TimeSignal analyzer_scattering_time(const TimeGrid& g, const AnalyzerSpec& a) {
  a.validate();
  TimeSignal s;
  s.grid = g;
  s.values.resize(g.count);
  for (std::size_t q = 0; q < g.count; ++q) s.values[q] = analyzer_scattering_time(g.at(q), a);
  return s;
}

TimeSignal analyzer_response_time(const TimeGrid& g, const AnalyzerSpec& a) {
  TimeSignal s = analyzer_scattering_time(g, a);
  for (auto& v : s.values) v = -v;
  s.delta = 1.0;
  return s;
}

}  // namespace pnrs
