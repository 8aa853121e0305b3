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

#include "phasenrs/detector.hpp"

namespace pnrs {

//! I = sum_f I^f exp(-i f phi0); components laid out [f][scan][t].
struct PhiComponents {
  std::vector<int> f_values;
  std::vector<cplx> data;
  std::size_t nt = 0;
  std::size_t nscan = 0;

  std::size_t f_index(int f) const;
  const cplx* series(int f, std::size_t iw) const { return &data[(f_index(f) * nscan + iw) * nt]; }
  cplx at(int f, std::size_t it, std::size_t iw) const { return series(f, iw)[it]; }
};

//! I^f = (1/M) sum_k I(phi0_k) exp(+i f phi0_k), |f| <= f_max.
PhiComponents phi0_fourier(const IntensityGrid& g, int f_max);

struct SeparationReport {
  bool ok = true;
  //! |3 w_p - 2S| - 2l at w_p = S - l.
  double margin = 0.0;
};
SeparationReport check_separation(double S, double l);

enum class MaskKind { rect, tukey, erf };
const char* mask_kind_name(MaskKind k);
MaskKind mask_kind_from_name(const std::string& s);

struct FilterParams {
  double S = 0.0;
  double l = 0.0;
  double band_halfwidth = 0.0;
  MaskKind mask = MaskKind::erf;
  //! erf edge width or tukey taper length, as a fraction of band_halfwidth.
  double edge_fraction = 0.25;

  void validate() const;
};

//! Keeps the nu bands centers +- band_halfwidth of a signal with components
//! exp(-i nu t). Overlapping bands are merged first. Each merged band is
//! demodulated, mirror-extended and masked in the nu domain.
std::vector<cplx> band_filter(const std::vector<cplx>& sig, double dt, const std::vector<double>& centers,
                              const FilterParams& p);
std::vector<cplx> t_filter(const std::vector<cplx>& sig, double dt, double center, const FilterParams& p);

//! Combined phi0 + t filter output. `plus`/`minus` hold the filtered f = +1
//! and f = -1 components, laid out [scan][t].
struct FilteredSignal {
  std::vector<double> t;
  std::vector<double> t_ns;
  std::vector<double> phi0;
  std::vector<double> scan;
  std::vector<cplx> plus;
  std::vector<cplx> minus;
  bool separation_ok = true;
  ExperimentConfig meta;

  std::size_t nt() const { return t.size(); }
  //! I~(t, phi0, w_p) = plus exp(-i phi0) + minus exp(+i phi0).
  cplx resynth(std::size_t it, std::size_t ip, std::size_t iw) const;
  //! max |Im I~| / max |Re I~| over the grid.
  double imag_residue() const;
};

FilteredSignal combined_filter(const IntensityGrid& g, const FilterParams& p);
//! Serial reference implementation of combined_filter.
FilteredSignal combined_filter_serial(const IntensityGrid& g, const FilterParams& p);

}  // namespace pnrs
