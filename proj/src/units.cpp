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

#include "phasenrs/units.hpp"

#include <cmath>

#include "phasenrs/core.hpp"

namespace pnrs {

void NuclideConstants::validate() const {
  if (!(number_density > 0 && wave_number > 0 && lamb_moessbauer > 0 && conversion_coeff > 0 &&
        linewidth_nev > 0 && energy_kev > 0))
    throw DomainError("nuclide constants must be strictly positive");
  if (lamb_moessbauer > 1.0) throw DomainError("Lamb-Moessbauer factor must lie in (0, 1]");
}

double ns_per_time_unit(const NuclideConstants& c) { return kHbarEvS / (c.linewidth_nev * 1e-9) * 1e9; }
double ns_to_time(double ns, const NuclideConstants& c) { return ns / ns_per_time_unit(c); }
double time_to_ns(double t, const NuclideConstants& c) { return t * ns_per_time_unit(c); }
double nev_to_freq(double nev, const NuclideConstants& c) { return nev / c.linewidth_nev; }
double freq_to_nev(double w, const NuclideConstants& c) { return w * c.linewidth_nev; }

double thickness_param(double d_um, const NuclideConstants& c) {
  if (!(d_um >= 0)) throw DomainError("thickness must be non-negative");
  const double d_nm = d_um * 1e3;
  return kPi * c.number_density * c.lamb_moessbauer * d_nm /
         (c.wave_number * c.wave_number * (c.conversion_coeff + 1.0));
}

}  // namespace pnrs
