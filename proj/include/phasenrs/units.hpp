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

namespace pnrs {

inline constexpr double kHbarEvS = 6.582119569e-16;

//! 57Fe parameters; lengths in nm, linewidth in neV, energy in keV.
struct NuclideConstants {
  double number_density = 83.18;
  double wave_number = 73.039;
  double lamb_moessbauer = 0.8;
  double conversion_coeff = 8.56;
  double linewidth_nev = 4.7;
  double energy_kev = 14.4125;

  void validate() const;
};

// Length of one time unit 1/gamma in ns.
double ns_per_time_unit(const NuclideConstants& c);
double ns_to_time(double ns, const NuclideConstants& c);
double time_to_ns(double t, const NuclideConstants& c);
double nev_to_freq(double nev, const NuclideConstants& c);
double freq_to_nev(double w, const NuclideConstants& c);

//! Thickness parameter b (units of gamma) of a foil of thickness d_um.
double thickness_param(double d_um, const NuclideConstants& c);

}  // namespace pnrs
