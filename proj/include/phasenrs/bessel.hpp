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

//! Bessel function of the first kind J_n(x) for integer n and |x| <= 1000.
//! Ascending series for |x| < 12, Miller downward recurrence with
//! sum-rule normalization otherwise. Absolute error <= 1e-12.
double bessel_j(int n, double x);

//! Smallest positive root of J_0.
double first_j0_zero();

}  // namespace pnrs
