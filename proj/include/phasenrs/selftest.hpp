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

#include <functional>
#include <string>
#include <vector>

#include "phasenrs/detector.hpp"

namespace pnrs {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

//! Invariant suite run by the selftest command.
std::vector<CheckResult> run_selftest(const std::function<void(const CheckResult&)>& on_result = {});

//! Band-limited Parseval check on a grid: phi0 harmonics above the motion's
//! bandwidth must carry no energy.
CheckResult parseval_check(const IntensityGrid& g);

}  // namespace pnrs
