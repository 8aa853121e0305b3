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

#include <cstdint>
#include <string>
#include <vector>

#include "phasenrs/config.hpp"
#include "phasenrs/evaluation.hpp"

namespace pnrs {

//! A validated experiment description built from a ConfigDoc.
struct RunConfig {
  ConfigDoc doc;
  std::string preset;
  ExperimentConfig experiment;
  double epsilon = 0.1;
  double t1_ns = 15.0;
  double t2_ns = 110.0;
  FilterParams filter;
  PhaseOptions phase;
  double doppler_thickness_um = 3.0;
  std::vector<double> thickness_grid_um;
  std::vector<double> sweep_t1_ns;
  std::vector<double> sweep_t2_ns;
  bool write_csv = true;
  bool write_json = true;
  bool write_svg = false;
  bool write_events = false;
  double mean_counts = 1e7;
  std::uint64_t seed = 1;
  std::vector<std::string> warnings;
};

//! Throws ConfigError naming the section/key at fault.
RunConfig build_run_config(const ConfigDoc& doc);
RunConfig load_run_config(const std::string& path);
//! Default config text for a target preset.
std::string default_config_text(const std::string& preset);

//! SHA-256 of the canonical config serialization.
std::string config_hash(const ConfigDoc& doc);

//! Constant-velocity experiment over the same detunings S - w_p.
ExperimentConfig doppler_experiment(const RunConfig& rc, double thickness_um);

struct PhantasyRun {
  IntensityGrid grid;
  FilteredSignal filtered;
  FitResult fit;
};
PhantasyRun run_phantasy(const RunConfig& rc);
FitResult fit_grid(const IntensityGrid& g, const FilterParams& p);

}  // namespace pnrs
