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

#include "phasenrs/evaluation.hpp"
#include "phasenrs/pipeline.hpp"

namespace pnrs {

//! SHA-256 hex digest.
std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

// CSV output uses 17 significant digits.
std::string intensity_csv(const IntensityGrid& g);
std::string events_csv(const std::vector<EventRecord>& ev);
std::string filtered_csv(const FilteredSignal& fs);
std::string spectrum_csv(const RecoveredSpectrum& s);
std::string sweep_csv(const SweepResult& s);

//! Grid metadata plus values; doubles round-trip bit-exactly.
std::string intensity_json(const IntensityGrid& g, const std::string& config_text);
std::string spectrum_json(const RecoveredSpectrum& s);
std::string sweep_json(const SweepResult& s);

struct LoadedGrid {
  IntensityGrid grid;
  std::string config_text;
};
//! Reads intensity.json from a directory (or file) and cross-checks
//! intensity.csv when present. Throws DataMismatch on disagreement.
LoadedGrid load_grid(const std::string& path);
IntensityGrid intensity_from_json(const std::string& text, std::string* config_text = nullptr);
RecoveredSpectrum spectrum_from_json(const std::string& text);

std::string spectrum_svg(const RecoveredSpectrum& s, bool phase);
std::string sweep_svg(const SweepResult& s);

//! Manifest of a run: config snapshot, seed, version, timestamps, outputs.
class RunManifest {
 public:
  RunManifest(std::string command, std::string config_text, std::uint64_t seed);
  void add_output(const std::string& path);
  void set_tally(const std::string& key, double value);
  void add_warning(const std::string& w);
  //! Writes manifest.json into dir.
  void write(const std::string& dir) const;
  std::string json(bool with_time) const;

 private:
  std::string command_;
  std::string config_text_;
  std::uint64_t seed_;
  std::string started_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::vector<std::pair<std::string, double>> tallies_;
  std::vector<std::string> warnings_;
};

}  // namespace pnrs
