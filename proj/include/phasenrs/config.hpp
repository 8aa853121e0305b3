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
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pnrs {

// Config grammar (one statement per line, '#' starts a comment):
//   section := '[' name ']'
//   entry   := key '=' value
//   value   := number | 'true' | 'false' | string | '[' value (',' value)* ']'
//   string  := '"' chars '"' | bare word
// Integers without '.', 'e' or 'E' are typed as integers.

struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;

struct ConfigValue {
  std::variant<std::int64_t, double, bool, std::string, ConfigArray> v;
  int line = 0;

  bool is_number() const { return v.index() <= 1; }
  bool is_int() const { return v.index() == 0; }
  bool is_bool() const { return v.index() == 2; }
  bool is_string() const { return v.index() == 3; }
  bool is_array() const { return v.index() == 4; }
  double as_number() const;
  std::int64_t as_int() const;
  bool as_bool() const;
  const std::string& as_string() const;
  const ConfigArray& as_array() const;
  std::vector<double> as_numbers() const;

  bool operator==(const ConfigValue& o) const;
};

//! Error with the offending line, section and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string section, std::string key, const std::string& msg);
  int line;
  std::string section;
  std::string key;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, ConfigValue>> entries;

  const ConfigValue* find(const std::string& key) const;
};

class ConfigDoc {
 public:
  static ConfigDoc parse(const std::string& text);
  static ConfigDoc load(const std::string& path);
  std::string serialize() const;

  const ConfigSection* section(const std::string& name) const;
  ConfigSection& section_mut(const std::string& name);
  const std::vector<ConfigSection>& sections() const { return sections_; }
  void set(const std::string& section, const std::string& key, ConfigValue v);

  bool operator==(const ConfigDoc& o) const;

 private:
  std::vector<ConfigSection> sections_;
};

std::string format_double(double x);

}  // namespace pnrs
