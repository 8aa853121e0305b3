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

#include "phasenrs/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pnrs {

double ConfigValue::as_number() const {
  if (is_int()) return static_cast<double>(std::get<std::int64_t>(v));
  if (v.index() == 1) return std::get<double>(v);
  throw ConfigError(line, "", "", "expected a number");
}

std::int64_t ConfigValue::as_int() const {
  if (is_int()) return std::get<std::int64_t>(v);
  if (v.index() == 1) {
    const double d = std::get<double>(v);
    if (std::nearbyint(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  throw ConfigError(line, "", "", "expected an integer");
}

bool ConfigValue::as_bool() const {
  if (!is_bool()) throw ConfigError(line, "", "", "expected true or false");
  return std::get<bool>(v);
}

const std::string& ConfigValue::as_string() const {
  if (!is_string()) throw ConfigError(line, "", "", "expected a string");
  return std::get<std::string>(v);
}

const ConfigArray& ConfigValue::as_array() const {
  if (!is_array()) throw ConfigError(line, "", "", "expected an array");
  return std::get<ConfigArray>(v);
}

std::vector<double> ConfigValue::as_numbers() const {
  std::vector<double> out;
  if (is_number()) {
    out.push_back(as_number());
    return out;
  }
  for (const auto& e : as_array()) out.push_back(e.as_number());
  return out;
}

bool ConfigValue::operator==(const ConfigValue& o) const {
  if (v.index() != o.v.index()) return false;
  if (v.index() == 1) {
    const double a = std::get<double>(v), b = std::get<double>(o.v);
    return a == b || (std::isnan(a) && std::isnan(b));
  }
  return v == o.v;
}

namespace {

std::string error_text(int line, const std::string& section, const std::string& key, const std::string& msg) {
  std::ostringstream os;
  os << "config";
  if (line > 0) os << " line " << line;
  if (!section.empty()) os << " [" << section << "]";
  if (!key.empty()) os << " " << key;
  os << ": " << msg;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(int line_, std::string section_, std::string key_, const std::string& msg)
    : std::runtime_error(error_text(line_, section_, key_, msg)),
      line(line_),
      section(std::move(section_)),
      key(std::move(key_)) {}

const ConfigValue* ConfigSection::find(const std::string& key) const {
  for (const auto& [k, val] : entries)
    if (k == key) return &val;
  return nullptr;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (quoted && s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      quoted = !quoted;
    } else if (s[i] == '#' && !quoted) {
      return s.substr(0, i);
    }
  }
  return s;
}

class ValueParser {
 public:
  ValueParser(const std::string& s, int line, const std::string& sec, const std::string& key)
      : s_(s), line_(line), sec_(sec), key_(key) {}

  ConfigValue parse_all() {
    ConfigValue v = value();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(line_, sec_, key_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  ConfigValue value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    ConfigValue out;
    out.line = line_;
    const char c = s_[pos_];
    if (c == '[') {
      ++pos_;
      ConfigArray arr;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
      } else {
        for (;;) {
          arr.push_back(value());
          skip_ws();
          if (pos_ >= s_.size()) fail("unterminated array");
          if (s_[pos_] == ',') {
            ++pos_;
          } else if (s_[pos_] == ']') {
            ++pos_;
            break;
          } else {
            fail("expected ',' or ']' in array");
          }
        }
      }
      out.v = std::move(arr);
      return out;
    }
    if (c == '"') {
      ++pos_;
      std::string str;
      for (;;) {
        if (pos_ >= s_.size()) fail("unterminated string");
        const char d = s_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= s_.size()) fail("dangling escape");
          const char e = s_[pos_++];
          if (e == 'n') str += '\n';
          else if (e == '"' || e == '\\') str += e;
          else fail("unknown escape");
        } else {
          str += d;
        }
      }
      out.v = std::move(str);
      return out;
    }
    std::size_t end = pos_;
    while (end < s_.size() && s_[end] != ',' && s_[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(s_[end])))
      ++end;
    const std::string tok = s_.substr(pos_, end - pos_);
    pos_ = end;
    if (tok == "true" || tok == "false") {
      out.v = tok == "true";
      return out;
    }
    if (tok == "nan" || tok == "inf" || tok == "-inf") {
      out.v = tok == "nan" ? std::nan("") : (tok[0] == '-' ? -HUGE_VAL : HUGE_VAL);
      return out;
    }
    const bool floaty = tok.find_first_of(".eE") != std::string::npos;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    if (!tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '-' || tok[0] == '+' ||
                         tok[0] == '.')) {
      if (*b == '+') ++b;
      if (!floaty) {
        std::int64_t i = 0;
        const auto r = std::from_chars(b, e, i);
        if (r.ec == std::errc() && r.ptr == e) {
          out.v = i;
          return out;
        }
      }
      double d = 0.0;
      const auto r = std::from_chars(b, e, d);
      if (r.ec == std::errc() && r.ptr == e) {
        out.v = d;
        return out;
      }
      fail("malformed number '" + tok + "'");
    }
    if (tok.empty() || !is_ident_start(tok[0])) fail("malformed value '" + tok + "'");
    for (char ch : tok)
      if (!is_ident(ch)) fail("malformed value '" + tok + "'");
    out.v = tok;
    return out;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  const std::string& sec_;
  const std::string& key_;
};

}  // namespace

ConfigDoc ConfigDoc::parse(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  ConfigSection* cur = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(lineno, "", "", "malformed section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty() || !is_ident_start(name[0])) throw ConfigError(lineno, "", "", "malformed section name");
      for (char c : name)
        if (!is_ident(c)) throw ConfigError(lineno, "", "", "malformed section name");
      if (doc.section(name)) throw ConfigError(lineno, name, "", "duplicate section");
      doc.sections_.push_back(ConfigSection{name, lineno, {}});
      cur = &doc.sections_.back();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, cur ? cur->name : "", "", "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (!cur) throw ConfigError(lineno, "", key, "entry outside of any section");
    if (key.empty() || !is_ident_start(key[0])) throw ConfigError(lineno, cur->name, key, "malformed key");
    for (char c : key)
      if (!is_ident(c)) throw ConfigError(lineno, cur->name, key, "malformed key");
    if (cur->find(key)) throw ConfigError(lineno, cur->name, key, "duplicate key");
    const std::string rhs = s.substr(eq + 1);
    cur->entries.emplace_back(key, ValueParser(rhs, lineno, cur->name, key).parse_all());
  }
  return doc;
}

ConfigDoc ConfigDoc::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(0, "", "", "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write_value(std::ostream& os, const ConfigValue& v) {
  switch (v.v.index()) {
    case 0: os << std::get<std::int64_t>(v.v); break;
    case 1: os << format_double(std::get<double>(v.v)); break;
    case 2: os << (std::get<bool>(v.v) ? "true" : "false"); break;
    case 3: {
      os << '"';
      for (char c : std::get<std::string>(v.v)) {
        if (c == '"' || c == '\\') os << '\\' << c;
        else if (c == '\n') os << "\\n";
        else os << c;
      }
      os << '"';
      break;
    }
    default: {
      os << '[';
      const auto& arr = std::get<ConfigArray>(v.v);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) os << ", ";
        write_value(os, arr[i]);
      }
      os << ']';
    }
  }
}

}  // namespace

std::string ConfigDoc::serialize() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i) os << '\n';
    os << '[' << sections_[i].name << "]\n";
    for (const auto& [k, v] : sections_[i].entries) {
      os << k << " = ";
      write_value(os, v);
      os << '\n';
    }
  }
  return os.str();
}

const ConfigSection* ConfigDoc::section(const std::string& name) const {
  for (const auto& s : sections_)
    if (s.name == name) return &s;
  return nullptr;
}

ConfigSection& ConfigDoc::section_mut(const std::string& name) {
  for (auto& s : sections_)
    if (s.name == name) return s;
  sections_.push_back(ConfigSection{name, 0, {}});
  return sections_.back();
}

void ConfigDoc::set(const std::string& section, const std::string& key, ConfigValue v) {
  ConfigSection& s = section_mut(section);
  for (auto& [k, val] : s.entries)
    if (k == key) {
      val = std::move(v);
      return;
    }
  s.entries.emplace_back(key, std::move(v));
}

bool ConfigDoc::operator==(const ConfigDoc& o) const {
  if (sections_.size() != o.sections_.size()) return false;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    const auto& a = sections_[i];
    const auto& b = o.sections_[i];
    if (a.name != b.name || a.entries.size() != b.entries.size()) return false;
    for (std::size_t j = 0; j < a.entries.size(); ++j)
      if (a.entries[j].first != b.entries[j].first || !(a.entries[j].second == b.entries[j].second)) return false;
  }
  return true;
}

}  // namespace pnrs
