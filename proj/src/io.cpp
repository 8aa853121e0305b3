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

#include "phasenrs/io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pnrs {

using nlohmann::json;
namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataMismatch("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

void write_file(const std::string& path, const std::string& data) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << data;
  if (!f) throw std::runtime_error("write failed for " + path);
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_num(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw DataMismatch("malformed number '" + s + "' in CSV");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  return out;
}

json array_or_null(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return a;
}

std::vector<double> doubles_from(const json& a) {
  std::vector<double> v;
  for (const auto& x : a) v.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN() : x.get<double>());
  return v;
}

}  // namespace

std::string intensity_csv(const IntensityGrid& g) {
  std::string s = "scan,phi0";
  for (double t : g.t_ns) s += "," + num(t);
  s += '\n';
  for (std::size_t iw = 0; iw < g.nscan(); ++iw)
    for (std::size_t ip = 0; ip < g.nphi(); ++ip) {
      s += num(g.scan[iw]) + "," + num(g.phi0[ip]);
      const double* v = &g.values[g.index(0, ip, iw)];
      for (std::size_t it = 0; it < g.nt(); ++it) {
        s += ',';
        s += num(v[it]);
      }
      s += '\n';
    }
  return s;
}

std::string events_csv(const std::vector<EventRecord>& ev) {
  std::string s = "t_ns,phi0,scan,p\n";
  for (const auto& e : ev) s += num(e.t_ns) + "," + num(e.phi0) + "," + num(e.scan) + "," + num(e.p) + "\n";
  return s;
}

std::string filtered_csv(const FilteredSignal& f) {
  std::string s = "scan,t_ns,plus_re,plus_im,minus_re,minus_im\n";
  for (std::size_t iw = 0; iw < f.scan.size(); ++iw)
    for (std::size_t it = 0; it < f.nt(); ++it) {
      const std::size_t k = iw * f.nt() + it;
      s += num(f.scan[iw]) + "," + num(f.t_ns[it]) + "," + num(f.plus[k].real()) + "," + num(f.plus[k].imag()) + "," +
           num(f.minus[k].real()) + "," + num(f.minus[k].imag()) + "\n";
    }
  return s;
}

std::string spectrum_csv(const RecoveredSpectrum& r) {
  std::string s = "detuning,amplitude_sq,phase\n";
  for (std::size_t i = 0; i < r.detuning.size(); ++i)
    s += num(r.detuning[i]) + "," + num(r.amplitude_sq[i]) + "," + num(i < r.phase.size() ? r.phase[i] : NAN) + "\n";
  return s;
}

std::string sweep_csv(const SweepResult& r) {
  std::string s = "t1_ns";
  for (double t2 : r.t2_ns) s += "," + num(t2);
  s += '\n';
  for (std::size_t i = 0; i < r.t1_ns.size(); ++i) {
    s += num(r.t1_ns[i]);
    for (std::size_t j = 0; j < r.t2_ns.size(); ++j) s += "," + num(r.at(i, j));
    s += '\n';
  }
  return s;
}

std::string intensity_json(const IntensityGrid& g, const std::string& config_text) {
  const ExperimentConfig& m = g.meta;
  json j;
  j["format"] = "phasenrs.intensity";
  j["version"] = 1;
  j["config"] = config_text;
  j["meta"] = {{"motion", motion_kind_name(m.motion)},
               {"offset_S", m.offset_S},
               {"p", m.p},
               {"b", m.analyzer.b},
               {"linewidth", m.analyzer.linewidth},
               {"analyzer_offset", m.analyzer.offset},
               {"phases", m.phases},
               {"t_min_ns", m.t_min_ns},
               {"t_max_ns", m.t_max_ns},
               {"dt_ns", m.dt_ns},
               {"fft_size", m.fft_size},
               {"fft_oversample", m.fft_oversample},
               {"sideband_tol", m.sideband_tol},
               {"support_l", m.support_l},
               {"separation_ok", m.separation_ok}};
  j["t"] = g.t;
  j["t_ns"] = g.t_ns;
  j["phi0"] = g.phi0;
  j["scan"] = g.scan;
  j["values"] = g.values;
  return j.dump() + "\n";
}

IntensityGrid intensity_from_json(const std::string& text, std::string* config_text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataMismatch(std::string("intensity JSON does not parse: ") + e.what());
  }
  if (j.value("format", "") != "phasenrs.intensity") throw DataMismatch("not an intensity grid file");
  IntensityGrid g;
  try {
    const std::string cfg = j.at("config").get<std::string>();
    if (config_text) *config_text = cfg;
    // Target, nuclide and scan come from the embedded config; the rest from meta.
    g.meta = build_run_config(ConfigDoc::parse(cfg)).experiment;
    const json& m = j.at("meta");
    ExperimentConfig& e = g.meta;
    e.motion = motion_kind_from_name(m.at("motion").get<std::string>());
    e.offset_S = m.at("offset_S").get<double>();
    e.p = m.at("p").get<double>();
    e.analyzer.b = m.at("b").get<double>();
    e.analyzer.linewidth = m.at("linewidth").get<double>();
    e.analyzer.offset = m.at("analyzer_offset").get<double>();
    e.phases = m.at("phases").get<int>();
    e.t_min_ns = m.at("t_min_ns").get<double>();
    e.t_max_ns = m.at("t_max_ns").get<double>();
    e.dt_ns = m.at("dt_ns").get<double>();
    e.fft_size = m.at("fft_size").get<std::size_t>();
    e.fft_oversample = m.at("fft_oversample").get<int>();
    e.sideband_tol = m.at("sideband_tol").get<double>();
    e.support_l = m.at("support_l").get<double>();
    e.separation_ok = m.at("separation_ok").get<bool>();
    g.t = j.at("t").get<std::vector<double>>();
    g.t_ns = j.at("t_ns").get<std::vector<double>>();
    g.phi0 = j.at("phi0").get<std::vector<double>>();
    g.scan = j.at("scan").get<std::vector<double>>();
    g.values = j.at("values").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataMismatch(std::string("intensity JSON is incomplete: ") + e.what());
  }
  g.check_consistent();
  const auto ph = g.meta.phase_axis();
  for (std::size_t i = 0; i < ph.size(); ++i)
    if (std::abs(ph[i] - g.phi0[i]) > 1e-12) throw DataMismatch("phase axis values do not match metadata");
  return g;
}

LoadedGrid load_grid(const std::string& path) {
  const fs::path p(path);
  const fs::path jpath = fs::is_directory(p) ? p / "intensity.json" : p;
  LoadedGrid out;
  out.grid = intensity_from_json(read_file(jpath.string()), &out.config_text);
  const fs::path cpath = jpath.parent_path() / "intensity.csv";
  if (fs::exists(cpath)) {
    std::istringstream in(read_file(cpath.string()));
    std::string line;
    const IntensityGrid& g = out.grid;
    if (!std::getline(in, line)) throw DataMismatch("intensity.csv is empty");
    const auto head = split(line);
    if (head.size() != g.nt() + 2) throw DataMismatch("intensity.csv time axis length differs from intensity.json");
    for (std::size_t it = 0; it < g.nt(); ++it)
      if (parse_num(head[it + 2]) != g.t_ns[it]) throw DataMismatch("intensity.csv time axis differs from intensity.json");
    for (std::size_t iw = 0; iw < g.nscan(); ++iw)
      for (std::size_t ip = 0; ip < g.nphi(); ++ip) {
        if (!std::getline(in, line)) throw DataMismatch("intensity.csv has too few rows");
        const auto cells = split(line);
        if (cells.size() != g.nt() + 2 || parse_num(cells[0]) != g.scan[iw] || parse_num(cells[1]) != g.phi0[ip])
          throw DataMismatch("intensity.csv row layout differs from intensity.json");
        for (std::size_t it = 0; it < g.nt(); ++it)
          if (parse_num(cells[it + 2]) != g.at(it, ip, iw))
            throw DataMismatch("intensity.csv values differ from intensity.json");
      }
    if (std::getline(in, line) && !line.empty()) throw DataMismatch("intensity.csv has extra rows");
  }
  return out;
}

std::string spectrum_json(const RecoveredSpectrum& s) {
  json j;
  j["format"] = "phasenrs.spectrum";
  j["method"] = s.method;
  j["t1_ns"] = s.t1_ns;
  j["t2_ns"] = s.t2_ns;
  j["excluded_slices"] = s.excluded_slices;
  j["excluded_cells"] = s.excluded_cells;
  j["detuning"] = s.detuning;
  j["amplitude_sq"] = array_or_null(s.amplitude_sq);
  j["phase"] = array_or_null(s.phase);
  return j.dump(1) + "\n";
}

RecoveredSpectrum spectrum_from_json(const std::string& text) {
  RecoveredSpectrum s;
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "phasenrs.spectrum") throw DataMismatch("not a spectrum file");
    s.method = j.at("method").get<std::string>();
    s.t1_ns = j.at("t1_ns").get<double>();
    s.t2_ns = j.at("t2_ns").get<double>();
    s.excluded_slices = j.at("excluded_slices").get<std::size_t>();
    s.excluded_cells = j.at("excluded_cells").get<std::size_t>();
    s.detuning = j.at("detuning").get<std::vector<double>>();
    s.amplitude_sq = doubles_from(j.at("amplitude_sq"));
    s.phase = doubles_from(j.at("phase"));
  } catch (const json::exception& e) {
    throw DataMismatch(std::string("spectrum JSON is malformed: ") + e.what());
  }
  return s;
}

std::string sweep_json(const SweepResult& s) {
  json j;
  j["format"] = "phasenrs.sweep";
  j["method"] = s.method;
  j["config_sha256"] = s.config_hash;
  j["t1_ns"] = s.t1_ns;
  j["t2_ns"] = s.t2_ns;
  j["error"] = array_or_null(s.error);
  if (!s.thickness_um.empty()) j["thickness_um"] = array_or_null(s.thickness_um);
  j["min_error"] = std::isnan(s.min_error()) ? json(nullptr) : json(s.min_error());
  return j.dump(1) + "\n";
}

namespace {

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return 60 + (x - x0) / (x1 - x0) * 520; }
  double py(double y) const { return 330 - (y - y0) / (y1 - y0) * 300; }
};

std::string svg_open() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"360\" font-family=\"sans-serif\" "
         "font-size=\"11\">\n<rect width=\"600\" height=\"360\" fill=\"white\"/>\n";
}

}  // namespace

std::string spectrum_svg(const RecoveredSpectrum& s, bool phase) {
  const std::vector<double>& y = phase ? s.phase : s.amplitude_sq;
  Frame f{s.detuning.empty() ? 0.0 : s.detuning.front(), s.detuning.empty() ? 1.0 : s.detuning.back(),
          phase ? -kPi : 0.0, phase ? kPi : 1.05};
  if (f.x1 <= f.x0) f.x1 = f.x0 + 1;
  std::ostringstream os;
  os << svg_open();
  os << "<rect x=\"60\" y=\"30\" width=\"520\" height=\"300\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"320\" y=\"352\" text-anchor=\"middle\">detuning (gamma)</text>\n";
  os << "<text x=\"60\" y=\"20\">" << (phase ? "phase (rad)" : "|R|^2 (normalized)") << " [" << s.method << ", "
     << s.t1_ns << "-" << s.t2_ns << " ns]</text>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < y.size() && i < s.detuning.size(); ++i)
    if (std::isfinite(y[i])) os << f.px(s.detuning[i]) << "," << f.py(y[i]) << " ";
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::string sweep_svg(const SweepResult& s) {
  std::ostringstream os;
  os << svg_open();
  const double lo = s.min_error();
  double hi = lo;
  for (double e : s.error)
    if (!std::isnan(e)) hi = std::max(hi, e);
  const double w = 520.0 / static_cast<double>(s.t2_ns.size()), h = 300.0 / static_cast<double>(s.t1_ns.size());
  for (std::size_t i = 0; i < s.t1_ns.size(); ++i)
    for (std::size_t j = 0; j < s.t2_ns.size(); ++j) {
      const double e = s.at(i, j);
      std::string fill = "#dddddd";
      if (!std::isnan(e)) {
        const double u = hi > lo ? std::log(e / lo) / std::log(hi / lo) : 0.0;
        const int c = static_cast<int>(std::lround(255 * std::clamp(u, 0.0, 1.0)));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c, c / 2, 255 - c);
        fill = buf;
      }
      os << "<rect x=\"" << 60 + w * static_cast<double>(j) << "\" y=\"" << 30 + h * static_cast<double>(i)
         << "\" width=\"" << w << "\" height=\"" << h << "\" fill=\"" << fill << "\"/>\n";
    }
  os << "<text x=\"320\" y=\"352\" text-anchor=\"middle\">t2 (ns) " << s.t2_ns.front() << " .. " << s.t2_ns.back()
     << "</text>\n<text x=\"60\" y=\"20\">" << s.method << " error, t1 (ns) " << s.t1_ns.front() << " .. "
     << s.t1_ns.back() << " downward</text>\n</svg>\n";
  return os.str();
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunManifest::RunManifest(std::string command, std::string config_text, std::uint64_t seed)
    : command_(std::move(command)), config_text_(std::move(config_text)), seed_(seed), started_(utc_now()) {}

void RunManifest::add_output(const std::string& path) {
  outputs_.emplace_back(fs::path(path).filename().string(), sha256_file(path));
}

void RunManifest::set_tally(const std::string& key, double value) {
  for (auto& [k, v] : tallies_)
    if (k == key) {
      v = value;
      return;
    }
  tallies_.emplace_back(key, value);
}

void RunManifest::add_warning(const std::string& w) { warnings_.push_back(w); }

std::string RunManifest::json(bool with_time) const {
  nlohmann::ordered_json j;
  j["tool"] = "phasenrs";
  j["version"] = PHASENRS_VERSION;
  j["command"] = command_;
  j["seed"] = seed_;
  j["config"] = config_text_;
  j["config_sha256"] = sha256_hex(config_text_);
  if (with_time) {
    j["started"] = started_;
    j["finished"] = utc_now();
  }
  auto outs = nlohmann::ordered_json::array();
  for (const auto& [name, hash] : outputs_) outs.push_back({{"file", name}, {"sha256", hash}});
  j["outputs"] = outs;
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (const auto& [k, v] : tallies_) t[k] = v;
  j["tallies"] = t;
  j["warnings"] = warnings_;
  return j.dump(1) + "\n";
}

void RunManifest::write(const std::string& dir) const { write_file((fs::path(dir) / "manifest.json").string(), json(true)); }

}  // namespace pnrs
