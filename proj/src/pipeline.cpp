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

#include "phasenrs/pipeline.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "phasenrs/bessel.hpp"
#include "phasenrs/io.hpp"

namespace pnrs {

namespace {

std::string bare_message(const ConfigError& e) {
  const std::string w = e.what();
  const auto k = w.find(": ");
  return k == std::string::npos ? w : w.substr(k + 2);
}

// Typed access to one section; every key read is recorded so leftovers can be
// reported as unknown.
class SectionReader {
 public:
  SectionReader(const ConfigDoc& doc, std::string name, bool required) : name_(std::move(name)) {
    s_ = doc.section(name_);
    if (!s_ && required) throw ConfigError(0, name_, "", "missing required section [" + name_ + "]");
  }

  bool present() const { return s_ != nullptr; }
  bool has(const std::string& key) const { return s_ && s_->find(key); }

  double num(const std::string& key, double def) { return get(key, def, [](const ConfigValue& v) { return v.as_number(); }); }
  long integer(const std::string& key, long def) {
    return get(key, def, [](const ConfigValue& v) { return static_cast<long>(v.as_int()); });
  }
  bool boolean(const std::string& key, bool def) { return get(key, def, [](const ConfigValue& v) { return v.as_bool(); }); }
  std::string str(const std::string& key, const std::string& def) {
    return get(key, def, [](const ConfigValue& v) { return v.as_string(); });
  }
  std::vector<double> numbers(const std::string& key, const std::vector<double>& def) {
    return get(key, def, [](const ConfigValue& v) { return v.as_numbers(); });
  }
  //! Array of fixed-length numeric rows.
  std::vector<std::vector<double>> rows(const std::string& key, std::size_t width) {
    std::vector<std::vector<double>> out;
    const ConfigValue* v = lookup(key);
    if (!v) return out;
    try {
      for (const auto& row : v->as_array()) {
        out.push_back(row.as_numbers());
        if (out.back().size() != width)
          throw ConfigError(row.line, name_, key, "each row needs " + std::to_string(width) + " numbers");
      }
    } catch (const ConfigError& e) {
      if (!e.key.empty()) throw;
      throw ConfigError(v->line, name_, key, "expected an array of numeric rows");
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const ConfigValue* v = s_ ? s_->find(key) : nullptr;
    throw ConfigError(v ? v->line : (s_ ? s_->line : 0), name_, key, msg);
  }

  void finish() const {
    if (!s_) return;
    for (const auto& [k, v] : s_->entries)
      if (!used_.count(k)) throw ConfigError(v.line, name_, k, "unknown key");
  }

 private:
  const ConfigValue* lookup(const std::string& key) {
    used_.insert(key);
    return s_ ? s_->find(key) : nullptr;
  }

  template <class T, class F>
  T get(const std::string& key, const T& def, F conv) {
    const ConfigValue* v = lookup(key);
    if (!v) return def;
    try {
      return conv(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(v->line, name_, key, bare_message(e));
    }
  }

  const ConfigSection* s_ = nullptr;
  std::string name_;
  std::set<std::string> used_;
};

std::vector<double> arange(double lo, double hi, double step) {
  std::vector<double> v;
  const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

TargetModel read_target(SectionReader& r, std::string& preset) {
  preset = r.str("preset", "");
  const std::string kind = r.str("kind", preset.empty() ? "" : "preset");
  try {
    if (kind == "preset") {
      if (preset.empty()) r.fail("preset", "kind = preset needs a preset name");
      return target_preset(preset);
    }
    if (kind == "absorptive") {
      std::vector<std::array<double, 3>> spec;
      for (const auto& row : r.rows("lines", 3)) spec.push_back({row[0], row[1], row[2]});
      if (spec.empty()) r.fail("lines", "absorptive target needs lines = [[center, width, weight], ...]");
      return absorptive_lines(spec, r.num("peak", 0.95));
    }
    if (kind == "rational") {
      RationalModel m;
      const auto c0 = r.numbers("c0", {0.0, 0.0});
      if (c0.size() != 2) r.fail("c0", "c0 must be [re, im]");
      m.c0 = {c0[0], c0[1]};
      for (const auto& row : r.rows("lines", 4)) m.lines.push_back({{row[0], row[1]}, row[2], row[3]});
      return TargetModel(m);
    }
    if (kind == "exponential") {
      ExponentialModel m;
      m.width = r.num("width", 1.0);
      for (const auto& row : r.rows("lines", 2)) m.lines.push_back({row[0], row[1]});
      return TargetModel(m);
    }
  } catch (const DomainError& e) {
    r.fail(preset.empty() ? "kind" : "preset", e.what());
  }
  r.fail("kind", "target needs preset = <name> or kind = absorptive|rational|exponential");
}

}  // namespace

RunConfig build_run_config(const ConfigDoc& doc) {
  static const std::set<std::string> known = {"nuclide", "analyzer", "target", "motion",
                                              "scan",    "window",   "filter", "output"};
  for (const auto& s : doc.sections())
    if (!known.count(s.name)) throw ConfigError(s.line, s.name, "", "unknown section");

  RunConfig rc;
  rc.doc = doc;
  ExperimentConfig& ex = rc.experiment;

  SectionReader nuc(doc, "nuclide", false);
  ex.nuclide.number_density = nuc.num("number_density", ex.nuclide.number_density);
  ex.nuclide.wave_number = nuc.num("wave_number", ex.nuclide.wave_number);
  ex.nuclide.lamb_moessbauer = nuc.num("lamb_moessbauer", ex.nuclide.lamb_moessbauer);
  ex.nuclide.conversion_coeff = nuc.num("conversion_coeff", ex.nuclide.conversion_coeff);
  ex.nuclide.linewidth_nev = nuc.num("linewidth_nev", ex.nuclide.linewidth_nev);
  ex.nuclide.energy_kev = nuc.num("energy_kev", ex.nuclide.energy_kev);
  nuc.finish();
  try {
    ex.nuclide.validate();
  } catch (const DomainError& e) {
    throw ConfigError(0, "nuclide", "", e.what());
  }

  SectionReader ana(doc, "analyzer", false);
  if (ana.has("b") && ana.has("thickness_um")) ana.fail("b", "give either b or thickness_um, not both");
  if (ana.has("thickness_um")) {
    const double d = ana.num("thickness_um", 0.0);
    if (d < 0) ana.fail("thickness_um", "thickness must be >= 0");
    ex.analyzer.b = thickness_param(d, ex.nuclide);
  } else {
    ex.analyzer.b = ana.num("b", 0.5);
  }
  ex.analyzer.linewidth = ana.num("linewidth", 1.0);
  ex.analyzer.offset = ana.num("offset", 0.0);
  rc.doppler_thickness_um = ana.num("doppler_thickness_um", 3.0);
  rc.thickness_grid_um = ana.numbers("thickness_grid_um", {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0});
  ana.finish();
  try {
    ex.analyzer.validate();
  } catch (const DomainError& e) {
    ana.fail("b", e.what());
  }
  for (double d : rc.thickness_grid_um)
    if (d < 0) ana.fail("thickness_grid_um", "thickness must be >= 0");

  SectionReader tgt(doc, "target", true);
  ex.target = read_target(tgt, rc.preset);
  rc.epsilon = tgt.num("epsilon", 0.1);
  tgt.finish();
  if (!(rc.epsilon > 0 && rc.epsilon <= 0.1)) tgt.fail("epsilon", "epsilon must lie in (0, 0.1]");
  try {
    ex.support_l = target_support_halfwidth(ex.target, rc.epsilon);
  } catch (const DomainError& e) {
    tgt.fail("epsilon", e.what());
  }
  const double l = ex.support_l;

  SectionReader mot(doc, "motion", false);
  try {
    ex.motion = motion_kind_from_name(mot.str("kind", "harmonic"));
  } catch (const DomainError& e) {
    mot.fail("kind", e.what());
  }
  ex.p = mot.num("p", first_j0_zero());
  ex.sideband_tol = mot.num("sideband_tol", 1e-12);
  mot.finish();
  if (!(ex.p >= 0)) mot.fail("p", "modulation amplitude must be >= 0");
  if (!(ex.sideband_tol > 0 && ex.sideband_tol < 1)) mot.fail("sideband_tol", "tolerance must lie in (0, 1)");

  SectionReader sc(doc, "scan", false);
  if (sc.has("offset_S") && sc.has("offset_l")) sc.fail("offset_S", "give either offset_S or offset_l, not both");
  ex.offset_S = sc.has("offset_S") ? sc.num("offset_S", 0.0) : sc.num("offset_l", 6.0) * l;
  ex.phases = static_cast<int>(sc.integer("phases", 32));
  if (sc.has("omega_p")) {
    ex.scan = sc.numbers("omega_p", {});
    if (ex.scan.empty()) sc.fail("omega_p", "scan list is empty");
    (void)sc.integer("count", 0);
    (void)sc.num("span_l", 0.0);
  } else {
    const long count = sc.integer("count", 161);
    const double span = sc.num("span_l", 1.2) * l;
    if (count < 2) sc.fail("count", "count must be >= 2");
    if (!(span > 0)) sc.fail("span_l", "span must be > 0");
    for (long i = 0; i < count; ++i)
      ex.scan.push_back(ex.offset_S - span + 2.0 * span * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  sc.finish();
  const SeparationReport sep = check_separation(ex.offset_S, l);
  ex.separation_ok = sep.ok;
  if (!sep.ok) {
    std::ostringstream os;
    os << "separation condition violated: S = " << ex.offset_S << " <= 5 l = " << 5 * l;
    rc.warnings.push_back(os.str());
  }

  SectionReader win(doc, "window", false);
  ex.t_min_ns = win.num("t_min_ns", 15.0);
  ex.t_max_ns = win.num("t_max_ns", 192.0);
  ex.dt_ns = win.num("dt_ns", 0.25);
  rc.t1_ns = win.num("t1_ns", 15.0);
  rc.t2_ns = win.num("t2_ns", 110.0);
  rc.sweep_t1_ns = win.numbers("sweep_t1_ns", arange(15, 60, 5));
  rc.sweep_t2_ns = win.numbers("sweep_t2_ns", arange(70, 190, 10));
  const long fsize = win.integer("fft_size", 1L << 16);
  if (fsize <= 0) win.fail("fft_size", "fft_size must be positive");
  ex.fft_size = static_cast<std::size_t>(fsize);
  ex.fft_oversample = static_cast<int>(win.integer("fft_oversample", 4));
  win.finish();
  if (!(rc.t2_ns > rc.t1_ns)) win.fail("t2_ns", "t2 must be greater than t1");
  if (rc.t1_ns < ex.t_min_ns || rc.t2_ns > ex.t_max_ns) win.fail("t1_ns", "[t1, t2] must lie inside [t_min, t_max]");
  if (rc.sweep_t1_ns.empty() || rc.sweep_t2_ns.empty()) win.fail("sweep_t1_ns", "sweep axes must not be empty");

  SectionReader fil(doc, "filter", false);
  rc.filter.S = ex.offset_S;
  rc.filter.l = l;
  try {
    rc.filter.mask = mask_kind_from_name(fil.str("mask", "erf"));
  } catch (const DomainError& e) {
    fil.fail("mask", e.what());
  }
  if (fil.has("band_halfwidth") && fil.has("band_halfwidth_l"))
    fil.fail("band_halfwidth", "give either band_halfwidth or band_halfwidth_l, not both");
  rc.filter.band_halfwidth =
      fil.has("band_halfwidth") ? fil.num("band_halfwidth", l) : fil.num("band_halfwidth_l", 1.0) * l;
  rc.filter.edge_fraction = fil.num("edge_fraction", 0.25);
  rc.phase.unwrap_pi = fil.boolean("unwrap_pi", true);
  rc.phase.align = fil.boolean("align", true);
  rc.phase.d_floor = fil.num("d_floor", 1e-3);
  fil.finish();
  try {
    rc.filter.validate();
  } catch (const DomainError& e) {
    fil.fail("band_halfwidth", e.what());
  }
  if (!(rc.phase.d_floor >= 0 && rc.phase.d_floor < 1)) fil.fail("d_floor", "d_floor must lie in [0, 1)");

  SectionReader out(doc, "output", false);
  rc.write_csv = out.boolean("csv", true);
  rc.write_json = out.boolean("json", true);
  rc.write_svg = out.boolean("svg", false);
  rc.write_events = out.boolean("events", false);
  rc.mean_counts = out.num("mean_counts", 1e7);
  const long seed = out.integer("seed", 1);
  out.finish();
  if (seed < 0) out.fail("seed", "seed must be >= 0");
  rc.seed = static_cast<std::uint64_t>(seed);
  if (!(rc.mean_counts > 0)) out.fail("mean_counts", "mean_counts must be > 0");

  try {
    ex.validate();
  } catch (const DomainError& e) {
    throw ConfigError(0, "scan", "", e.what());
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) { return build_run_config(ConfigDoc::load(path)); }

std::string default_config_text(const std::string& preset) {
  (void)target_preset(preset);
  std::ostringstream os;
  os << "# phasenrs experiment\n"
        "[nuclide]\n"
        "linewidth_nev = 4.7\n"
        "energy_kev = 14.4125\n"
        "\n"
        "[analyzer]\n"
        "b = 0.5\n"
        "linewidth = 1.0\n"
        "doppler_thickness_um = 3.0\n"
        "\n"
        "[target]\n"
        "preset = \""
     << preset
     << "\"\n"
        "epsilon = 0.1\n"
        "\n"
        "[motion]\n"
        "kind = \"harmonic\"\n"
        "\n"
        "[scan]\n"
        "offset_l = 6.0\n"
        "count = 161\n"
        "span_l = 1.2\n"
        "phases = 32\n"
        "\n"
        "[window]\n"
        "t_min_ns = 15.0\n"
        "t_max_ns = 192.0\n"
        "dt_ns = 0.25\n"
        "t1_ns = 15.0\n"
        "t2_ns = 110.0\n"
        "\n"
        "[filter]\n"
        "mask = \"erf\"\n"
        "band_halfwidth_l = 1.0\n"
        "\n"
        "[output]\n"
        "csv = true\n"
        "json = true\n"
        "svg = false\n"
        "seed = 1\n";
  return os.str();
}

std::string config_hash(const ConfigDoc& doc) { return sha256_hex(doc.serialize()); }

ExperimentConfig doppler_experiment(const RunConfig& rc, double thickness_um) {
  ExperimentConfig c = rc.experiment;
  c.motion = MotionKind::constant_velocity;
  c.analyzer.b = thickness_param(thickness_um, c.nuclide);
  c.p = 0.0;
  return c;
}

FitResult fit_grid(const IntensityGrid& g, const FilterParams& p) { return cosine_fit(combined_filter(g, p)); }

PhantasyRun run_phantasy(const RunConfig& rc) {
  PhantasyRun r;
  r.grid = detector_intensity(rc.experiment);
  r.filtered = combined_filter(r.grid, rc.filter);
  r.fit = cosine_fit(r.filtered);
  return r;
}

}  // namespace pnrs
