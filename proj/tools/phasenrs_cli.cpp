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

// phasenrs command-line front end.

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "phasenrs/io.hpp"
#include "phasenrs/selftest.hpp"

namespace fs = std::filesystem;
using namespace pnrs;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kConfig = 2, kMismatch = 3, kContract = 4 };

struct Options {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::string method = "phantasy";
  std::optional<double> t1, t2;
  int threads = 0;
  std::string grid;
};

std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void emit(RunManifest& man, const std::string& dir, const std::string& name, const std::string& data) {
  const std::string p = path_in(dir, name);
  write_file(p, data);
  man.add_output(p);
}

RunConfig load(const Options& o) {
  if (o.config.empty()) throw ConfigError(0, "", "", "--config is required");
  RunConfig rc = load_run_config(o.config);
  if (o.seed) rc.seed = *o.seed;
  for (const auto& w : rc.warnings) std::cerr << "warning: " << w << "\n";
  return rc;
}

void resolve_window(const Options& o, double& t1, double& t2) {
  if (o.t1) t1 = *o.t1;
  if (o.t2) t2 = *o.t2;
  if (!(t2 > t1)) throw ConfigError(0, "window", "t2_ns", "t2 must be greater than t1");
}

int cmd_simulate(const Options& o) {
  const RunConfig rc = load(o);
  const std::string text = rc.doc.serialize();
  RunManifest man("simulate", text, rc.seed);
  for (const auto& w : rc.warnings) man.add_warning(w);
  const ExperimentConfig ex =
      o.method == "doppler" ? doppler_experiment(rc, rc.doppler_thickness_um) : rc.experiment;
  const IntensityGrid g = detector_intensity(ex);
  emit(man, o.out, "intensity.json", intensity_json(g, text));
  if (rc.write_csv) emit(man, o.out, "intensity.csv", intensity_csv(g));
  if (rc.write_events) {
    const auto ev = sample_events(g, rc.mean_counts, rc.seed);
    emit(man, o.out, "events.csv", events_csv(ev));
    man.set_tally("events", static_cast<double>(ev.size()));
  }
  man.set_tally("support_l", ex.support_l);
  man.set_tally("separation_ok", ex.separation_ok ? 1 : 0);
  man.write(o.out);
  std::cout << "wrote " << g.nscan() << " x " << g.nphi() << " x " << g.nt() << " grid to " << o.out << "\n";
  return kOk;
}

void write_spectrum(RunManifest& man, const RunConfig& rc, const std::string& dir, const RecoveredSpectrum& s) {
  if (rc.write_csv) emit(man, dir, "spectrum.csv", spectrum_csv(s));
  if (rc.write_json) emit(man, dir, "spectrum.json", spectrum_json(s));
  if (rc.write_svg) {
    emit(man, dir, "amplitude.svg", spectrum_svg(s, false));
    if (s.method == "phantasy") emit(man, dir, "phase.svg", spectrum_svg(s, true));
  }
  man.set_tally("excluded_slices", static_cast<double>(s.excluded_slices));
  man.set_tally("excluded_cells", static_cast<double>(s.excluded_cells));
  man.set_tally("spectral_error", spectral_error(s, rc.experiment.target));
}

int cmd_recover(const Options& o) {
  const LoadedGrid lg = load_grid(o.grid);
  RunConfig rc = build_run_config(ConfigDoc::parse(lg.config_text));
  if (o.seed) rc.seed = *o.seed;
  double t1 = rc.t1_ns, t2 = rc.t2_ns;
  resolve_window(o, t1, t2);
  RunManifest man("recover", lg.config_text, rc.seed);
  for (const auto& w : rc.warnings) man.add_warning(w);
  RecoveredSpectrum s;
  if (o.method == "doppler") {
    s = doppler_recover(lg.grid, t1, t2);
  } else {
    const FilteredSignal fs = combined_filter(lg.grid, rc.filter);
    if (rc.write_csv) emit(man, o.out, "filtered.csv", filtered_csv(fs));
    man.set_tally("imag_residue", fs.imag_residue());
    man.set_tally("separation_ok", fs.separation_ok ? 1 : 0);
    s = recover(cosine_fit(fs), t1, t2, rc.phase);
  }
  write_spectrum(man, rc, o.out, s);
  man.write(o.out);
  std::cout << s.method << " spectrum over [" << t1 << ", " << t2 << "] ns written to " << o.out << "\n";
  return kOk;
}

int cmd_baseline(const Options& o) {
  const RunConfig rc = load(o);
  double t1 = rc.t1_ns, t2 = rc.t2_ns;
  resolve_window(o, t1, t2);
  const ExperimentConfig base = doppler_experiment(rc, rc.doppler_thickness_um);
  const ThicknessResult tr = optimize_thickness(base, rc.thickness_grid_um, t1, t2);
  const IntensityGrid g = detector_intensity(doppler_experiment(rc, tr.best_um));
  const RecoveredSpectrum s = doppler_recover(g, t1, t2);
  RunManifest man("baseline", rc.doc.serialize(), rc.seed);
  for (const auto& w : rc.warnings) man.add_warning(w);
  std::string curve = "thickness_um,error\n";
  for (std::size_t i = 0; i < tr.error.size(); ++i)
    curve += format_double(tr.thickness_um[i]) + "," + format_double(tr.error[i]) + "\n";
  emit(man, o.out, "thickness.csv", curve);
  write_spectrum(man, rc, o.out, s);
  man.set_tally("best_thickness_um", tr.best_um);
  man.write(o.out);
  std::cout << "doppler baseline: best thickness " << tr.best_um << " um, error " << tr.best_error << "\n";
  return kOk;
}

int cmd_sweep(const Options& o) {
  const RunConfig rc = load(o);
  SweepResult r;
  if (o.method == "doppler") {
    std::vector<IntensityGrid> grids;
    for (double d : rc.thickness_grid_um) grids.push_back(detector_intensity(doppler_experiment(rc, d)));
    r = sweep_doppler(grids, rc.thickness_grid_um, rc.experiment.target, rc.sweep_t1_ns, rc.sweep_t2_ns);
  } else {
    const PhantasyRun run = run_phantasy(rc);
    r = sweep_phantasy(run.fit, rc.experiment.target, rc.sweep_t1_ns, rc.sweep_t2_ns);
  }
  r.config_hash = config_hash(rc.doc);
  RunManifest man("sweep", rc.doc.serialize(), rc.seed);
  for (const auto& w : rc.warnings) man.add_warning(w);
  if (rc.write_csv) emit(man, o.out, "sweep.csv", sweep_csv(r));
  if (rc.write_json) emit(man, o.out, "sweep.json", sweep_json(r));
  if (rc.write_svg) emit(man, o.out, "sweep.svg", sweep_svg(r));
  man.set_tally("min_error", r.min_error());
  man.write(o.out);
  std::cout << r.method << " sweep: min error " << r.min_error() << "\n";
  return kOk;
}

int cmd_selftest(const Options& o) {
  std::string failed;
  auto report = [&](const CheckResult& c) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << std::endl;
    if (!c.pass && failed.empty()) failed = c.name;
  };
  run_selftest(report);
  if (!o.grid.empty()) {
    CheckResult c = parseval_check(load_grid(o.grid).grid);
    c.name += "(" + o.grid + ")";
    report(c);
  }
  if (!failed.empty()) {
    std::cerr << "selftest failed: " << failed << "\n";
    return kInvariant;
  }
  std::cout << "all checks passed\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasenrs: phase-sensitive nuclear resonant scattering simulator and analyzer"};
  app.set_version_flag("--version", PHASENRS_VERSION);
  app.require_subcommand(1);
  Options o;
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  auto add_common = [&](CLI::App* s, bool config) {
    if (config) s->add_option("--config", o.config, "experiment config file")->required()->check(CLI::ExistingFile);
    s->add_option("--out", o.out, "output directory");
    s->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { o.seed = v; }, "RNG seed");
    s->add_option("--method", o.method, "recovery method")->check(CLI::IsMember({"phantasy", "doppler"}));
    s->add_option_function<double>("--t1", [&](const double& v) { o.t1 = v; }, "window start (ns)");
    s->add_option_function<double>("--t2", [&](const double& v) { o.t2 = v; }, "window end (ns)");
    s->add_option("--threads", threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  };
  auto* sim = app.add_subcommand("simulate", "simulate a detector intensity grid");
  add_common(sim, true);
  auto* rec = app.add_subcommand("recover", "recover the spectrum from a simulated grid");
  rec->add_option("grid", o.grid, "grid directory or intensity.json")->required();
  add_common(rec, false);
  auto* base = app.add_subcommand("baseline", "Doppler-drive baseline with thickness optimization");
  add_common(base, true);
  auto* sw = app.add_subcommand("sweep", "error heatmap over integration windows");
  add_common(sw, true);
  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  st->add_option("grid", o.grid, "optional grid to run the Parseval probe on");
  st->add_option("--threads", threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*sim) return cmd_simulate(o);
    if (*rec) return cmd_recover(o);
    if (*base) return cmd_baseline(o);
    if (*sw) return cmd_sweep(o);
    return cmd_selftest(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const DataMismatch& e) {
    std::cerr << "data mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
}
