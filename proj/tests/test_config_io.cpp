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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "phasenrs/io.hpp"

using namespace pnrs;

namespace {

template <class F>
ConfigError config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("no ConfigError");
  return ConfigError(0, "", "", "");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST_SUITE("config_io") {
  TEST_CASE("parser reports line, section and key") {
    const auto e = config_error([] { ConfigDoc::parse("[scan]\ncount = 3\ncount = 4\n"); });
    CHECK(e.line == 3);
    CHECK(e.section == "scan");
    CHECK(e.key == "count");
    CHECK(config_error([] { ConfigDoc::parse("count = 3\n"); }).line == 1);
    CHECK(config_error([] { ConfigDoc::parse("[a]\nx = [1, 2\n"); }).line == 2);
    CHECK(config_error([] { ConfigDoc::parse("[a]\n\n[a]\n"); }).line == 3);
    CHECK(config_error([] { ConfigDoc::parse("[a]\nx = \"open\n"); }).key == "x");
  }

  TEST_CASE("value typing and round trip") {
    const std::string text =
        "# comment\n[s]\ni = 3\nd = 3.0\ne = 1e-3\nb = true\nw = erf\nq = \"a \\\"q\\\" b\"\n"
        "n = nan\narr = [[1, 2.5], [-3, inf]]\n";
    const ConfigDoc d = ConfigDoc::parse(text);
    const ConfigSection* s = d.section("s");
    REQUIRE(s);
    CHECK(s->find("i")->is_int());
    CHECK(!s->find("d")->is_int());
    CHECK(s->find("e")->as_number() == 1e-3);
    CHECK(s->find("b")->as_bool());
    CHECK(s->find("w")->as_string() == "erf");
    CHECK(s->find("q")->as_string() == "a \"q\" b");
    CHECK(std::isnan(s->find("n")->as_number()));
    CHECK(std::isinf(s->find("arr")->as_array()[1].as_numbers()[1]));
    const ConfigDoc back = ConfigDoc::parse(d.serialize());
    CHECK(back == d);
    CHECK(back.serialize() == d.serialize());
    ConfigDoc x = d;
    x.set("s", "d", ConfigValue{0.1 + 0.2, 0});
    const ConfigDoc y = ConfigDoc::parse(x.serialize());
    CHECK(y.section("s")->find("d")->as_number() == 0.1 + 0.2);
    CHECK(format_double(1.0) == "1.0");
  }

  TEST_CASE("run config validation") {
    const std::string base = default_config_text("two_line");
    CHECK_NOTHROW(build_run_config(ConfigDoc::parse(base)));
    ConfigDoc doc = ConfigDoc::parse(base);
    std::string no_target;
    {
      std::stringstream in(base);
      std::string line;
      bool skip = false;
      while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '[') skip = line == "[target]";
        if (!skip) no_target += line + "\n";
      }
    }
    const auto e = config_error([&] { build_run_config(ConfigDoc::parse(no_target)); });
    CHECK(e.section == "target");
    CHECK(std::string(e.what()).find("[target]") != std::string::npos);

    ConfigDoc unknown = doc;
    unknown.set("scan", "cuont", ConfigValue{std::int64_t{3}, 0});
    CHECK(config_error([&] { build_run_config(unknown); }).key == "cuont");

    ConfigDoc bad = doc;
    bad.set("scan", "phases", ConfigValue{std::int64_t{2}, 0});
    CHECK(config_error([&] { build_run_config(bad); }).section == "scan");

    ConfigDoc close = doc;
    close.set("scan", "offset_l", ConfigValue{5.0, 0});
    const RunConfig rc = build_run_config(close);
    REQUIRE(rc.warnings.size() == 1);
    CHECK(rc.warnings[0].find("separation condition violated") != std::string::npos);
    CHECK(!rc.experiment.separation_ok);
    CHECK(config_hash(doc) == config_hash(ConfigDoc::parse(doc.serialize())));
    CHECK(config_hash(doc) != config_hash(close));
  }

  TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  }

  TEST_CASE("intensity JSON and CSV round trip bit-exactly") {
    ConfigDoc doc = ConfigDoc::parse(default_config_text("single_line"));
    doc.set("scan", "count", ConfigValue{std::int64_t{3}, 0});
    doc.set("scan", "phases", ConfigValue{std::int64_t{8}, 0});
    doc.set("window", "t_max_ns", ConfigValue{40.0, 0});
    doc.set("window", "t2_ns", ConfigValue{40.0, 0});
    const RunConfig rc = build_run_config(doc);
    const IntensityGrid g = detector_intensity(rc.experiment);
    std::string cfg;
    const IntensityGrid h = intensity_from_json(intensity_json(g, doc.serialize()), &cfg);
    CHECK(h.values == g.values);
    CHECK(h.t == g.t);
    CHECK(h.phi0 == g.phi0);
    CHECK(h.scan == g.scan);
    CHECK(cfg == doc.serialize());
    CHECK(h.meta.offset_S == g.meta.offset_S);

    const std::string csv = intensity_csv(g);
    std::stringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(split_csv_line(line).size() == g.nt() + 2);
    std::getline(in, line);
    const auto cells = split_csv_line(line);
    CHECK(std::stod(cells[0]) == g.scan[0]);
    CHECK(std::stod(cells[1]) == g.phi0[0]);
    for (std::size_t it = 0; it < g.nt(); ++it) CHECK(std::stod(cells[it + 2]) == g.at(it, 0, 0));

    nlohmann::json broken = nlohmann::json::parse(intensity_json(g, doc.serialize()));
    broken["meta"]["phases"] = 5;
    CHECK_THROWS_AS(intensity_from_json(broken.dump()), DataMismatch);
    CHECK_THROWS_AS(intensity_from_json("{\"format\": \"other\"}"), DataMismatch);
  }

  TEST_CASE("spectrum JSON keeps NaN") {
    RecoveredSpectrum s;
    s.detuning = {-1.0, 0.1 + 0.2, 2.0};
    s.amplitude_sq = {0.5, 1.0 / 3.0, 1e-300};
    s.phase = {0.25, std::numeric_limits<double>::quiet_NaN(), -3.0};
    s.method = "phantasy";
    s.t1_ns = 15;
    s.t2_ns = 110;
    const RecoveredSpectrum r = spectrum_from_json(spectrum_json(s));
    CHECK(r.detuning == s.detuning);
    CHECK(r.amplitude_sq == s.amplitude_sq);
    CHECK(r.phase[0] == s.phase[0]);
    CHECK(std::isnan(r.phase[1]));
    CHECK(r.phase[2] == s.phase[2]);
    CHECK(r.method == "phantasy");
  }

  TEST_CASE("manifest hashes its outputs") {
    const auto dir = std::filesystem::temp_directory_path() / "phasenrs_manifest_test";
    std::filesystem::remove_all(dir);
    write_file((dir / "a.csv").string(), "x\n1\n");
    RunManifest m("recover", "[scan]\ncount = 3\n", 7);
    m.add_output((dir / "a.csv").string());
    m.set_tally("spectral_error", 0.5);
    m.write(dir.string());
    const std::string j = read_file((dir / "manifest.json").string());
    CHECK(j.find(sha256_hex("x\n1\n")) != std::string::npos);
    CHECK(j.find("a.csv") != std::string::npos);
    CHECK(j.find("spectral_error") != std::string::npos);
    CHECK(m.json(false) == m.json(false));
    CHECK(m.json(false).find("started") == std::string::npos);
    CHECK_THROWS_AS(read_file((dir / "missing").string()), DataMismatch);
    std::filesystem::remove_all(dir);
  }
}
