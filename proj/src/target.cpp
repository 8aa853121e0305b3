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

#include "phasenrs/target.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pnrs {
namespace {

cplx rational_freq(const RationalModel& m, double w) {
  cplx r = m.c0;
  for (const auto& l : m.lines) r += l.residue / cplx(w - l.center, 0.5 * l.width);
  return r;
}

cplx exponent(const ExponentialModel& m, double w) {
  cplx z{};
  for (const auto& l : m.lines) z += cplx(0.0, -l.b) / cplx(w - l.center, 0.5 * m.width);
  return z;
}

// Max of |f| over [lo, hi]: dense scan followed by golden-section refinement.
template <class F>
double max_abs(F f, double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  double best = -1.0, arg = lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = std::abs(f(w));
    if (v > best) {
      best = v;
      arg = w;
    }
  }
  double a = arg - step, b = arg + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (std::abs(f(c)) > std::abs(f(d))) b = d; else a = c;
  }
  return std::max(best, std::abs(f(0.5 * (a + b))));
}

}  // namespace

TargetModel::TargetModel(RationalModel m) {
  if (std::abs(m.c0) > 1.0) throw DomainError("target asymptote |c0| must be <= 1");
  for (const auto& l : m.lines)
    if (!(l.width > 0) || !std::isfinite(l.center) || !std::isfinite(l.residue.real()) ||
        !std::isfinite(l.residue.imag()))
      throw DomainError("target line widths must be > 0 and parameters finite");
  m_ = std::move(m);
  if (!rational().lines.empty()) {
    const double reach = outermost_offset() + 40.0 * narrowest_width() + 10.0;
    const double c = weighted_center();
    const double peak =
        max_abs([this](double w) { return freq(w); }, c - reach, c + reach, narrowest_width() / 40.0);
    if (peak > 1.0 + 1e-9) throw DomainError("target response is not passive (max |R_T| > 1)");
  }
}

TargetModel::TargetModel(ExponentialModel m) {
  if (!(m.width > 0)) throw DomainError("exponential target width must be > 0");
  for (const auto& l : m.lines)
    if (!(l.b >= 0) || !std::isfinite(l.center)) throw DomainError("exponential target lines need b >= 0");
  m_ = std::move(m);
}

cplx TargetModel::freq(double w) const {
  if (is_rational()) return rational_freq(rational(), w);
  return std::exp(exponent(exponential(), w));
}

cplx TargetModel::freq_derivative(double w) const {
  if (is_rational()) {
    cplx d{};
    for (const auto& l : rational().lines) {
      const cplx u(w - l.center, 0.5 * l.width);
      d -= l.residue / (u * u);
    }
    return d;
  }
  const auto& e = exponential();
  cplx dz{};
  for (const auto& l : e.lines) {
    const cplx u(w - l.center, 0.5 * e.width);
    dz += cplx(0.0, l.b) / (u * u);
  }
  return dz * std::exp(exponent(e, w));
}

cplx TargetModel::asymptote() const { return is_rational() ? rational().c0 : cplx(1.0); }

std::vector<RationalLine> TargetModel::leading_poles() const {
  if (is_rational()) return rational().lines;
  std::vector<RationalLine> out;
  for (const auto& l : exponential().lines) out.push_back({cplx(0.0, -l.b), l.center, exponential().width});
  return out;
}

double TargetModel::weighted_center() const {
  double num = 0.0, den = 0.0;
  for (const auto& l : leading_poles()) {
    num += std::abs(l.residue) * l.center;
    den += std::abs(l.residue);
  }
  return den > 0 ? num / den : 0.0;
}

double TargetModel::narrowest_width() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& l : leading_poles()) w = std::min(w, l.width);
  return std::isfinite(w) ? w : 1.0;
}

double TargetModel::outermost_offset() const {
  const double c = weighted_center();
  double r = 0.0;
  for (const auto& l : leading_poles()) r = std::max(r, std::abs(l.center - c));
  return r;
}

cplx pole_time_response(const std::vector<RationalLine>& poles, double t) {
  if (t <= 0) return {};
  cplx r{};
  for (const auto& l : poles) r += cplx(0.0, -1.0) * l.residue * std::polar(std::exp(-0.5 * l.width * t), -l.center * t);
  return r;
}

ComplexSpectrum target_response_freq(const TargetModel& m, const FrequencyGrid& g) {
  ComplexSpectrum s{g, std::vector<cplx>(g.count)};
  for (std::size_t i = 0; i < g.count; ++i) s.values[i] = m.freq(g.at(i));
  return s;
}

TimeSignal target_response_time(const TargetModel& m, const TimeGrid& g) {
  TimeSignal s;
  s.grid = g;
  s.delta = m.asymptote();
  s.values.assign(g.count, cplx{});
  const auto poles = m.leading_poles();
  for (std::size_t q = 0; q < g.count; ++q) s.values[q] = pole_time_response(poles, g.at(q));
  if (m.is_rational() || g.count == 0) return s;

  // Remainder R^_T - c0 - poles = O(1/w^2), transformed numerically on a grid
  // whose step divides g.spacing.
  const double need_span = 8.0 * (m.outermost_offset() + std::abs(m.weighted_center())) + 400.0 * m.narrowest_width() + 4000.0;
  int k = 1;
  while (kTwoPi / (g.spacing / k) < need_span) ++k;
  const double h = g.spacing / k;
  const double first = g.start / h;
  if (std::abs(first - std::round(first)) > 1e-6) throw DomainError("target_response_time: grid start is not a multiple of the step");
  const long q0 = std::lround(first);
  const double t_last = g.at(g.count - 1);
  const double horizon = std::max(std::abs(g.start), std::abs(t_last)) + 80.0 / m.narrowest_width();
  const std::size_t n = std::max<std::size_t>(1u << 14, next_power_of_two(static_cast<std::size_t>(2.0 * horizon / h) + 1));
  const double dw = kTwoPi / (h * static_cast<double>(n));
  const FrequencyGrid fg(0.0, dw, n);
  FftBuffer buf(n);
  const cplx c0 = m.asymptote();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = fg.at(i);
    cplx r = m.freq(w) - c0;
    for (const auto& l : poles) r -= l.residue / cplx(w - l.center, 0.5 * l.width);
    buf[i] = (i % 2 ? -1.0 : 1.0) * r;
  }
  fft_plan(n, -1).execute(buf.data());
  // Output sample q on the dual grid sits at t = (q - n/2) h.
  const double quarter = ((n / 2) % 2) ? -1.0 : 1.0;
  for (std::size_t j = 0; j < g.count; ++j) {
    const long qq = q0 + static_cast<long>(j) * k + static_cast<long>(n / 2);
    if (qq < 0 || qq >= static_cast<long>(n)) throw DomainError("target_response_time: grid outside FFT horizon");
    const double sgn = quarter * ((qq % 2) ? -1.0 : 1.0);
    s.values[j] += sgn * dw / kTwoPi * buf[static_cast<std::size_t>(qq)];
  }
  return s;
}

double target_group_delay(const TargetModel& m, double w) {
  const cplx r = m.freq(w);
  if (std::abs(r) <= 1e-9) throw DomainError("group delay undefined where |R_T| <= 1e-9");
  return std::imag(m.freq_derivative(w) / r);
}

double target_support_halfwidth(const TargetModel& m, double eps) {
  if (!(eps > 0 && eps <= 0.1)) throw DomainError("support tolerance must lie in (0, 0.1]");
  const auto poles = m.leading_poles();
  if (poles.empty()) return 0.0;
  const double c = m.weighted_center();
  const cplx c0 = m.asymptote();
  double total = 0.0;
  for (const auto& l : poles) total += std::abs(l.residue);
  const auto dev = [&](double w) { return std::abs(m.freq(w) - c0); };
  // Beyond reach the pole tail alone is < eps / 4 and higher orders are smaller still.
  const double reach = m.outermost_offset() + 4.0 * total / eps + 10.0 * m.narrowest_width();
  const double step = std::min(m.narrowest_width() / 20.0, reach / 2e5);
  double l = 0.0;
  for (int side = -1; side <= 1; side += 2) {
    double last_bad = -1.0;
    for (double d = reach; d >= 0.0; d -= step) {
      if (dev(c + side * d) >= eps) {
        last_bad = d;
        break;
      }
    }
    if (last_bad < 0) continue;
    double lo = last_bad, hi = std::min(reach, last_bad + step);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (dev(c + side * mid) >= eps) lo = mid; else hi = mid;
    }
    l = std::max(l, hi);
  }
  return l;
}

TargetModel absorptive_lines(const std::vector<std::array<double, 3>>& spec, double peak) {
  RationalModel m;
  for (const auto& s : spec) m.lines.push_back({cplx(0.0, -s[2] * 0.5 * s[1]), s[0], s[1]});
  if (m.lines.empty()) return TargetModel(m);
  double lo = 1e300, hi = -1e300, wmin = 1e300;
  for (const auto& l : m.lines) {
    lo = std::min(lo, l.center);
    hi = std::max(hi, l.center);
    wmin = std::min(wmin, l.width);
  }
  const double raw = max_abs([&](double w) { return rational_freq(m, w); }, lo - 5 * wmin, hi + 5 * wmin, wmin / 40.0);
  for (auto& l : m.lines) l.residue *= peak / raw;
  return TargetModel(m);
}

std::vector<std::string> preset_names() { return {"single_line", "two_line", "zeeman_six_line"}; }

TargetModel target_preset(const std::string& name) {
  if (name == "single_line") return absorptive_lines({{0.0, 30.0, 1.0}});
  if (name == "two_line") return absorptive_lines({{-30.0, 30.0, 1.0}, {30.0, 30.0, 1.0}});
  if (name == "zeeman_six_line")
    return absorptive_lines({{-68.0, 20.0, 1.0},
                             {-40.0, 20.0, 2.0},
                             {-12.0, 20.0, 3.0},
                             {12.0, 20.0, 3.0},
                             {40.0, 20.0, 2.0},
                             {68.0, 20.0, 1.0}});
  throw DomainError("unknown target preset '" + name + "'");
}

}  // namespace pnrs
