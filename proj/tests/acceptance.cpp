// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uavir/channel.hpp"
#include "uavir/energy.hpp"
#include "uavir/engine.hpp"
#include "uavir/output.hpp"
#include "uavir/qfunction.hpp"
#include "uavir/reflector.hpp"

using namespace uavir;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& s) {
  std::fprintf(stderr, "  %s\n", s.c_str());
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

oracle::cd rand_c(Rng& rng) { return {uniform(rng, -1, 1), uniform(rng, -1, 1)}; }

// Phase optimality against a 64-point grid per phase.
void criterion1() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  const double a = 0.8;
  double worst_excess = -1.0, worst_sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int N = 2 + k % 3;
    CRowVector h(N);
    CVector r(N);
    std::vector<oracle::cd> z(static_cast<std::size_t>(N));
    double sum = 0.0;
    for (int n = 0; n < N; ++n) {
      h(n) = rand_c(rng);
      r(n) = rand_c(rng);
      z[static_cast<std::size_t>(n)] = a * h(n) * r(n);
      sum += std::abs(h(n)) * std::abs(r(n));
    }
    const ReflectionCoefficient t = optimal_phases(h, r, a);
    oracle::cd s = 0;
    for (int n = 0; n < N; ++n) s += h(n) * t.element(static_cast<std::size_t>(n)) * r(n);
    const double closed = std::abs(s);
    const double grid = oracle::brute_force_max(z, 64);
    worst_excess = std::max(worst_excess, (grid - closed) / closed);
    worst_sum = std::max(worst_sum, oracle::rel_err(closed, a * sum));
  }
  const double secs = seconds_since(t0);
  report(1, worst_excess <= 1e-3 && worst_sum <= 1e-10 && secs < 60.0,
         "grid excess " + fmt("%.3g", worst_excess) + " (<= 1e-3), closed vs a*sum " +
             fmt("%.3g", worst_sum) + " (<= 1e-10), " + fmt("%.2f", secs) + " s (< 60)");
}

// Formula oracles.
void criterion2() {
  Rng rng(1002);
  double e_snr = 0, e_cap = 0, e_harv = 0, e_net = 0;
  for (int k = 0; k < 1000; ++k) {
    const int N = 1 + static_cast<int>(rng() % 16);
    CRowVector h(N);
    CVector r(N);
    std::vector<oracle::cd> hv(static_cast<std::size_t>(N)), rv(static_cast<std::size_t>(N));
    std::vector<double> th(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
      const auto i = static_cast<std::size_t>(n);
      h(n) = hv[i] = rand_c(rng);
      r(n) = rv[i] = rand_c(rng);
      th[i] = uniform(rng, 0, kTwoPi);
    }
    const double a = uniform(rng, 0, 0.99);
    const ReflectionCoefficient t = ReflectionCoefficient::make(a, th);
    const NoiseModel noise{uniform(rng, 1e-21, 1e-15), uniform(rng, 1e6, 1e9)};
    const double eta = snr(h, t, r, noise);
    e_snr = std::max(e_snr, oracle::rel_err(eta, oracle::snr(hv, a, th, rv, noise.bandwidth, noise.n0)));

    const double x = std::pow(10.0, uniform(rng, -3, 6));
    e_cap = std::max(e_cap, oracle::rel_err(capacity(x, noise), oracle::capacity(x, noise.bandwidth)));

    const double kappa = uniform(rng, 0.01, 0.99);
    e_harv = std::max(e_harv, oracle::rel_err(harvested_power(t, r, kappa),
                                              oracle::harvested(a, th, rv, kappa)));

    const double ph = uniform(rng, 10, 200);
    const double pm = ph + uniform(rng, 1, 100);
    const double pr = uniform(rng, 1e-4, 1);
    const double pe = uniform(rng, 0, 0.1);
    const double v = k % 3 == 0 ? uniform(rng, 0.1, 20) : 0.0;
    const EnergyBudget b = make_budget(1e5, ph, pm, pr, 1);
    e_net = std::max(e_net, oracle::rel_err(net_power(v, pe, b), oracle::net_power(v, pe, ph, pm, pr)));
  }
  const bool ok = e_snr <= 1e-12 && e_cap <= 1e-12 && e_harv <= 1e-12 && e_net <= 1e-12;
  report(2, ok, "max rel err snr " + fmt("%.3g", e_snr) + ", capacity " + fmt("%.3g", e_cap) +
                    ", harvest " + fmt("%.3g", e_harv) + ", net power " + fmt("%.3g", e_net) +
                    " (<= 1e-12)");
}

// Network gradients and tabular Q-learning.
void criterion3() {
  Rng rng(1003);
  double worst_fd = 0;
  for (int k = 0; k < 5; ++k) {
    Rng init(2000 + static_cast<std::uint64_t>(k));
    ValueNetwork net(ValueNetwork::Layout{kFeatureDim, 64}, init);
    for (double& v : net.parameters()) v += uniform(init, -0.1, 0.1);
    std::vector<double> x(kFeatureDim);
    for (double& v : x) v = uniform(rng, -1, 1);
    std::vector<double> grad(net.parameter_count());
    net.gradient(x, grad);
    std::vector<double> p(net.parameters().begin(), net.parameters().end());
    worst_fd = std::max(worst_fd, oracle::max_fd_rel_error(p, grad, [&](const std::vector<double>& q) {
                          return oracle::mlp_forward(q, x, 64);
                        }));
  }

  const int S = 16, A = 4;
  std::vector<std::vector<int>> next(S, std::vector<int>(A));
  std::vector<std::vector<double>> reward(S, std::vector<double>(A));
  for (int s = 0; s < S; ++s)
    for (int a = 0; a < A; ++a) {
      next[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = static_cast<int>(rng() % S);
      reward[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = uniform(rng, -1, 1);
    }
  const double gamma = 0.7;
  const auto vi = oracle::value_iteration(next, reward, gamma);
  TabularQ q(1.0, gamma);
  const int actions[] = {0, 1, 2, 3};
  for (int sweep = 0; sweep < 3000; ++sweep) {
    q.set_learning_rate(1.0 / (1.0 + 0.01 * sweep));
    for (int s = 0; s < S; ++s)
      for (int a = 0; a < A; ++a)
        q.update(s, a, reward[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)],
                 next[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)], actions);
  }
  double sup = 0;
  for (int s = 0; s < S; ++s)
    for (int a = 0; a < A; ++a)
      sup = std::max(sup, std::abs(q.q(s, a) - vi[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]));
  report(3, worst_fd < 1e-4 && sup < 1e-6,
         "finite-difference rel err " + fmt("%.3g", worst_fd) + " (< 1e-4), tabular vs value iteration " +
             fmt("%.3g", sup) + " (< 1e-6)");
}

// Energy accounting on full-length default episodes.
void criterion4() {
  double worst = 0;
  bool first_crossing = true;
  int episodes = 0;
  for (Policy p : {Policy::greedy, Policy::rl}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      ScenarioConfig c = default_config();
      c.seed = seed;
      const EpisodeMetrics m = run_episode(c, p).metrics;
      double spent = 0;
      for (const auto& s : m.slots) spent += s.power_w * m.slot_seconds;
      worst = std::max(worst, std::abs(spent - (m.initial_energy_j - m.slots.back().energy_j)) /
                                  m.initial_energy_j);
      for (std::size_t i = 0; i + 1 < m.slots.size(); ++i)
        if (m.slots[i].energy_j < m.residual_j) first_crossing = false;
      if (!(m.slots.back().energy_j < m.residual_j)) first_crossing = false;
      ++episodes;
    }
  }
  report(4, worst <= 1e-9 && first_crossing,
         std::to_string(episodes) + " episodes, |sum p dT - (E0 - E(T))| / E0 = " + fmt("%.3g", worst) +
             " (<= 1e-9), stop at first E < eps: " + (first_crossing ? "yes" : "no"));
}

struct Cell {
  double rate{0}, los{0}, harvest{0};
};
using Table = std::map<std::pair<double, Policy>, Cell>;

std::vector<std::uint64_t> seeds20() {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 1; i <= 20; ++i) s.push_back(i);
  return s;
}

void absorb(Table& t, const SweepTable& s) {
  for (const auto& r : s.rows)
    t[{r.value, r.policy}] = Cell{r.rate_bps.mean, r.los_fraction.mean, r.harvest_w.mean};
}

Progress progress_note() {
  return [](const std::string& m) {
    if (m.rfind("warm-up", 0) != 0) note(m);
  };
}

void criterion5(Table& power) {
  const auto t0 = Clock::now();
  const double values[] = {10.0};
  const Policy policies[] = {Policy::static_ir, Policy::greedy, Policy::rl};
  const auto seeds = seeds20();
  absorb(power, run_sweep(default_config(), SweepAxis::tx_power, values, policies, seeds,
                          progress_note()));
  const double secs = seconds_since(t0);
  const Cell s = power[{10.0, Policy::static_ir}];
  const Cell g = power[{10.0, Policy::greedy}];
  const Cell r = power[{10.0, Policy::rl}];
  const bool ok = s.los < 0.2 && g.los > s.los + 0.3 && r.los >= g.los + 0.05 && r.rate > g.rate &&
                  g.rate > s.rate && r.rate >= 1.5 * s.rate && secs < 600.0;
  report(5, ok,
         "LOS static " + fmt("%.3f", s.los) + " greedy " + fmt("%.3f", g.los) + " rl " +
             fmt("%.3f", r.los) + "; rate static " + fmt("%.4g", s.rate) + " greedy " +
             fmt("%.4g", g.rate) + " rl " + fmt("%.4g", r.rate) + " bps; " + fmt("%.0f", secs) +
             " s (< 600)");
}

void criterion6() {
  const double values[] = {20.0, 100.0};
  const Policy policies[] = {Policy::rl, Policy::static_ir};
  const auto seeds = seeds20();
  Table t;
  absorb(t, run_sweep(default_config(), SweepAxis::altitude, values, policies, seeds,
                      progress_note()));
  const double rl20 = t[{20.0, Policy::rl}].rate, rl100 = t[{100.0, Policy::rl}].rate;
  const double gap20 = rl20 - t[{20.0, Policy::static_ir}].rate;
  const double gap100 = rl100 - t[{100.0, Policy::static_ir}].rate;
  report(6, rl100 <= 0.7 * rl20 && gap100 < gap20,
         "rl rate 20 m " + fmt("%.4g", rl20) + ", 100 m " + fmt("%.4g", rl100) +
             " (ratio " + fmt("%.3f", rl100 / rl20) + " <= 0.7); rl - static gap 20 m " +
             fmt("%.4g", gap20) + ", 100 m " + fmt("%.4g", gap100));
}

// Zero-throughput check: transmit power so low that no slot reaches τ.
bool zero_throughput(double watts, std::string& detail) {
  const ScenarioConfig c = with_axis(default_config(), SweepAxis::tx_power, watts);
  double bits = 0, best = -1e300;
  for (Policy p : {Policy::rl, Policy::greedy, Policy::static_ir}) {
    const EpisodeMetrics m = run_episode(c, p).metrics;
    bits += m.aggregates.total_bits;
    for (const auto& s : m.slots)
      if (s.stage == Stage::communication) best = std::max(best, s.snr_db);
  }
  detail = "at " + fmt("%.3g", watts) + " W best snr " + fmt("%.2f", best) + " dB, bits " +
           fmt("%.3g", bits);
  return bits == 0.0 && best < c.radio.snr_threshold_db;
}

void criterion7_8(Table& power) {
  const double values[] = {1.0, 5.0, 20.0};
  const Policy policies[] = {Policy::static_ir, Policy::greedy, Policy::rl};
  const auto seeds = seeds20();
  absorb(power, run_sweep(default_config(), SweepAxis::tx_power, values, policies, seeds,
                          progress_note()));
  const double sweep[] = {1.0, 5.0, 10.0, 20.0};

  bool monotone = true;
  std::string rates;
  for (Policy p : policies) {
    rates += std::string(" ") + policy_name(p) + ":";
    for (std::size_t i = 0; i < 4; ++i) {
      const double v = power[{sweep[i], p}].rate;
      rates += fmt(" %.3g", v);
      if (i > 0 && v < power[{sweep[i - 1], p}].rate) monotone = false;
    }
  }
  std::string zero;
  const bool zero_ok = zero_throughput(1e-3, zero);
  const double rl_slope = power[{20.0, Policy::rl}].rate - power[{1.0, Policy::rl}].rate;
  const double st_slope =
      power[{20.0, Policy::static_ir}].rate - power[{1.0, Policy::static_ir}].rate;
  report(7, monotone && zero_ok && rl_slope > st_slope,
         "rates by power{1,5,10,20} W" + rates + "; " + zero + "; slope rl " + fmt("%.3g", rl_slope) +
             " > static " + fmt("%.3g", st_slope));

  bool up = true;
  std::string harvest;
  for (std::size_t i = 0; i < 4; ++i) {
    const double v = power[{sweep[i], Policy::rl}].harvest;
    harvest += fmt(" %.3g", v);
    if (i > 0 && !(v > power[{sweep[i - 1], Policy::rl}].harvest)) up = false;
  }
  const double top = power[{20.0, Policy::rl}].harvest;
  const double pr = default_config().energy.reflect_w;
  report(8, up && top >= pr && top >= 1e-5 && top <= 1e-2,
         "rl hover harvest W by power{1,5,10,20} W" + harvest + "; at 20 W " + fmt("%.3g", top) +
             " >= p_r " + fmt("%.3g", pr) + ", within [1e-5, 1e-2]");
}

void criterion9() {
  bool same = true, hashed = true;
  ScenarioConfig c = default_config();
  c.seed = 7;
  c.agent.warmup_episodes = 2;
  const std::string hash = config_hash(c);
  const WarmStart warm = warm_up(c);
  for (Policy p : {Policy::static_ir, Policy::greedy, Policy::rl}) {
    std::string out[2];
    for (auto& o : out) {
      std::ostringstream os;
      write_episode(run_episode(c, p, &warm).metrics, Format::csv, os);
      o = os.str();
    }
    same = same && out[0] == out[1];
    hashed = hashed && out[0].find("# config_hash=" + hash + "\n") != std::string::npos;
  }
  report(9, same && hashed,
         std::string("byte-identical CSV for static, greedy, rl: ") + (same ? "yes" : "no") +
             "; config hash " + hash + " embedded: " + (hashed ? "yes" : "no"));
}

}  // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    Table power;
    criterion5(power);
    criterion6();
    criterion7_8(power);
    criterion9();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 100;
  }
  return failures;
}
