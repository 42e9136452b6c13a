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

// uavir_run: command-line front end over the C API.
//
//   uavir_run run   [--scenario F] [--policy rl|greedy|static] [--seed N]
//                   [--out F] [--format csv|json] [--warm-start F] [--save-model F]
//   uavir_run sweep [--scenario F] --axis altitude|tx-power --values 20,40
//                   [--policies rl,greedy,static] [--seeds 1-20] [--out F] [--format csv|json]
//
// Exit status: 0 success, 2 configuration or usage error, 3 runtime error.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavir/uavir.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Failure {
  int code;
  std::string message;
};

void check(uavir_status s) {
  if (s == UAVIR_OK) return;
  const int code = (s == UAVIR_ERR_CONFIG || s == UAVIR_ERR_ARGUMENT) ? kExitConfig : kExitRuntime;
  throw Failure{code, uavir_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<uavir_config, Deleter<uavir_config, uavir_config_free>>;
using ModelPtr = std::unique_ptr<uavir_model, Deleter<uavir_model, uavir_model_free>>;
using EpisodePtr = std::unique_ptr<uavir_episode, Deleter<uavir_episode, uavir_episode_free>>;
using SweepPtr = std::unique_ptr<uavir_sweep, Deleter<uavir_sweep, uavir_sweep_free>>;

uavir_policy policy_from(const std::string& s) {
  if (s == "rl") return UAVIR_POLICY_RL;
  if (s == "greedy") return UAVIR_POLICY_GREEDY;
  if (s == "static") return UAVIR_POLICY_STATIC;
  throw Failure{kExitConfig, "unknown policy '" + s + "'"};
}

const char* policy_label(uavir_policy p) {
  switch (p) {
    case UAVIR_POLICY_RL: return "rl";
    case UAVIR_POLICY_GREEDY: return "greedy";
    case UAVIR_POLICY_STATIC: return "static";
  }
  return "?";
}

uavir_format format_from(const std::string& s) {
  return s == "json" ? UAVIR_FORMAT_JSON : UAVIR_FORMAT_CSV;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "1,2,5-8" -> 1 2 5 6 7 8
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(text)) {
    try {
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoull(item));
        continue;
      }
      const std::uint64_t lo = std::stoull(item.substr(0, dash));
      const std::uint64_t hi = std::stoull(item.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("empty range");
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    } catch (const std::exception&) {
      throw Failure{kExitConfig, "bad seed list entry '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{kExitConfig, "empty seed list"};
  return out;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw Failure{kExitConfig, "bad value '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{kExitConfig, "empty value list"};
  return out;
}

void print_progress(const char* message, void*) { std::fprintf(stderr, "%s\n", message); }

ConfigPtr load(const std::string& scenario) {
  uavir_config* raw = nullptr;
  check(scenario.empty() ? uavir_config_default(&raw) : uavir_config_load(scenario.c_str(), &raw));
  return ConfigPtr(raw);
}

struct RunArgs {
  std::string scenario, policy{"rl"}, out, format{"csv"}, warm_start, save_model;
  std::uint64_t seed{0};
  bool seed_set{false};
  bool quiet{false};
};

void run_command(const RunArgs& a) {
  ConfigPtr cfg = load(a.scenario);
  if (a.seed_set) check(uavir_config_set_seed(cfg.get(), a.seed));
  const uavir_policy policy = policy_from(a.policy);
  uavir_progress_fn progress = a.quiet ? nullptr : print_progress;

  ModelPtr warm;
  if (policy == UAVIR_POLICY_RL) {
    uavir_model* raw = nullptr;
    if (!a.warm_start.empty()) {
      check(uavir_model_load(a.warm_start.c_str(), &raw));
    } else {
      check(uavir_model_warm_up(cfg.get(), progress, nullptr, &raw));
    }
    warm.reset(raw);
  }

  uavir_episode* raw_ep = nullptr;
  check(uavir_run_episode(cfg.get(), policy, warm.get(), &raw_ep));
  EpisodePtr ep(raw_ep);

  if (!a.out.empty()) check(uavir_episode_write(ep.get(), format_from(a.format), a.out.c_str()));
  if (!a.save_model.empty()) {
    uavir_model* raw = nullptr;
    check(uavir_episode_model(ep.get(), &raw));
    ModelPtr learned(raw);
    check(uavir_model_save(learned.get(), a.save_model.c_str()));
  }

  uavir_aggregates agg{};
  check(uavir_episode_aggregates(ep.get(), &agg));
  char hash[17];
  check(uavir_config_hash(cfg.get(), hash, sizeof hash));
  std::printf("policy=%s config_hash=%s slots=%ld hover_slots=%ld relocations=%ld\n",
              policy_label(policy), hash, agg.slots, agg.hover_slots, agg.relocations);
  std::printf("mean_rate_bps=%.6g mean_rate_all_bps=%.6g los_fraction=%.4f "
              "mean_harvest_w=%.6g total_bits=%.6g energy_used_j=%.6g\n",
              agg.mean_rate_bps, agg.mean_rate_all_bps, agg.los_fraction, agg.mean_harvest_w,
              agg.total_bits, agg.energy_used_j);
}

struct SweepArgs {
  std::string scenario, axis, values, policies{"rl,greedy,static"}, seeds{"1-20"}, out,
      format{"csv"};
  bool quiet{false};
};

void sweep_command(const SweepArgs& a) {
  ConfigPtr cfg = load(a.scenario);
  uavir_axis axis;
  if (a.axis == "altitude") {
    axis = UAVIR_AXIS_ALTITUDE;
  } else if (a.axis == "tx-power" || a.axis == "tx_power") {
    axis = UAVIR_AXIS_TX_POWER;
  } else {
    throw Failure{kExitConfig, "unknown axis '" + a.axis + "'"};
  }
  const std::vector<double> values = parse_values(a.values);
  std::vector<uavir_policy> policies;
  for (const auto& p : split_list(a.policies)) policies.push_back(policy_from(p));
  if (policies.empty()) throw Failure{kExitConfig, "empty policy list"};
  const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);

  uavir_sweep* raw = nullptr;
  check(uavir_run_sweep(cfg.get(), axis, values.data(), values.size(), policies.data(),
                        policies.size(), seeds.data(), seeds.size(),
                        a.quiet ? nullptr : print_progress, nullptr, &raw));
  SweepPtr sweep(raw);
  if (!a.out.empty()) check(uavir_sweep_write(sweep.get(), format_from(a.format), a.out.c_str()));

  std::printf("%-10s %-7s %14s %12s %8s %8s %12s\n", a.axis.c_str(), "policy", "rate_bps",
              "rate_std", "los", "los_std", "harvest_w");
  for (std::size_t i = 0; i < uavir_sweep_row_count(sweep.get()); ++i) {
    uavir_sweep_row r{};
    check(uavir_sweep_get_row(sweep.get(), i, &r));
    std::printf("%-10g %-7s %14.6g %12.4g %8.4f %8.4f %12.4g\n", r.value, policy_label(r.policy),
                r.rate_mean_bps, r.rate_std_bps, r.los_mean, r.los_std, r.harvest_mean_w);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV-mounted intelligent reflector simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one episode");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file (default preset if omitted)");
  run_cmd->add_option("--policy", run.policy, "rl, greedy or static")
      ->check(CLI::IsMember({"rl", "greedy", "static"}));
  run_cmd->add_option("--seed", run.seed, "Episode seed (overrides the scenario)")
      ->each([&](const std::string&) { run.seed_set = true; });
  run_cmd->add_option("--out", run.out, "Write the per-slot log here");
  run_cmd->add_option("--format", run.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--warm-start", run.warm_start, "Value-function file to start rl from");
  run_cmd->add_option("--save-model", run.save_model, "Save the rl value function after the run");
  run_cmd->add_flag("--quiet", run.quiet, "Suppress progress lines");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep altitude or transmit power");
  sweep_cmd->add_option("--scenario", sweep.scenario, "Scenario JSON file");
  sweep_cmd->add_option("--axis", sweep.axis, "altitude (m) or tx-power (W)")->required();
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated axis values")->required();
  sweep_cmd->add_option("--policies", sweep.policies, "Comma-separated policies");
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds, e.g. 1,2,3 or 1-20");
  sweep_cmd->add_option("--out", sweep.out, "Write the sweep table here");
  sweep_cmd->add_option("--format", sweep.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_flag("--quiet", sweep.quiet, "Suppress progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) run_command(run);
    if (*sweep_cmd) sweep_command(sweep);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
