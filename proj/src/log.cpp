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

#include "uavir/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace uavir::log {
namespace {

std::atomic<int> g_level{static_cast<int>(Level::error)};
std::atomic<std::uint64_t> g_warnings{0};
std::mutex g_sink_mutex;
Sink g_sink;

const char* tag(Level l) {
  switch (l) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
    case Level::error: return "error";
    default: return "";
  }
}

}  // namespace

void set_level(Level l) { g_level.store(static_cast<int>(l)); }

Level level() { return static_cast<Level>(g_level.load()); }

void set_sink(Sink sink) {
  std::lock_guard lock(g_sink_mutex);
  g_sink = std::move(sink);
}

void write(Level l, std::string_view message) {
  if (l == Level::warn) g_warnings.fetch_add(1, std::memory_order_relaxed);
  if (static_cast<int>(l) < g_level.load()) return;
  std::lock_guard lock(g_sink_mutex);
  if (g_sink) {
    g_sink(l, message);
  } else {
    std::cerr << "[uavir " << tag(l) << "] " << message << '\n';
  }
}

std::uint64_t warning_count() { return g_warnings.load(); }

}  // namespace uavir::log
