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

#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

namespace uavir::log {

enum class Level : int { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

using Sink = std::function<void(Level, std::string_view)>;

// Messages below the threshold are dropped. Default threshold is `error`, so
// model-validity warnings (distance floors, degenerate segments) stay quiet
// unless a caller opts in.
void set_level(Level level);
Level level();

// Replaces the stderr sink; pass an empty function to restore it.
void set_sink(Sink sink);

void write(Level level, std::string_view message);

inline void warn(std::string_view message) { write(Level::warn, message); }
inline void info(std::string_view message) { write(Level::info, message); }

// Counts warnings regardless of level, for tests that assert a warning fired.
std::uint64_t warning_count();

}  // namespace uavir::log
