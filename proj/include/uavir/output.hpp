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

// CSV files start with "# key=value" provenance lines (config hash, seed,
// policy, ...), then one header row, then data. Reals carry 17 significant
// digits so a parse reproduces every value exactly.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "uavir/engine.hpp"

namespace uavir {

enum class Format { csv, json };

// Accepts "csv" or "json"; throws std::invalid_argument.
Format parse_format(const std::string& name);

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_episode(const EpisodeMetrics& m, Format format, std::ostream& os);
void write_sweep(const SweepTable& t, Format format, std::ostream& os);

// File variants; failures raise OutputError naming the path.
void emit_episode(const EpisodeMetrics& m, Format format, const std::string& path);
void emit_sweep(const SweepTable& t, Format format, const std::string& path);

// Inverse of write_episode. Aggregates are recomputed from the slot rows.
// Throws OutputError on malformed input.
EpisodeMetrics read_episode(std::istream& is, Format format);

}  // namespace uavir
