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

#include <cstddef>
#include <deque>

#include <Eigen/Dense>

#include "uavir/geometry.hpp"

namespace uavir {

struct MovementSample {
  Vec2 position;
  double omega{0.0};
  double time{0.0};
};

// Sliding window of the most recent UE samples, oldest first.
class MovementHistory {
 public:
  explicit MovementHistory(std::size_t window = 20);

  // Throws std::invalid_argument unless the timestamp is strictly newer.
  void update(const MovementSample& sample);

  std::size_t size() const { return samples_.size(); }
  std::size_t window() const { return window_; }
  bool empty() const { return samples_.empty(); }
  const MovementSample& latest() const { return samples_.back(); }
  const std::deque<MovementSample>& samples() const { return samples_; }

 private:
  std::size_t window_;
  std::deque<MovementSample> samples_;
};

struct GaussianPrediction {
  Vec2 mean;
  Eigen::Matrix2d covariance;
};

// Constant-velocity extrapolation k slots ahead from the last finite
// difference; covariance is the sample covariance of the windowed position
// increments scaled by k. Fewer than two samples give the latest position
// with an isotropic 4 m² prior. Throws std::invalid_argument when empty.
GaussianPrediction predict(const MovementHistory& history, int horizon_slots,
                           double slot_seconds);

}  // namespace uavir
