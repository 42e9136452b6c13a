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

#include "uavir/predictor.hpp"

#include <stdexcept>

namespace uavir {

MovementHistory::MovementHistory(std::size_t window) : window_(window) {
  if (window_ < 2) throw std::invalid_argument("history window must be >= 2");
}

void MovementHistory::update(const MovementSample& sample) {
  if (!samples_.empty() && !(sample.time > samples_.back().time)) {
    throw std::invalid_argument("movement sample is not newer than the history");
  }
  samples_.push_back(sample);
  while (samples_.size() > window_) samples_.pop_front();
}

GaussianPrediction predict(const MovementHistory& history, int horizon_slots,
                           double slot_seconds) {
  if (history.empty()) {
    throw std::invalid_argument("cannot predict from an empty history");
  }
  GaussianPrediction out;
  const auto& s = history.samples();
  const MovementSample& last = s.back();
  if (s.size() < 2) {
    out.mean = last.position;
    out.covariance = Eigen::Matrix2d::Identity() * 4.0;
    return out;
  }

  const MovementSample& prev = s[s.size() - 2];
  const Vec2 velocity =
      (last.position - prev.position) * (1.0 / (last.time - prev.time));
  const double k = static_cast<double>(horizon_slots);
  out.mean = last.position + velocity * (k * slot_seconds);

  const std::size_t n = s.size() - 1;
  Eigen::Vector2d mean_inc = Eigen::Vector2d::Zero();
  for (std::size_t i = 1; i < s.size(); ++i) {
    const Vec2 d = s[i].position - s[i - 1].position;
    mean_inc += Eigen::Vector2d(d.x, d.y);
  }
  mean_inc /= static_cast<double>(n);

  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  if (n >= 2) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      const Vec2 d = s[i].position - s[i - 1].position;
      const Eigen::Vector2d e = Eigen::Vector2d(d.x, d.y) - mean_inc;
      cov += e * e.transpose();
    }
    cov /= static_cast<double>(n - 1);
  }
  // Exact symmetry; the accumulation above is already symmetric up to
  // rounding in the off-diagonal order of operations.
  cov(1, 0) = cov(0, 1);
  out.covariance = cov * k;
  return out;
}

}  // namespace uavir
