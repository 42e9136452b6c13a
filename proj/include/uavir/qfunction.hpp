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

// Approximate value function Q̃(h, x, y, ω | φ): a fixed feature encoding of
// the link and candidate geometry, a small tanh network trained one sample at
// a time, and an exact table-backed variant for small enumerable problems.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "uavir/geometry.hpp"
#include "uavir/rng.hpp"

namespace uavir {

inline constexpr std::size_t kFeatureDim = 13;
using Features = std::array<double, kFeatureDim>;

// Feature layout and ranges (every entry is clamped to the stated range):
//   [0]      (max(Σ|h_n|² dB, -200) + 100) / 100            [-1, 1]
//   [1]      IR-UE LOS flag                                  {0, 1}
//   [2]      body-shadow flag                                {0, 1}
//   [3..5]   (x - (y, ue_height)) / offset_scale             [-4, 4]
//   [6..7]   y / position_scale                              [-4, 4]
//   [8..9]   cos ω, sin ω                                    [-1, 1]
//   [10..11] (μ - y) / drift_scale                           [-1, 1]
//   [12]     ‖x - bs‖ / bs_distance_scale                    [0, 4]
struct FeatureEncoder {
  Vec3 bs_position;
  double ue_height{1.5};
  double offset_scale{50.0};
  double position_scale{50.0};
  double drift_scale{2.0};
  double bs_distance_scale{200.0};

  static constexpr double kGainFloorDb = -200.0;

  Features encode(const Eigen::RowVectorXcd& h, bool los, bool body_shadowed,
                  Vec3 candidate, Vec2 ue, double omega, Vec2 predicted) const;
};

class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fully connected [in -> hidden -> hidden -> 1] with tanh hidden units and a
// linear output, trained with Adam on (q - Q̃)².
class ValueNetwork {
 public:
  struct Layout {
    std::size_t input{kFeatureDim};
    std::size_t hidden{64};
  };

  ValueNetwork() : ValueNetwork(Layout{}) {}
  // All parameters zero.
  explicit ValueNetwork(Layout layout);
  // Glorot-uniform weights, zero biases.
  ValueNetwork(Layout layout, Rng& init_rng);

  const Layout& layout() const { return layout_; }
  std::size_t parameter_count() const { return params_.size(); }
  std::span<const double> parameters() const { return params_; }
  std::span<double> parameters() { return params_; }

  double learning_rate() const { return learning_rate_; }
  void set_learning_rate(double lr) { learning_rate_ = lr; }
  std::uint64_t steps() const { return step_; }

  // Throws TrainingDiverged on a non-finite result.
  double evaluate(std::span<const double> input) const;

  // dQ̃/dφ at `input`, in parameter order; returns Q̃.
  double gradient(std::span<const double> input, std::span<double> out) const;

  // One Adam step on (target - Q̃)². Returns the loss before the step. A zero
  // residual leaves parameters and optimizer state untouched.
  double train_step(std::span<const double> input, double target);

  void save(std::ostream& os) const;
  static ValueNetwork load(std::istream& is);
  void save_file(const std::string& path) const;
  static ValueNetwork load_file(const std::string& path);

 private:
  double forward(std::span<const double> input, Eigen::VectorXd& a1,
                 Eigen::VectorXd& a2) const;

  // Offsets into the flat parameter vector.
  std::size_t w1() const { return 0; }
  std::size_t b1() const { return layout_.input * layout_.hidden; }
  std::size_t w2() const { return b1() + layout_.hidden; }
  std::size_t b2() const { return w2() + layout_.hidden * layout_.hidden; }
  std::size_t w3() const { return b2() + layout_.hidden; }
  std::size_t b3() const { return w3() + layout_.hidden; }

  Layout layout_;
  std::vector<double> params_;
  std::vector<double> moment1_;
  std::vector<double> moment2_;
  double learning_rate_{1e-3};
  std::uint64_t step_{0};
};

// Value backend the agent talks to.
class ValueModel {
 public:
  virtual ~ValueModel() = default;
  virtual double value(const Features& f) const = 0;
  virtual void fit(const Features& f, double target) = 0;
  virtual std::unique_ptr<ValueModel> clone() const = 0;
};

class NeuralValueModel final : public ValueModel {
 public:
  explicit NeuralValueModel(ValueNetwork net) : net_(std::move(net)) {}

  double value(const Features& f) const override { return net_.evaluate(f); }
  void fit(const Features& f, double target) override { net_.train_step(f, target); }
  std::unique_ptr<ValueModel> clone() const override {
    return std::make_unique<NeuralValueModel>(*this);
  }

  const ValueNetwork& network() const { return net_; }
  ValueNetwork& network() { return net_; }

 private:
  ValueNetwork net_;
};

// Exact per-key storage with Q <- (1 - β) Q + β q. Unseen keys read as 0.
template <typename Key>
class QTable {
 public:
  explicit QTable(double learning_rate) : beta_(learning_rate) {
    if (!(beta_ > 0.0 && beta_ <= 1.0)) {
      throw std::invalid_argument("tabular learning rate must lie in (0, 1]");
    }
  }

  double get(const Key& k) const {
    const auto it = table_.find(k);
    return it == table_.end() ? 0.0 : it->second;
  }
  void update(const Key& k, double target) {
    double& q = table_[k];
    q = (1.0 - beta_) * q + beta_ * target;
  }
  double learning_rate() const { return beta_; }
  void set_learning_rate(double beta) { beta_ = beta; }
  std::size_t size() const { return table_.size(); }

 private:
  double beta_;
  std::map<Key, double> table_;
};

// Tabular Q-learning on an enumerable (state, action) space:
//   Q(s, a) <- (1 - β) Q(s, a) + β (r + γ max_a' Q(s', a'))
class TabularQ {
 public:
  TabularQ(double learning_rate, double discount)
      : table_(learning_rate), gamma_(discount) {}

  double q(int state, int action) const { return table_.get({state, action}); }
  double max_q(int state, std::span<const int> actions) const;
  void update(int state, int action, double reward, int next_state,
              std::span<const int> next_actions, bool terminal = false);
  void set_learning_rate(double beta) { table_.set_learning_rate(beta); }

 private:
  QTable<std::pair<int, int>> table_;
  double gamma_;
};

class TabularValueModel final : public ValueModel {
 public:
  explicit TabularValueModel(double learning_rate) : table_(learning_rate) {}

  double value(const Features& f) const override { return table_.get(f); }
  void fit(const Features& f, double target) override { table_.update(f, target); }
  std::unique_ptr<ValueModel> clone() const override {
    return std::make_unique<TabularValueModel>(*this);
  }
  std::size_t size() const { return table_.size(); }

 private:
  QTable<Features> table_;
};

}  // namespace uavir
