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

#include "uavir/qfunction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace uavir {
namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;
constexpr const char* kMagic = "uavir-value-network";

}  // namespace

Features FeatureEncoder::encode(const Eigen::RowVectorXcd& h, bool los,
                                bool body_shadowed, Vec3 candidate, Vec2 ue,
                                double omega, Vec2 predicted) const {
  const double gain = h.squaredNorm();
  double gain_db = gain > 0.0 ? 10.0 * std::log10(gain) : kGainFloorDb;
  gain_db = std::max(gain_db, kGainFloorDb);

  const Vec3 offset = candidate - lift(ue, ue_height);
  const Vec2 drift = predicted - ue;
  const auto clip = [](double v, double lim) { return std::clamp(v, -lim, lim); };

  Features f{};
  f[0] = clip((gain_db + 100.0) / 100.0, 1.0);
  f[1] = los ? 1.0 : 0.0;
  f[2] = body_shadowed ? 1.0 : 0.0;
  f[3] = clip(offset.x / offset_scale, 4.0);
  f[4] = clip(offset.y / offset_scale, 4.0);
  f[5] = clip(offset.z / offset_scale, 4.0);
  f[6] = clip(ue.x / position_scale, 4.0);
  f[7] = clip(ue.y / position_scale, 4.0);
  f[8] = std::cos(omega);
  f[9] = std::sin(omega);
  f[10] = clip(drift.x / drift_scale, 1.0);
  f[11] = clip(drift.y / drift_scale, 1.0);
  f[12] = std::clamp(distance(candidate, bs_position) / bs_distance_scale, 0.0, 4.0);
  return f;
}

ValueNetwork::ValueNetwork(Layout layout) : layout_(layout) {
  if (layout_.input == 0 || layout_.hidden == 0) {
    throw std::invalid_argument("value network layers must be non-empty");
  }
  const std::size_t n = layout_.input * layout_.hidden + layout_.hidden +
                        layout_.hidden * layout_.hidden + layout_.hidden +
                        layout_.hidden + 1;
  params_.assign(n, 0.0);
  moment1_.assign(n, 0.0);
  moment2_.assign(n, 0.0);
}

ValueNetwork::ValueNetwork(Layout layout, Rng& init_rng) : ValueNetwork(layout) {
  const auto fill = [&](std::size_t offset, std::size_t fan_in, std::size_t fan_out) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (std::size_t i = 0; i < fan_in * fan_out; ++i) {
      params_[offset + i] = uniform(init_rng, -limit, limit);
    }
  };
  fill(w1(), layout_.input, layout_.hidden);
  fill(w2(), layout_.hidden, layout_.hidden);
  fill(w3(), layout_.hidden, 1);
}

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMat = Eigen::Map<const RowMajor>;
using ConstVec = Eigen::Map<const Eigen::VectorXd>;

}  // namespace

double ValueNetwork::evaluate(std::span<const double> input) const {
  if (input.size() != layout_.input) {
    throw std::invalid_argument("value network input has the wrong dimension");
  }
  Eigen::VectorXd a1, a2;
  const double out = forward(input, a1, a2);
  if (!std::isfinite(out)) throw TrainingDiverged("value network output is not finite");
  return out;
}

double ValueNetwork::forward(std::span<const double> input, Eigen::VectorXd& a1,
                             Eigen::VectorXd& a2) const {
  const auto H = static_cast<Eigen::Index>(layout_.hidden);
  const auto I = static_cast<Eigen::Index>(layout_.input);
  const double* p = params_.data();
  const ConstVec x(input.data(), I);
  a1 = (ConstMat(p + w1(), H, I) * x + ConstVec(p + b1(), H)).array().tanh().matrix();
  a2 = (ConstMat(p + w2(), H, H) * a1 + ConstVec(p + b2(), H)).array().tanh().matrix();
  return ConstVec(p + w3(), H).dot(a2) + p[b3()];
}

double ValueNetwork::gradient(std::span<const double> input,
                              std::span<double> out) const {
  if (input.size() != layout_.input || out.size() != params_.size()) {
    throw std::invalid_argument("value network gradient: dimension mismatch");
  }
  const auto H = static_cast<Eigen::Index>(layout_.hidden);
  const auto I = static_cast<Eigen::Index>(layout_.input);
  Eigen::VectorXd a1, a2;
  const double value = forward(input, a1, a2);
  const double* p = params_.data();
  const ConstVec x(input.data(), I);

  using Mat = Eigen::Map<RowMajor>;
  using Vec = Eigen::Map<Eigen::VectorXd>;
  out[b3()] = 1.0;
  Vec(out.data() + w3(), H) = a2;
  const Eigen::VectorXd delta2 =
      ConstVec(p + w3(), H).cwiseProduct((1.0 - a2.array().square()).matrix());
  Vec(out.data() + b2(), H) = delta2;
  Mat(out.data() + w2(), H, H).noalias() = delta2 * a1.transpose();
  const Eigen::VectorXd delta1 =
      (ConstMat(p + w2(), H, H).transpose() * delta2).cwiseProduct((1.0 - a1.array().square()).matrix());
  Vec(out.data() + b1(), H) = delta1;
  Mat(out.data() + w1(), H, I).noalias() = delta1 * x.transpose();
  return value;
}

double ValueNetwork::train_step(std::span<const double> input, double target) {
  if (!std::isfinite(target)) throw std::invalid_argument("training target is not finite");
  std::vector<double> grad(params_.size());
  const double prediction = gradient(input, grad);
  if (!std::isfinite(prediction)) throw TrainingDiverged("value network output is not finite");
  const double residual = target - prediction;
  if (residual == 0.0) return 0.0;

  ++step_;
  const double t = static_cast<double>(step_);
  const double c1 = 1.0 - std::pow(kAdamBeta1, t);
  const double c2 = 1.0 - std::pow(kAdamBeta2, t);
  const auto n = static_cast<Eigen::Index>(params_.size());
  Eigen::Map<Eigen::ArrayXd> g(grad.data(), n);
  g *= -2.0 * residual;
  if (!g.isFinite().all()) throw TrainingDiverged("non-finite gradient");
  Eigen::Map<Eigen::ArrayXd> m1(moment1_.data(), n);
  Eigen::Map<Eigen::ArrayXd> m2(moment2_.data(), n);
  Eigen::Map<Eigen::ArrayXd> w(params_.data(), n);
  m1 = kAdamBeta1 * m1 + (1.0 - kAdamBeta1) * g;
  m2 = kAdamBeta2 * m2 + (1.0 - kAdamBeta2) * g.square();
  w -= learning_rate_ * (m1 / c1) / ((m2 / c2).sqrt() + kAdamEpsilon);
  return residual * residual;
}

void ValueNetwork::save(std::ostream& os) const {
  os << kMagic << " 1\n";
  os << "layers " << layout_.input << ' ' << layout_.hidden << ' '
     << layout_.hidden << " 1\n";
  os << "params " << params_.size() << '\n';
  os << std::setprecision(17);
  for (double p : params_) os << p << '\n';
  if (!os) throw std::runtime_error("failed to write value network");
}

ValueNetwork ValueNetwork::load(std::istream& is) {
  std::string magic, tag;
  int version = 0;
  std::size_t in = 0, h1 = 0, h2 = 0, out = 0, count = 0;
  is >> magic >> version;
  if (magic != kMagic || version != 1) {
    throw std::runtime_error("not a value network file");
  }
  is >> tag >> in >> h1 >> h2 >> out;
  if (tag != "layers" || h1 != h2 || out != 1) {
    throw std::runtime_error("unsupported value network layout");
  }
  is >> tag >> count;
  ValueNetwork net(Layout{in, h1});
  if (tag != "params" || count != net.parameter_count()) {
    throw std::runtime_error("value network parameter count mismatch");
  }
  for (double& p : net.params_) {
    if (!(is >> p) || !std::isfinite(p)) {
      throw std::runtime_error("value network file is truncated or corrupt");
    }
  }
  return net;
}

void ValueNetwork::save_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  save(os);
}

ValueNetwork ValueNetwork::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return load(is);
}

double TabularQ::max_q(int state, std::span<const int> actions) const {
  double best = -std::numeric_limits<double>::infinity();
  for (int a : actions) best = std::max(best, q(state, a));
  return actions.empty() ? 0.0 : best;
}

void TabularQ::update(int state, int action, double reward, int next_state,
                      std::span<const int> next_actions, bool terminal) {
  const double target =
      reward + (terminal ? 0.0 : gamma_ * max_q(next_state, next_actions));
  table_.update({state, action}, target);
}

}  // namespace uavir
