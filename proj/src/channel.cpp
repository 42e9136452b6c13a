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

#include "uavir/channel.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "uavir/log.hpp"

namespace uavir {
namespace {

struct ArrayAxes {
  Vec3 u;
  Vec3 v;
};

ArrayAxes axes_for(Vec3 boresight) {
  const Vec3 n = boresight.normalized();
  const Vec3 ref = std::abs(n.z) > 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
  const Vec3 u = ref.cross(n).normalized();
  const Vec3 v = n.cross(u);
  return {u, v};
}

Vec3 random_direction(Rng& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, kTwoPi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

cplx random_phase(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, kTwoPi)); }

}  // namespace

CVector steering_vector(const ArrayGeometry& geom, Vec3 direction) {
  const ArrayAxes ax = axes_for(geom.boresight);
  const double du = direction.dot(ax.u);
  const double dv = direction.dot(ax.v);
  CVector a(geom.size());
  for (int p = 0; p < geom.rows; ++p) {
    for (int q = 0; q < geom.cols; ++q) {
      const double phase = kTwoPi * geom.spacing * (p * du + q * dv);
      a(p * geom.cols + q) = std::polar(1.0, phase);
    }
  }
  return a;
}

double path_loss_db(double distance_m, double carrier_ghz, bool los) {
  if (!(carrier_ghz > 0.0)) {
    throw std::invalid_argument("path_loss_db: carrier must be positive");
  }
  double d = distance_m;
  if (d < 1.0) {
    log::warn("path_loss_db: distance below 1 m clamped to the model floor");
    d = 1.0;
  }
  const double exponent = los ? 2.1 : 3.19;
  return 32.4 + 10.0 * exponent * std::log10(d) + 20.0 * std::log10(carrier_ghz);
}

NoiseModel RadioParams::noise() const {
  const double dbm = thermal_noise_dbm_hz + noise_figure_db;
  return NoiseModel{std::pow(10.0, (dbm - 30.0) / 10.0), bandwidth_hz};
}

ChannelModel::ChannelModel(RadioParams radio, ArrayGeometry bs_array,
                           ArrayGeometry ir_array, BodyShadow shadow)
    : radio_(radio), bs_array_(bs_array), ir_array_(ir_array), shadow_(shadow) {}

double ChannelModel::link_gain(double distance_m, bool los,
                               double gains_dbi) const {
  return db_to_linear(gains_dbi -
                      path_loss_db(distance_m, radio_.carrier_ghz, los));
}

CVector ChannelModel::random_steering(const ArrayGeometry& geom,
                                      Rng& rng) const {
  return steering_vector(geom, random_direction(rng));
}

BsIrLink ChannelModel::realize_bs_ir(const Scene& scene, Vec3 ir_position,
                                     Rng& rng) const {
  const Vec3 bs = scene.bs_position;
  const double d = distance(bs, ir_position);
  const double gains = radio_.bs_gain_dbi + radio_.ir_gain_dbi;

  BsIrLink link;
  link.los = segment_clear(bs, ir_position, scene.obstacles);
  link.H = CMatrix::Zero(ir_array_.size(), bs_array_.size());

  // The LOS phase is drawn even when the ray is blocked so the scatter draws
  // do not depend on the blockage state.
  const cplx los_phase = random_phase(rng);
  if (link.los) {
    const Vec3 toward_ir = (ir_position - bs).normalized();
    const double amp = std::sqrt(link_gain(d, true, gains));
    link.H += (amp * los_phase) * steering_vector(ir_array_, toward_ir * -1.0) *
              steering_vector(bs_array_, toward_ir).adjoint();
  }
  if (radio_.scatter_paths > 0) {
    const double power = link_gain(d, false, gains - radio_.scatter_offset_db) /
                         radio_.scatter_paths;
    const double amp = std::sqrt(power);
    for (int l = 0; l < radio_.scatter_paths; ++l) {
      const CVector a_ir = random_steering(ir_array_, rng);
      const CVector a_bs = random_steering(bs_array_, rng);
      link.H += (amp * random_phase(rng)) * a_ir * a_bs.adjoint();
    }
  }
  return link;
}

IrUeLink ChannelModel::realize_ir_ue(const Scene& scene, Vec3 ir_position,
                                     const UeState& ue, Rng& rng) const {
  const double d = distance(ir_position, ue.position);
  const double gains = radio_.ir_gain_dbi + radio_.ue_gain_dbi;

  IrUeLink link;
  link.los = segment_clear(ir_position, ue.position, scene.obstacles);
  link.body_shadowed = body_blocked(ue, ir_position, shadow_);
  link.h = CRowVector::Zero(ir_array_.size());

  const cplx los_phase = random_phase(rng);
  if (link.los) {
    double power = link_gain(d, true, gains);
    if (link.body_shadowed) power *= db_to_linear(-radio_.body_loss_db);
    const Vec3 toward_ue = (ue.position - ir_position).normalized();
    link.h += (std::sqrt(power) * los_phase) *
              steering_vector(ir_array_, toward_ue).transpose();
  }
  if (radio_.scatter_paths > 0) {
    const double power = link_gain(d, false, gains - radio_.scatter_offset_db) /
                         radio_.scatter_paths;
    const double amp = std::sqrt(power);
    for (int l = 0; l < radio_.scatter_paths; ++l) {
      link.h += (amp * random_phase(rng)) *
                random_steering(ir_array_, rng).transpose();
    }
  }
  return link;
}

CVector beamformer(const CMatrix& H, double tx_power_w) {
  const double scale = std::sqrt(tx_power_w);
  CVector w = CVector::Zero(H.cols());
  if (H.cols() == 0) return w;
  if (H.squaredNorm() == 0.0) {
    log::warn("beamformer: zero channel, transmitting along e_1");
    w(0) = scale;
    return w;
  }
  // Dominant right singular vector from the smaller Gram matrix.
  CVector v;
  if (H.rows() <= H.cols()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(H * H.adjoint());
    const CVector u = eig.eigenvectors().col(H.rows() - 1);
    v = H.adjoint() * u;
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(H.adjoint() * H);
    v = eig.eigenvectors().col(H.cols() - 1);
  }
  const double n = v.norm();
  if (n == 0.0) {
    w(0) = scale;
    return w;
  }
  return v * (scale / n);
}

double snr(const CRowVector& h, const ReflectionCoefficient& theta,
           const CVector& r, const NoiseModel& noise) {
  if (h.size() != r.size() ||
      static_cast<std::size_t>(h.size()) != theta.size()) {
    throw std::invalid_argument("snr: dimension mismatch");
  }
  cplx sum{0.0, 0.0};
  for (Eigen::Index n = 0; n < h.size(); ++n) {
    sum += h(n) * theta.element(static_cast<std::size_t>(n)) * r(n);
  }
  return std::norm(sum) / noise.power();
}

double capacity(double eta, const NoiseModel& noise) {
  return noise.bandwidth * std::log2(1.0 + eta);
}

}  // namespace uavir
