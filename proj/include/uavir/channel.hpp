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

// Geometric mmW channel: one LOS ray (present iff the segment is clear) plus
// a few weak scattered rays, between planar arrays.
//
//   H = sum_l alpha_l * a_IR(arrival_l) * a_BS(departure_l)^H      (N x M)
//   h = sum_l beta_l  * a_IR(departure_l)^T                        (1 x N)
//
// Close-in path loss, LOS / NLOS exponents 2.1 / 3.19:
//   PL = 32.4 + 10 n log10(d) + 20 log10(f_GHz)   [dB]

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "uavir/geometry.hpp"
#include "uavir/reflector.hpp"
#include "uavir/rng.hpp"
#include "uavir/world.hpp"

namespace uavir {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct ArrayGeometry {
  int rows{1};
  int cols{1};
  double spacing{0.5};  // wavelengths
  Vec3 boresight{0.0, 0.0, -1.0};

  int size() const { return rows * cols; }
};

// Element (p, q) -> exp(j 2π s (p u + q v)) with (u, v) the direction cosines
// along the array's two in-plane axes. Element index is p * cols + q.
CVector steering_vector(const ArrayGeometry& geom, Vec3 direction);

double path_loss_db(double distance_m, double carrier_ghz, bool los);

struct NoiseModel {
  double n0{0.0};         // W/Hz
  double bandwidth{0.0};  // Hz

  double power() const { return n0 * bandwidth; }
};

struct RadioParams {
  double carrier_ghz{30.0};
  double bandwidth_hz{1e8};
  double tx_power_w{10.0};
  double thermal_noise_dbm_hz{-174.0};
  double noise_figure_db{9.0};
  int scatter_paths{3};
  double scatter_offset_db{15.0};
  double body_loss_db{30.0};
  // Per-element antenna gains. The BS-IR hop sees bs + ir, the IR-UE hop
  // sees ir + ue.
  double bs_gain_dbi{0.0};
  double ir_gain_dbi{0.0};
  double ue_gain_dbi{0.0};

  NoiseModel noise() const;
};

struct BsIrLink {
  CMatrix H;
  bool los{false};
};

struct IrUeLink {
  CRowVector h;
  bool los{false};           // no obstacle on the IR-UE segment
  bool body_shadowed{false}; // LOS ray attenuated by the user's body
};

struct ChannelRealization {
  CMatrix H;
  CRowVector h;
  CVector w;
  CVector r;
  bool los_bs_ir{false};
  bool los_ir_ue{false};
  bool body_shadowed{false};
};

class ChannelModel {
 public:
  ChannelModel(RadioParams radio, ArrayGeometry bs_array,
               ArrayGeometry ir_array, BodyShadow shadow);

  BsIrLink realize_bs_ir(const Scene& scene, Vec3 ir_position, Rng& rng) const;
  IrUeLink realize_ir_ue(const Scene& scene, Vec3 ir_position,
                         const UeState& ue, Rng& rng) const;

  const RadioParams& radio() const { return radio_; }
  const ArrayGeometry& bs_array() const { return bs_array_; }
  const ArrayGeometry& ir_array() const { return ir_array_; }
  const BodyShadow& shadow() const { return shadow_; }

  // Linear power gain of one hop including antenna gains.
  double link_gain(double distance_m, bool los, double gains_dbi) const;

 private:
  CVector random_steering(const ArrayGeometry& geom, Rng& rng) const;

  RadioParams radio_;
  ArrayGeometry bs_array_;
  ArrayGeometry ir_array_;
  BodyShadow shadow_;
};

// Maximum-ratio transmission: sqrt(P) times the dominant right singular
// vector of H. A zero channel yields sqrt(P) e_1.
CVector beamformer(const CMatrix& H, double tx_power_w);

// |h Θ r|^2 / (b n0)
double snr(const CRowVector& h, const ReflectionCoefficient& theta,
           const CVector& r, const NoiseModel& noise);

// b log2(1 + η), bits/s
double capacity(double eta, const NoiseModel& noise);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace uavir
