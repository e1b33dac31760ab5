// Copyright 2026 The dqgp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "dqgp/dual_quaternion.hpp"

namespace dqgp {

/// Squared-exponential kernel parameters. sigma_n is observation noise.
struct Hyperparameters {
  double sigma_f = 1.0;
  double length_scale = 1.0;
  double sigma_n = 0.0;

  /// Throws InvalidHyperparameters unless sigma_f, length_scale > 0 and sigma_n >= 0.
  void validate() const;

  /// (log sigma_f, log l, log sigma_n); sigma_n = 0 maps to -inf.
  Eigen::Vector3d to_log() const;
  static Hyperparameters from_log(const Eigen::Vector3d& log_params);
};

/// sigma_f^2 exp(-d^2 / (2 l^2)) for a precomputed distance d.
inline double se_from_distance(double d, const Hyperparameters& hp) {
  return hp.sigma_f * hp.sigma_f * std::exp(-0.5 * (d * d) / (hp.length_scale * hp.length_scale));
}

/// Euclidean squared-exponential kernel. Throws DimensionMismatch.
double k_se(std::span<const double> a, std::span<const double> b, const Hyperparameters& hp);
double k_se(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Hyperparameters& hp);
/// Squared-exponential kernel over d_arc.
double k_arc(const UnitQuaternion& a, const UnitQuaternion& b, const Hyperparameters& hp);
/// Squared-exponential kernel over d_mag.
double k_mag(const DualQuaternionPose& a, const DualQuaternionPose& b, const Hyperparameters& hp);

/// Diagonal regularization ladder. The first attempt adds no jitter; then
/// start * sigma_f^2, multiplied by `factor` up to `max` * sigma_f^2.
/// A level is accepted when Cholesky succeeds and the pivot-based condition
/// estimate stays below `max_condition`.
struct JitterPolicy {
  double start = 1e-10;
  double factor = 10.0;
  double max = 1e-4;
  double max_condition = 1e12;
};

/// Covariance over a point set with its Cholesky factor.
struct GramMatrix {
  Eigen::MatrixXd K;  // includes sigma_n^2 + jitter on the diagonal
  double jitter = 0.0;
  Eigen::LLT<Eigen::MatrixXd> cholesky;

  Eigen::Index size() const { return K.rows(); }
};

/// Factorizes `kernel` + (noise_variance + jitter) I following `policy`.
/// `signal_variance` scales the jitter ladder. Throws NotPositiveDefinite.
GramMatrix factorize_with_jitter(Eigen::MatrixXd kernel, double signal_variance,
                                 double noise_variance, const JitterPolicy& policy = {});

/// Pairwise d_mag matrix; exactly symmetric with a zero diagonal.
Eigen::MatrixXd pairwise_d_mag(std::span<const DualQuaternionPose> points);

/// Element-wise squared-exponential of a distance matrix.
Eigen::MatrixXd se_from_distances(const Eigen::MatrixXd& distances, const Hyperparameters& hp);

/// k_mag Gram matrix over `points`, noise and jitter on the diagonal.
GramMatrix gram(std::span<const DualQuaternionPose> points, const Hyperparameters& hp,
                const JitterPolicy& policy = {});

}  // namespace dqgp
