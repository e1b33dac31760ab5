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

#include "dqgp/kernels.hpp"

#include <limits>
#include <string>

#include "dqgp/distance.hpp"
#include "dqgp/errors.hpp"

namespace dqgp {

void Hyperparameters::validate() const {
  if (!(sigma_f > 0.0) || !std::isfinite(sigma_f)) {
    throw InvalidHyperparameters("sigma_f must be positive and finite");
  }
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw InvalidHyperparameters("length_scale must be positive and finite");
  }
  if (!(sigma_n >= 0.0) || !std::isfinite(sigma_n)) {
    throw InvalidHyperparameters("sigma_n must be non-negative and finite");
  }
}

Eigen::Vector3d Hyperparameters::to_log() const {
  return {std::log(sigma_f), std::log(length_scale),
          sigma_n > 0.0 ? std::log(sigma_n) : -std::numeric_limits<double>::infinity()};
}

Hyperparameters Hyperparameters::from_log(const Eigen::Vector3d& p) {
  return {std::exp(p[0]), std::exp(p[1]), std::exp(p[2])};
}

double k_se(std::span<const double> a, std::span<const double> b, const Hyperparameters& hp) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("k_se: inputs of size " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return hp.sigma_f * hp.sigma_f * std::exp(-0.5 * d2 / (hp.length_scale * hp.length_scale));
}

double k_se(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Hyperparameters& hp) {
  return k_se(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
              std::span<const double>(b.data(), static_cast<std::size_t>(b.size())), hp);
}

double k_arc(const UnitQuaternion& a, const UnitQuaternion& b, const Hyperparameters& hp) {
  return se_from_distance(d_arc(a, b), hp);
}

double k_mag(const DualQuaternionPose& a, const DualQuaternionPose& b, const Hyperparameters& hp) {
  return se_from_distance(d_mag(a, b), hp);
}

GramMatrix factorize_with_jitter(Eigen::MatrixXd kernel, double signal_variance,
                                 double noise_variance, const JitterPolicy& policy) {
  const Eigen::Index n = kernel.rows();
  kernel.diagonal().array() += noise_variance;
  const double scale = signal_variance > 0.0 ? signal_variance : 1.0;
  const double cap = policy.max * scale * (1.0 + 1e-12);

  GramMatrix g;
  double jitter = 0.0;
  while (true) {
    g.K = kernel;
    if (jitter > 0.0) g.K.diagonal().array() += jitter;
    g.jitter = jitter;
    g.cholesky.compute(g.K);
    if (g.cholesky.info() == Eigen::Success) {
      if (n == 0) return g;
      const auto diag = g.cholesky.matrixLLT().diagonal();
      const double lo = diag.minCoeff();
      const double hi = diag.maxCoeff();
      if (lo > 0.0 && (hi / lo) * (hi / lo) < policy.max_condition) return g;
    }
    const double next = jitter == 0.0 ? policy.start * scale : jitter * policy.factor;
    if (!(next > jitter) || next > cap) break;
    jitter = next;
  }
  throw NotPositiveDefinite("Gram matrix not positive definite at jitter cap " +
                            std::to_string(policy.max) + " * sigma_f^2");
}

Eigen::MatrixXd pairwise_d_mag(std::span<const DualQuaternionPose> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d_mag(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      d(j, i) = d(i, j);
    }
  }
  return d;
}

Eigen::MatrixXd se_from_distances(const Eigen::MatrixXd& distances, const Hyperparameters& hp) {
  const double s2 = hp.sigma_f * hp.sigma_f;
  const double inv = -0.5 / (hp.length_scale * hp.length_scale);
  return (distances.array().square() * inv).exp() * s2;
}

GramMatrix gram(std::span<const DualQuaternionPose> points, const Hyperparameters& hp,
                const JitterPolicy& policy) {
  hp.validate();
  if (points.empty()) throw DimensionMismatch("gram: empty point set");
  return factorize_with_jitter(se_from_distances(pairwise_d_mag(points), hp),
                               hp.sigma_f * hp.sigma_f, hp.sigma_n * hp.sigma_n, policy);
}

}  // namespace dqgp
