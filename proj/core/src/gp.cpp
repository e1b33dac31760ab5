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

#include "dqgp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "dqgp/distance.hpp"
#include "dqgp/errors.hpp"

namespace dqgp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Pairwise distances at or below this are rounding noise, not separation.
constexpr double kSamePose = 1e-12;

double lml_from_gram(const GramMatrix& g, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) {
  const auto n = static_cast<double>(y.size());
  const double log_det_half = g.cholesky.matrixLLT().diagonal().array().log().sum();
  return -0.5 * y.dot(alpha) - log_det_half - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

struct DataScales {
  double target = 1.0;
  double d_min = 1.0;
  double d_median = 1.0;
  double d_max = 1.0;
};

DataScales data_scales(const Eigen::MatrixXd& distances, const Eigen::VectorXd& y) {
  DataScales s;
  const double rms = y.size() > 0 ? std::sqrt(y.squaredNorm() / static_cast<double>(y.size())) : 0.0;
  s.target = (rms > 0.0 && std::isfinite(rms)) ? rms : 1.0;

  std::vector<double> d;
  const Eigen::Index n = distances.rows();
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (distances(i, j) > kSamePose) d.push_back(distances(i, j));
    }
  }
  if (d.empty()) throw DegenerateData("all training inputs are identical");
  auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  s.d_median = *mid;
  s.d_min = *std::min_element(d.begin(), d.end());
  s.d_max = *std::max_element(d.begin(), d.end());
  return s;
}

}  // namespace

double log_marginal_likelihood(const Eigen::MatrixXd& distances, const Eigen::VectorXd& y,
                               const Hyperparameters& hp, const JitterPolicy& jitter) {
  if (distances.rows() != y.size() || distances.cols() != y.size()) {
    throw DimensionMismatch("log_marginal_likelihood: distance matrix and targets disagree");
  }
  hp.validate();
  const GramMatrix g = factorize_with_jitter(se_from_distances(distances, hp),
                                             hp.sigma_f * hp.sigma_f, hp.sigma_n * hp.sigma_n, jitter);
  const Eigen::VectorXd alpha = g.cholesky.solve(y);
  return lml_from_gram(g, y, alpha);
}

DimensionFit fit_dimension(const Eigen::MatrixXd& distances, const Eigen::VectorXd& y,
                           const GpFitOptions& options) {
  if (distances.rows() != y.size() || distances.cols() != y.size()) {
    throw DimensionMismatch("fit_dimension: distance matrix and targets disagree");
  }
  if (options.starts < 1) throw InvalidConfig("fit needs at least one start");
  const DataScales s = data_scales(distances, y);
  const double log_s = std::log(s.target);

  // Search box in log space.
  const Eigen::Vector3d lo(log_s - 5.0, std::log(s.d_min) - 3.0, log_s - 14.0);
  const Eigen::Vector3d hi(log_s + 5.0, std::log(s.d_max) + 3.0, log_s + 2.0);

  // Start grid: sigma_f in [s/2, 2s], l in [d_med/8, d_med], sigma_n in [s/100, s/3].
  const Eigen::Vector3d grid_lo(log_s - std::log(2.0), std::log(s.d_median / 8.0), log_s - std::log(100.0));
  const Eigen::Vector3d grid_hi(log_s + std::log(2.0), std::log(s.d_median), log_s - std::log(3.0));
  int levels = 1;
  while (levels * levels * levels < options.starts) ++levels;
  auto level_value = [&](int axis, int k) {
    if (levels == 1) return 0.5 * (grid_lo[axis] + grid_hi[axis]);
    return grid_lo[axis] + (grid_hi[axis] - grid_lo[axis]) * k / (levels - 1);
  };

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> shift(-0.25, 0.25);

  auto objective = [&](const Eigen::VectorXd& x) {
    for (int i = 0; i < 3; ++i) {
      if (!(x[i] >= lo[i] && x[i] <= hi[i])) return kInf;
    }
    try {
      return -log_marginal_likelihood(distances, y, Hyperparameters::from_log(x), options.jitter);
    } catch (const NotPositiveDefinite&) {
      return kInf;
    }
  };

  DimensionFit fit;
  double best = kInf;
  Eigen::VectorXd best_x;
  for (int start = 0; start < options.starts; ++start) {
    const int a = start / (levels * levels);
    const int b = (start / levels) % levels;
    const int c = start % levels;
    Eigen::VectorXd x0(3);
    x0 << level_value(0, a), level_value(1, b), level_value(2, c);
    if (options.seed != 0) {
      for (int i = 0; i < 3; ++i) x0[i] += shift(rng);
    }
    // SE over d_mag is indefinite for larger length scales; lift the noise
    // until the start factorizes so the simplex does not begin on +inf.
    while (!std::isfinite(objective(x0)) && x0[2] + 1.0 < hi[2]) x0[2] += 1.0;
    const NelderMeadResult r = nelder_mead(objective, x0, options.simplex);
    fit.restart_values.push_back(-r.value);
    if (r.value < best) {
      best = r.value;
      best_x = r.x;
    }
    fit.best_so_far.push_back(-best);
  }
  if (!std::isfinite(best)) {
    throw NotPositiveDefinite("no restart produced a factorizable Gram matrix");
  }
  fit.hp = Hyperparameters::from_log(best_x);
  fit.log_marginal_likelihood = -best;
  return fit;
}

GpModel::GpModel(std::vector<DualQuaternionPose> inputs, TargetMatrix targets,
                 const HyperparameterSet& hp, const Eigen::MatrixXd& distances,
                 const JitterPolicy& jitter)
    : inputs_(std::move(inputs)), targets_(std::move(targets)), hp_(hp) {
  for (int d = 0; d < kOutputDims; ++d) {
    const Hyperparameters& h = hp_[static_cast<std::size_t>(d)];
    h.validate();
    Dimension& dim = dims_[static_cast<std::size_t>(d)];
    dim.gram = factorize_with_jitter(se_from_distances(distances, h), h.sigma_f * h.sigma_f,
                                     h.sigma_n * h.sigma_n, jitter);
    dim.alpha = dim.gram.cholesky.solve(targets_.col(d));
  }
}

namespace {

void check_training_set(const std::vector<DualQuaternionPose>& inputs, const TargetMatrix& targets) {
  if (inputs.size() != static_cast<std::size_t>(targets.rows())) {
    throw DimensionMismatch("GP: " + std::to_string(inputs.size()) + " inputs but " +
                            std::to_string(targets.rows()) + " target rows");
  }
  if (inputs.size() < 2) throw DegenerateData("GP needs at least two training pairs");
  if (!targets.allFinite()) throw DegenerateData("GP targets contain non-finite values");
}

}  // namespace

GpModel GpModel::fit(std::vector<DualQuaternionPose> inputs, TargetMatrix targets,
                     const GpFitOptions& options, FitReport* report) {
  check_training_set(inputs, targets);
  const Eigen::MatrixXd distances = pairwise_d_mag(inputs);
  if (distances.maxCoeff() <= kSamePose) throw DegenerateData("all training inputs are identical");

  HyperparameterSet hp;
  for (int d = 0; d < kOutputDims; ++d) {
    DimensionFit f = fit_dimension(distances, targets.col(d), options);
    hp[static_cast<std::size_t>(d)] = f.hp;
    if (report) (*report)[static_cast<std::size_t>(d)] = std::move(f);
  }
  return GpModel(std::move(inputs), std::move(targets), hp, distances, options.jitter);
}

GpModel GpModel::assemble(std::vector<DualQuaternionPose> inputs, TargetMatrix targets,
                          const HyperparameterSet& hp, const JitterPolicy& jitter) {
  check_training_set(inputs, targets);
  const Eigen::MatrixXd distances = pairwise_d_mag(inputs);
  return GpModel(std::move(inputs), std::move(targets), hp, distances, jitter);
}

Prediction GpModel::predict(const DualQuaternionPose& query) const {
  const auto n = static_cast<Eigen::Index>(inputs_.size());
  Eigen::VectorXd dist(n);
  for (Eigen::Index i = 0; i < n; ++i) dist[i] = d_mag(query, inputs_[static_cast<std::size_t>(i)]);

  Vec6 mean;
  Prediction p;
  for (int d = 0; d < kOutputDims; ++d) {
    const Hyperparameters& h = hp_[static_cast<std::size_t>(d)];
    const Dimension& dim = dims_[static_cast<std::size_t>(d)];
    const double s2 = h.sigma_f * h.sigma_f;
    const Eigen::VectorXd kstar =
        (dist.array().square() * (-0.5 / (h.length_scale * h.length_scale))).exp() * s2;
    mean[d] = kstar.dot(dim.alpha);
    const Eigen::VectorXd v = dim.gram.cholesky.matrixL().solve(kstar);
    const double latent = std::clamp(s2 - v.squaredNorm(), 0.0, s2);
    p.variance[d] = latent + h.sigma_n * h.sigma_n;
  }
  p.mean = TangentVelocity::from_vector(mean);
  return p;
}

double GpModel::log_marginal_likelihood(int dim) const {
  if (dim < 0 || dim >= kOutputDims) throw RangeError("output dimension out of range");
  const Dimension& d = dims_[static_cast<std::size_t>(dim)];
  return lml_from_gram(d.gram, targets_.col(dim), d.alpha);
}

DualQuaternionPose step(const DualQuaternionPose& pose, const TangentVelocity& velocity) {
  const RigidPose p = pose.to_pose();
  return DualQuaternionPose::from_pose(central_project(p.rotation, velocity.rotational),
                                       p.translation + velocity.translational);
}

Rollout rollout(const GpModel& model, const DualQuaternionPose& start, std::size_t n_steps,
                const RolloutOptions& options) {
  if (n_steps < 1) throw RangeError("rollout needs at least one step");
  std::vector<TrajectorySample> samples;
  samples.reserve(n_steps + 1);
  samples.push_back({options.start_time, start});
  Rollout out;
  out.variances.reserve(n_steps);

  DualQuaternionPose pose = start;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const Prediction pred = model.predict(pose);
    pose = step(pose, pred.mean);
    const Vec3 p = pose.translation();
    if (!p.allFinite() || p.norm() > options.workspace_bound) {
      throw DivergenceDetected("rollout left the workspace bound at step " + std::to_string(k));
    }
    samples.push_back({options.start_time + static_cast<double>(k) / options.rate, pose});
    out.variances.push_back(pred.variance);
  }
  out.trajectory = Trajectory(std::move(samples), std::nullopt, TrajectorySource::predicted, options.rate);
  return out;
}

}  // namespace dqgp
