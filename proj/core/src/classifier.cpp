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

#include "dqgp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqgp/distance.hpp"
#include "dqgp/errors.hpp"

namespace dqgp {

namespace {

// Slack on the |dp| lower bound so that rounding in d_mag never prunes a
// candidate the brute-force scan would pick.
constexpr double kPruneSlack = 1e-12;

std::size_t argmax(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

ConditionModel::ConditionModel(std::string label, std::vector<Trajectory> trajectories, Hyperparameters hp,
                               std::shared_ptr<const GpModel> gp)
    : label_(std::move(label)), trajectories_(std::move(trajectories)), hp_(hp), gp_(std::move(gp)) {
  hp_.validate();
  if (trajectories_.size() < 2) {
    throw InsufficientData("condition '" + label_ + "' needs at least two training trajectories");
  }
  positions_.reserve(trajectories_.size());
  for (const Trajectory& t : trajectories_) {
    if (t.empty()) throw InsufficientData("condition '" + label_ + "' has an empty trajectory");
    std::vector<Vec3> p;
    p.reserve(t.size());
    for (const auto& s : t.samples()) p.push_back(s.pose.translation());
    positions_.push_back(std::move(p));
  }
}

ConditionModel ConditionModel::from_gp(std::string label, std::vector<Trajectory> trajectories,
                                       std::shared_ptr<const GpModel> gp) {
  if (!gp) throw InvalidConfig("ConditionModel::from_gp needs a GP");
  const Hyperparameters hp = aggregate_hyperparameters(gp->hyperparameters());
  return ConditionModel(std::move(label), std::move(trajectories), hp, std::move(gp));
}

Hyperparameters aggregate_hyperparameters(const HyperparameterSet& hp) {
  double f2 = 0.0;
  double ll = 0.0;
  double n2 = 0.0;
  for (const Hyperparameters& h : hp) {
    f2 += h.sigma_f * h.sigma_f;
    ll += std::log(h.length_scale);
    n2 += h.sigma_n * h.sigma_n;
  }
  const double n = static_cast<double>(hp.size());
  return {std::sqrt(f2 / n), std::exp(ll / n), std::sqrt(n2 / n)};
}

double mahalanobis(const DualQuaternionPose& dq, std::span<const DualQuaternionPose> refs,
                   const Hyperparameters& hp, double epsilon_floor, const JitterPolicy& jitter) {
  if (refs.empty()) throw DimensionMismatch("mahalanobis: empty reference set");
  const auto k = static_cast<Eigen::Index>(refs.size());
  Eigen::VectorXd d(k);
  for (Eigen::Index j = 0; j < k; ++j) d[j] = d_mag(dq, refs[static_cast<std::size_t>(j)]);
  const GramMatrix g = gram(refs, hp, jitter);
  const Eigen::VectorXd w = g.cholesky.matrixL().solve(d);
  return std::max(std::sqrt(w.squaredNorm()), epsilon_floor);
}

std::vector<std::size_t> closest_pose_indices(const DualQuaternionPose& dq, const ConditionModel& condition) {
  const Vec3 p = dq.translation();
  std::vector<std::size_t> out(condition.size());
  for (std::size_t j = 0; j < condition.size(); ++j) {
    const Trajectory& traj = condition.trajectories()[j];
    const std::vector<Vec3>& pos = condition.positions(j);

    // Seed with the smallest lower bound so that pruning bites early.
    std::size_t seed = 0;
    double seed_lb = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const double lb = (pos[k] - p).squaredNorm();
      if (lb < seed_lb) {
        seed_lb = lb;
        seed = k;
      }
    }
    double best = d_mag(dq, traj.pose(seed));
    std::size_t best_k = seed;
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (k == seed) continue;
      if ((pos[k] - p).norm() > best + kPruneSlack) continue;
      const double d = d_mag(dq, traj.pose(k));
      if (d < best || (d == best && k < best_k)) {
        best = d;
        best_k = k;
      }
    }
    out[j] = best_k;
  }
  return out;
}

std::vector<DualQuaternionPose> closest_poses(const DualQuaternionPose& dq, const ConditionModel& condition) {
  const auto idx = closest_pose_indices(dq, condition);
  std::vector<DualQuaternionPose> out;
  out.reserve(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) out.push_back(condition.trajectories()[j].pose(idx[j]));
  return out;
}

std::vector<double> normalize_inverse_distances(std::span<const double> mahalanobis_distances) {
  std::vector<double> s;
  s.reserve(mahalanobis_distances.size());
  double total = 0.0;
  for (double d : mahalanobis_distances) {
    if (!(d > 0.0) || !std::isfinite(d)) throw RangeError("Mahalanobis distances must be positive and finite");
    s.push_back(1.0 / d);
    total += s.back();
  }
  for (double& v : s) v /= total;
  return s;
}

std::vector<double> step_probability(const DualQuaternionPose& dq,
                                     std::span<const ConditionModel* const> conditions, double epsilon_floor,
                                     const JitterPolicy& jitter) {
  if (conditions.empty()) throw InvalidConfig("step_probability needs at least one condition");
  if (conditions.size() == 1) return {1.0};
  std::vector<double> dm;
  dm.reserve(conditions.size());
  for (const ConditionModel* c : conditions) {
    const auto refs = closest_poses(dq, *c);
    dm.push_back(mahalanobis(dq, refs, c->hp(), epsilon_floor, jitter));
  }
  return normalize_inverse_distances(dm);
}

double trajectory_likelihood(std::span<const double> trace, std::size_t from_step, std::size_t to_step) {
  if (from_step < 1 || to_step > trace.size() || from_step > to_step) {
    throw RangeError("likelihood window [" + std::to_string(from_step) + ", " + std::to_string(to_step) +
                     "] outside trace of length " + std::to_string(trace.size()));
  }
  const std::size_t a = from_step - 1;
  const std::size_t b = to_step - 1;
  double sum = 0.5 * trace[a] + 0.5 * trace[b];  // outer half cells
  for (std::size_t i = a; i < b; ++i) sum += 0.5 * (trace[i] + trace[i + 1]);
  return sum;
}

void ClassifierConfig::validate(std::size_t n) const {
  if (!(abs_nominate > 0.0 && abs_nominate < 1.0)) throw InvalidConfig("abs_nominate must lie in (0, 1)");
  if (!(abs_eliminate > 0.0 && abs_eliminate < 1.0)) throw InvalidConfig("abs_eliminate must lie in (0, 1)");
  if (window_m < 1) throw InvalidConfig("window_m must be >= 1");
  if (!(epsilon_floor > 0.0)) throw InvalidConfig("epsilon_floor must be positive");
  if (n < 2) return;
  const double uniform = 1.0 / static_cast<double>(n);
  if (!(abs_eliminate < uniform && uniform < abs_nominate)) {
    throw InvalidConfig("absolute thresholds must satisfy abs_eliminate < 1/N < abs_nominate for N = " +
                        std::to_string(n));
  }
  const double window_uniform = static_cast<double>(window_m) * uniform;
  if (!(win_eliminate < window_uniform && window_uniform < win_nominate)) {
    throw InvalidConfig("window thresholds must satisfy win_eliminate < m/N < win_nominate for N = " +
                        std::to_string(n));
  }
}

ClassifierState initial_state(std::size_t n_models) {
  ClassifierState s;
  s.active.resize(n_models);
  for (std::size_t i = 0; i < n_models; ++i) s.active[i] = i;
  s.prob_trace.resize(n_models);
  s.window_integrals.assign(n_models, 0.0);
  return s;
}

ClassifierState advance(ClassifierState state, const DualQuaternionPose& dq, std::span<const ConditionModel> models,
                        const ClassifierConfig& cfg) {
  if (state.status != ClassifierStatus::running) return state;
  if (state.active.empty()) throw InvalidConfig("classifier state has no active conditions");
  ++state.step;

  std::vector<const ConditionModel*> active;
  active.reserve(state.active.size());
  for (std::size_t i : state.active) active.push_back(&models[i]);
  const std::vector<double> p = step_probability(dq, active, cfg.epsilon_floor, cfg.jitter);
  for (std::size_t i = 0; i < p.size(); ++i) state.prob_trace[state.active[i]].push_back(p[i]);

  auto nominate = [&](std::size_t active_pos, const char* rule) {
    state.status = ClassifierStatus::nominated;
    state.nomination = DecisionEvent{models[state.active[active_pos]].label(), state.step, rule};
  };

  // nomination
  const std::size_t top = argmax(p);
  if (p[top] >= cfg.abs_nominate) {
    nominate(top, kRuleAbsolute);
    return state;
  }
  const bool windowed = state.step >= cfg.window_m;
  std::vector<double> w(p.size(), 0.0);
  if (windowed) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto& tr = state.prob_trace[state.active[i]];
      w[i] = trajectory_likelihood(tr, tr.size() - cfg.window_m + 1, tr.size());
      state.window_integrals[state.active[i]] = w[i];
    }
    const std::size_t wtop = argmax(w);
    if (w[wtop] >= cfg.win_nominate) {
      nominate(wtop, kRuleWindow);
      return state;
    }
  }

  // elimination
  std::vector<const char*> rule(p.size(), nullptr);
  std::size_t n_removed = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= cfg.abs_eliminate) {
      rule[i] = kRuleAbsolute;
    } else if (windowed && w[i] <= cfg.win_eliminate) {
      rule[i] = kRuleWindow;
    }
    if (rule[i]) ++n_removed;
  }
  if (n_removed == p.size()) {
    nominate(top, kRuleLastRemaining);
    return state;
  }
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (rule[i]) {
      state.eliminations.push_back({models[state.active[i]].label(), state.step, rule[i]});
    } else {
      survivors.push_back(state.active[i]);
    }
  }
  state.active = std::move(survivors);
  if (state.active.size() == 1) {
    state.status = ClassifierStatus::nominated;
    state.nomination = DecisionEvent{models[state.active.front()].label(), state.step, kRuleLastRemaining};
  }
  return state;
}

StreamClassifier::StreamClassifier(std::span<const ConditionModel> models, ClassifierConfig cfg)
    : models_(models), cfg_(std::move(cfg)), state_(initial_state(models.size())) {
  if (models.empty()) throw InvalidConfig("classifier needs at least one condition");
  cfg_.validate(models.size());
}

const ClassifierState& StreamClassifier::advance(const DualQuaternionPose& dq) {
  state_ = dqgp::advance(std::move(state_), dq, models_, cfg_);
  return state_;
}

void StreamClassifier::finish() {
  if (state_.status == ClassifierStatus::running) state_.status = ClassifierStatus::exhausted;
}

ClassificationReport classify_stream(const Trajectory& trajectory, std::span<const ConditionModel> models,
                                     const ClassifierConfig& cfg) {
  if (models.size() < 2) throw InvalidConfig("classify_stream needs at least two condition models");
  StreamClassifier clf(models, cfg);
  for (std::size_t k = 0; k < trajectory.size() && !clf.done(); ++k) clf.advance(trajectory.pose(k));
  clf.finish();

  const ClassifierState& s = clf.state();
  ClassificationReport r;
  r.trajectory_id = trajectory.id();
  r.true_label = trajectory.label();
  r.status = s.status;
  r.trajectory_length = trajectory.size();
  r.steps_observed = s.step;
  r.eliminations = s.eliminations;
  r.traces = s.prob_trace;
  for (const auto& m : models) r.labels.push_back(m.label());
  if (s.nomination) {
    r.nominated = s.nomination->label;
    r.nomination_step = s.nomination->step;
    r.nomination_rule = s.nomination->rule;
    r.nomination_fraction = static_cast<double>(s.nomination->step) / static_cast<double>(trajectory.size());
  }
  return r;
}

const char* to_string(ClassifierStatus status) {
  switch (status) {
    case ClassifierStatus::running: return "running";
    case ClassifierStatus::nominated: return "nominated";
    case ClassifierStatus::exhausted: return "exhausted";
  }
  return "running";
}

}  // namespace dqgp
