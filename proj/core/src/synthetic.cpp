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

#include "dqgp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "dqgp/errors.hpp"

namespace dqgp {

namespace {

constexpr double kPi = std::numbers::pi;

char grasp_initial(Grasp g) {
  switch (g) {
    case Grasp::bottom: return 'b';
    case Grasp::top: return 't';
    case Grasp::above: return 'a';
    case Grasp::reversed: return 'r';
  }
  return '?';
}

char handover_initial(Handover h) {
  switch (h) {
    case Handover::right: return 'r';
    case Handover::down: return 'd';
    case Handover::left: return 'l';
    case Handover::up: return 'u';
  }
  return '?';
}

// Grasp fixes the hand's yaw about the world z axis and a small offset of the
// pick-up point; handover fixes the roll about the world x axis (the passing
// direction) and the offset of the transfer point.
double grasp_yaw(Grasp g) {
  switch (g) {
    case Grasp::bottom: return 0.0;
    case Grasp::top: return kPi;
    case Grasp::above: return kPi / 2.0;
    case Grasp::reversed: return -kPi / 2.0;
  }
  return 0.0;
}

Vec3 grasp_offset(Grasp g) {
  switch (g) {
    case Grasp::bottom: return {0.0, 0.0, 0.0};
    case Grasp::top: return {0.0, 0.04, 0.08};
    case Grasp::above: return {0.06, 0.0, 0.05};
    case Grasp::reversed: return {-0.06, -0.04, 0.03};
  }
  return Vec3::Zero();
}

// Quarter turns apart and offset by pi/4 so that no handover is a half turn
// from the grasp; the shortest arc is then unique.
double handover_roll(Handover h) {
  switch (h) {
    case Handover::right: return -kPi / 4.0;
    case Handover::down: return -3.0 * kPi / 4.0;
    case Handover::left: return 3.0 * kPi / 4.0;
    case Handover::up: return kPi / 4.0;
  }
  return 0.0;
}

Vec3 handover_offset(Handover h) {
  switch (h) {
    case Handover::right: return {0.0, -0.14, 0.0};
    case Handover::down: return {0.0, 0.0, -0.12};
    case Handover::left: return {0.0, 0.14, 0.0};
    case Handover::up: return {0.0, 0.0, 0.14};
  }
  return Vec3::Zero();
}

const Vec3 kPickPoint{0.35, -0.20, 0.78};
const Vec3 kTransferPoint{0.80, 0.05, 1.05};

Vec3 gaussian3(std::mt19937_64& rng, std::normal_distribution<double>& n, double sigma) {
  const double x = n(rng);
  const double y = n(rng);
  const double z = n(rng);
  return Vec3(x, y, z) * sigma;
}

}  // namespace

std::string Condition::label() const {
  return {grasp_initial(grasp), '-', handover_initial(handover)};
}

Condition Condition::parse(const std::string& label) {
  if (label.size() == 3 && label[1] == '-') {
    Condition c;
    bool ok_g = true;
    bool ok_h = true;
    switch (label[0]) {
      case 'b': c.grasp = Grasp::bottom; break;
      case 't': c.grasp = Grasp::top; break;
      case 'a': c.grasp = Grasp::above; break;
      case 'r': c.grasp = Grasp::reversed; break;
      default: ok_g = false;
    }
    switch (label[2]) {
      case 'r': c.handover = Handover::right; break;
      case 'd': c.handover = Handover::down; break;
      case 'l': c.handover = Handover::left; break;
      case 'u': c.handover = Handover::up; break;
      default: ok_h = false;
    }
    if (ok_g && ok_h) return c;
  }
  throw InvalidConfig("unknown condition label '" + label + "'");
}

std::vector<Condition> default_feasible_conditions() {
  using G = Grasp;
  using H = Handover;
  return {{G::bottom, H::right}, {G::bottom, H::down}, {G::bottom, H::left}, {G::bottom, H::up},
          {G::top, H::right},    {G::top, H::down},    {G::top, H::left},    {G::above, H::right},
          {G::above, H::left},   {G::reversed, H::up}};
}

ConditionTemplate condition_template(const Condition& c) {
  const UnitQuaternion yaw = UnitQuaternion::from_axis_angle(Vec3::UnitZ(), grasp_yaw(c.grasp));
  const UnitQuaternion roll = UnitQuaternion::from_axis_angle(Vec3::UnitX(), handover_roll(c.handover));
  ConditionTemplate t;
  t.start = {yaw, kPickPoint + grasp_offset(c.grasp)};
  t.end = {roll * yaw, kTransferPoint + handover_offset(c.handover) + 0.5 * grasp_offset(c.grasp)};
  return t;
}

void SynthSpec::validate() const {
  if (conditions.empty()) throw InvalidConfig("synthetic spec has no conditions");
  for (const Condition& c : conditions) {
    if (std::find(feasible.begin(), feasible.end(), c) == feasible.end()) {
      throw InvalidConfig("condition '" + c.label() + "' is not in the feasible list");
    }
    if (std::count(conditions.begin(), conditions.end(), c) > 1) {
      throw InvalidConfig("condition '" + c.label() + "' listed twice");
    }
  }
  if (repetitions < 1) throw InvalidConfig("repetitions must be >= 1");
  if (min_steps < 2 || max_steps < min_steps) throw InvalidConfig("invalid step range");
  for (double v : {noise_pos, noise_ang, waypoint_pos, waypoint_ang}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidConfig("noise levels must be non-negative");
  }
  if (!(rate > 0.0)) throw InvalidConfig("rate must be positive");
}

double SynthSpec::noise_floor() const { return std::sqrt(3.0) * (noise_pos + 0.5 * noise_ang); }

double minimum_jerk(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

std::vector<Trajectory> generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  std::vector<Trajectory> out;
  out.reserve(spec.conditions.size() * static_cast<std::size_t>(spec.repetitions));

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> steps_dist(spec.min_steps, spec.max_steps);

  for (const Condition& c : spec.conditions) {
    const ConditionTemplate tmpl = condition_template(c);
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      const int steps = steps_dist(rng);
      const Vec3 p0 = tmpl.start.translation + gaussian3(rng, normal, spec.waypoint_pos);
      const UnitQuaternion q0 =
          tmpl.start.rotation * UnitQuaternion::from_rotation_vector(gaussian3(rng, normal, spec.waypoint_ang));
      const Vec3 p1 = tmpl.end.translation + gaussian3(rng, normal, spec.waypoint_pos);
      const UnitQuaternion q1 =
          tmpl.end.rotation * UnitQuaternion::from_rotation_vector(gaussian3(rng, normal, spec.waypoint_ang));
      const Vec3 bump_pos = gaussian3(rng, normal, spec.waypoint_pos);
      const Vec3 bump_ang = gaussian3(rng, normal, spec.waypoint_ang);

      std::vector<TrajectorySample> samples;
      samples.reserve(static_cast<std::size_t>(steps));
      for (int k = 0; k < steps; ++k) {
        const double u = static_cast<double>(k) / (steps - 1);
        const double bump = std::sin(kPi * u);
        const Vec3 p = p0 + minimum_jerk(u) * (p1 - p0) + bump * bump_pos +
                       gaussian3(rng, normal, spec.noise_pos);
        const UnitQuaternion q = slerp(q0, q1, u) * UnitQuaternion::from_rotation_vector(bump * bump_ang) *
                                 UnitQuaternion::from_rotation_vector(gaussian3(rng, normal, spec.noise_ang));
        samples.push_back({k / spec.rate, DualQuaternionPose::from_pose(q, p)});
      }
      Trajectory t(std::move(samples), c.label(), TrajectorySource::synthetic, spec.rate);
      char id[64];
      std::snprintf(id, sizeof id, "%s_%02d", c.label().c_str(), rep);
      t.set_id(id);
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace dqgp
