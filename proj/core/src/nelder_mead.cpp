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

#include "dqgp/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace dqgp {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const Eigen::Index dim = start.size();
  const auto npts = static_cast<std::size_t>(dim + 1);
  NelderMeadResult result;

  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evaluations;
    const double f = objective(x);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  };

  std::vector<Eigen::VectorXd> simplex(npts, start);
  std::vector<double> values(npts);
  for (Eigen::Index i = 0; i < dim; ++i) simplex[static_cast<std::size_t>(i + 1)][i] += options.initial_step;
  for (std::size_t i = 0; i < npts; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(npts);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    // stable: equal values keep vertex order, so runs are reproducible
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Eigen::VectorXd> s(npts);
    std::vector<double> v(npts);
    for (std::size_t i = 0; i < npts; ++i) {
      s[i] = simplex[order[i]];
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    sort_simplex();
    const double spread = values.back() - values.front();
    double diameter = 0.0;
    for (std::size_t i = 1; i < npts; ++i) {
      diameter = std::max(diameter, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    }
    if (std::isfinite(spread) && spread <= options.f_tolerance && diameter <= options.x_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i + 1 < npts; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd& worst = simplex.back();
    const Eigen::VectorXd reflected = centroid + (centroid - worst);
    const double fr = eval(reflected);

    if (fr < values.front()) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex.back() = expanded;
        values.back() = fe;
      } else {
        simplex.back() = reflected;
        values.back() = fr;
      }
      continue;
    }
    if (fr < values[npts - 2]) {
      simplex.back() = reflected;
      values.back() = fr;
      continue;
    }

    const bool outside = fr < values.back();
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values.back())) {
      simplex.back() = contracted;
      values.back() = fc;
      continue;
    }

    for (std::size_t i = 1; i < npts; ++i) {
      simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
      values[i] = eval(simplex[i]);
    }
  }

  sort_simplex();
  result.x = simplex.front();
  result.value = values.front();
  return result;
}

}  // namespace dqgp
