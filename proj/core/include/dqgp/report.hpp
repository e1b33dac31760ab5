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

#include <string>

#include "dqgp/classifier.hpp"

namespace dqgp {

/// {trajectory_id, true_label, status, nominated, nomination_step,
/// nomination_fraction, nomination_rule, trajectory_length, steps_observed,
/// eliminations:[{label, step, rule}], traces:{label:[p...]}}. Absent
/// optionals are null.
std::string report_to_json(const ClassificationReport& report);
/// Throws ParseError.
ClassificationReport report_from_json(const std::string& text);

/// "step,<label>,..." with one row per observed step; a condition's cell is
/// empty once it has been eliminated.
std::string traces_to_csv(const ClassificationReport& report);

/// Largest |sum - 1| of the per-step probabilities over the conditions
/// active at that step.
double max_probability_sum_error(const ClassificationReport& report);

/// Decimal text with `digits` significant digits, e.g. 0.002900 for 4.
std::string format_significant(double v, int digits);

}  // namespace dqgp
