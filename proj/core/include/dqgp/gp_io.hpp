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

#include <filesystem>
#include <string>

#include "dqgp/gp.hpp"

namespace dqgp {

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelMetric = "d_mag/v1";

struct StoredModel {
  std::string label;
  GpModel model;
};

/// Canonical JSON text: fixed field order, shortest round-trip numbers.
std::string model_to_json(const GpModel& model, const std::string& label);
/// Throws ParseError on malformed text, wrong version or wrong metric.
StoredModel model_from_json(const std::string& text, const JitterPolicy& jitter = {});

void save_model(const std::filesystem::path& path, const GpModel& model, const std::string& label);
StoredModel load_model(const std::filesystem::path& path, const JitterPolicy& jitter = {});

}  // namespace dqgp
