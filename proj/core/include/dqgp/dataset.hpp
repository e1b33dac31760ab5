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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqgp/synthetic.hpp"
#include "dqgp/trajectory.hpp"

namespace dqgp {

inline constexpr int kManifestFormatVersion = 1;

struct ManifestEntry {
  std::string id;
  std::string file;  // relative to the manifest directory
  std::string label;
};

/// Dataset manifest: trajectory files with their condition labels.
struct Manifest {
  std::vector<ManifestEntry> entries;
  double nominal_rate = 240.0;
  TrajectorySource source = TrajectorySource::recorded;
  /// Present for generated datasets.
  std::optional<SynthSpec> synth;

  std::vector<std::string> labels() const;  // sorted, unique
};

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);
void save_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest load_manifest(const std::filesystem::path& path);

/// Loads the entry's CSV relative to `dataset_dir`.
Trajectory load_entry(const std::filesystem::path& dataset_dir, const Manifest& manifest,
                      const ManifestEntry& entry);

/// Per-condition train/test ids.
struct DatasetSplit {
  int train_k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::vector<std::string>> train;
  std::map<std::string, std::vector<std::string>> test;
};

/// Seeded split: per label, ids are sorted, shuffled with a label-specific
/// stream and the first `train_k` go to training. Throws InsufficientData
/// unless every label has at least train_k + 1 entries.
DatasetSplit split(std::span<const ManifestEntry> entries, int train_k, std::uint64_t seed);

/// Same rule applied to labeled trajectories (ids must be unique).
std::pair<std::vector<Trajectory>, std::vector<Trajectory>> split(std::span<const Trajectory> trajectories,
                                                                  int train_k, std::uint64_t seed);

std::string split_to_json(const DatasetSplit& split);
DatasetSplit split_from_json(const std::string& text);

std::string synth_spec_to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& text);

}  // namespace dqgp
