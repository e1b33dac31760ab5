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
#include <iosfwd>
#include <string>
#include <vector>

#include "dqgp/classifier.hpp"
#include "dqgp/gp.hpp"
#include "dqgp/synthetic.hpp"

namespace dqgp {

/// Resolved parameters of one pipeline run. Every field has a flat key
/// (see keys()); values come from defaults, then a key=value file, then flags.
struct RunConfig {
  std::filesystem::path out = ".";
  /// Dataset directory holding manifest.json; empty means `out`.
  std::filesystem::path data;
  std::uint64_t seed = 1;

  // synth
  SynthSpec synth;

  // train
  int train_k = 15;
  /// Training pairs per condition after even subsampling (0 keeps all).
  std::size_t max_points = 160;
  GpFitOptions fit;

  // classify; window thresholds are given per step and scaled by window_m
  ClassifierConfig classifier;
  double win_nominate_rate = 0.6;
  double win_eliminate_rate = 0.08;

  // predict
  bool oracle_labels = false;

  // eval
  double min_accuracy = 1.0;
  double max_mean_nomination_fraction = 0.70;
  double max_rmse_noise_ratio = 3.0;

  std::filesystem::path dataset_dir() const { return data.empty() ? out : data; }

  /// Throws InvalidConfig for unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  static const std::vector<std::string>& keys();
  /// Every key with its resolved value, paths excluded so that reruns in
  /// different directories echo identical text.
  std::string to_json() const;
};

/// Parses "key = value" lines; '#' starts a comment. Throws ParseError.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Writes <dataset>/manifest.json and one CSV per trajectory.
void cmd_synth(const RunConfig& cfg, std::ostream* log = nullptr);
/// Writes split.json, models/<label>.json and reports/train.json.
void cmd_train(const RunConfig& cfg, std::ostream* log = nullptr);
/// Writes reports/classify.json, reports/nomination.csv and
/// reports/traces/<id>.csv.
void cmd_classify(const RunConfig& cfg, std::ostream* log = nullptr);
/// Writes reports/predict.json and reports/rmse.csv. Needs classify.json
/// unless oracle_labels is set (MissingReport).
void cmd_predict(const RunConfig& cfg, std::ostream* log = nullptr);

struct EvalResult {
  bool passed = false;
  std::string table;  // contents of summary.txt
};
/// Writes summary.json and summary.txt. Throws MissingReport.
EvalResult cmd_eval(const RunConfig& cfg, std::ostream* log = nullptr);

/// Per-step errors d_mag(step(pose_k, mean(pose_k)), pose_{k+1}) for k from
/// `from` (0-based pose index) to the second-to-last pose.
std::vector<double> one_step_errors(const GpModel& model, const Trajectory& trajectory, std::size_t from);

/// sqrt(mean(e^2)) accumulated sample by sample, and the same value from a
/// single vector reduction.
double rmse_streaming(const std::vector<double>& errors);
double rmse_batch(const std::vector<double>& errors);

}  // namespace dqgp
