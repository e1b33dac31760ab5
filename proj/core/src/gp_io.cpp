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

#include "dqgp/gp_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dqgp/errors.hpp"

namespace dqgp {

using ordered_json = nlohmann::ordered_json;

std::string model_to_json(const GpModel& model, const std::string& label) {
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["metric"] = kModelMetric;
  j["label"] = label;
  j["n"] = model.size();
  ordered_json hps = ordered_json::array();
  for (const Hyperparameters& h : model.hyperparameters()) {
    hps.push_back({{"sigma_f", h.sigma_f}, {"length_scale", h.length_scale}, {"sigma_n", h.sigma_n}});
  }
  j["hyperparameters"] = std::move(hps);
  ordered_json inputs = ordered_json::array();
  for (const DualQuaternionPose& p : model.inputs()) inputs.push_back(p.to_array());
  j["inputs"] = std::move(inputs);
  ordered_json targets = ordered_json::array();
  const TargetMatrix& t = model.targets();
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < kOutputDims; ++c) row.push_back(t(r, c));
    targets.push_back(std::move(row));
  }
  j["targets"] = std::move(targets);
  return j.dump(1) + "\n";
}

StoredModel model_from_json(const std::string& text, const JitterPolicy& jitter) {
  try {
    const ordered_json j = ordered_json::parse(text);
    if (j.at("format_version").get<int>() != kModelFormatVersion) {
      throw ParseError("unsupported model format version", 1);
    }
    if (j.at("metric").get<std::string>() != kModelMetric) {
      throw ParseError("unsupported model metric '" + j.at("metric").get<std::string>() + "'", 1);
    }
    HyperparameterSet hp;
    const auto& hps = j.at("hyperparameters");
    if (hps.size() != static_cast<std::size_t>(kOutputDims)) {
      throw ParseError("expected 6 hyperparameter sets", 1);
    }
    for (std::size_t d = 0; d < hp.size(); ++d) {
      hp[d] = {hps[d].at("sigma_f").get<double>(), hps[d].at("length_scale").get<double>(),
               hps[d].at("sigma_n").get<double>()};
    }
    std::vector<DualQuaternionPose> inputs;
    for (const auto& row : j.at("inputs")) {
      inputs.push_back(DualQuaternionPose::from_array(row.get<std::array<double, 8>>()));
    }
    const auto& rows = j.at("targets");
    TargetMatrix targets(static_cast<Eigen::Index>(rows.size()), kOutputDims);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto v = rows[r].get<std::array<double, 6>>();
      for (int c = 0; c < kOutputDims; ++c) targets(static_cast<Eigen::Index>(r), c) = v[static_cast<std::size_t>(c)];
    }
    if (j.at("n").get<std::size_t>() != inputs.size()) throw ParseError("model 'n' disagrees with inputs", 1);
    return {j.at("label").get<std::string>(),
            GpModel::assemble(std::move(inputs), std::move(targets), hp, jitter)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what(), 1);
  }
}

void save_model(const std::filesystem::path& path, const GpModel& model, const std::string& label) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(model, label);
}

StoredModel load_model(const std::filesystem::path& path, const JitterPolicy& jitter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str(), jitter);
}

}  // namespace dqgp
