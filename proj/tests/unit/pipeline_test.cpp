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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dqgp/errors.hpp"
#include "dqgp/gp.hpp"
#include "dqgp/pipeline.hpp"
#include "dqgp/synthetic.hpp"
#include "dqgp/velocities.hpp"

namespace dqgp {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(RunConfig, ParsesKeyValueText) {
  const auto kv = parse_config_text("# comment\nseed = 4\n\n  window_m=30   # trailing\nconditions = b-r, t-l\n");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"seed", "4"}));
  EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"window_m", "30"}));
  EXPECT_EQ(kv[2].second, "b-r, t-l");
  try {
    parse_config_text("seed = 1\nno equals sign\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_config_text(" = 3\n"), ParseError);
}

TEST(RunConfig, SetAppliesAndValidates) {
  RunConfig cfg;
  cfg.set("seed", "9");
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.synth.seed, 9u);
  cfg.set("conditions", "b-r,t-l");
  ASSERT_EQ(cfg.synth.conditions.size(), 2u);
  EXPECT_EQ(cfg.synth.conditions[1].label(), "t-l");
  cfg.set("window_m", "20");
  cfg.set("win_nominate_rate", "0.7");
  EXPECT_DOUBLE_EQ(cfg.classifier.win_nominate, 14.0);
  cfg.set("oracle_labels", "true");
  EXPECT_TRUE(cfg.oracle_labels);
  cfg.set("noise_pos", "2e-4");
  EXPECT_DOUBLE_EQ(cfg.synth.noise_pos, 2e-4);
  EXPECT_THROW(cfg.set("no_such_key", "1"), InvalidConfig);
  EXPECT_THROW(cfg.set("seed", "abc"), InvalidConfig);
  EXPECT_THROW(cfg.set("train_k", "1.5"), InvalidConfig);
  EXPECT_THROW(cfg.set("conditions", "b-r,zz"), InvalidConfig);
  for (const std::string& k : RunConfig::keys()) EXPECT_FALSE(k.empty());
}

TEST(RunConfig, EchoOmitsPathsAndListsEveryOtherKey) {
  RunConfig a, b;
  a.out = "/tmp/one";
  b.out = "/tmp/two";
  b.data = "/tmp/elsewhere";
  EXPECT_EQ(a.to_json(), b.to_json());
  const auto j = nlohmann::json::parse(a.to_json());
  for (const std::string& k : RunConfig::keys()) {
    if (k == "out" || k == "data") {
      EXPECT_FALSE(j.contains(k));
    } else {
      EXPECT_TRUE(j.contains(k)) << k;
    }
  }
}

TEST(Rmse, StreamingAndBatchAgree) {
  std::vector<double> e;
  for (int i = 0; i < 5000; ++i) e.push_back(1e-3 * (1.0 + std::sin(0.37 * i)));
  EXPECT_NEAR(rmse_streaming(e), rmse_batch(e), 1e-12);
  EXPECT_DOUBLE_EQ(rmse_batch({3.0, 4.0}), std::sqrt(12.5));
  EXPECT_THROW(rmse_streaming({}), RangeError);
}

TEST(OneStepErrors, OwnTrainingTrajectoryInterpolates) {
  SynthSpec spec;
  spec.conditions = {Condition::parse("a-r")};
  spec.repetitions = 1;
  spec.min_steps = spec.max_steps = 120;
  const Trajectory t = generate_synthetic(spec).front();
  const auto pairs = derive_velocities(t);
  std::vector<DualQuaternionPose> x;
  TargetMatrix y(static_cast<Eigen::Index>(pairs.size()), kOutputDims);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    x.push_back(pairs[i].pose);
    y.row(static_cast<Eigen::Index>(i)) = pairs[i].velocity.as_vector().transpose();
  }
  HyperparameterSet hp;
  for (int d = 0; d < kOutputDims; ++d) {
    const double s = std::sqrt(y.col(d).squaredNorm() / static_cast<double>(y.rows()));
    hp[static_cast<std::size_t>(d)] = {s, 0.002, 1e-9 * s};
  }
  const GpModel model = GpModel::assemble(x, y, hp);
  const std::vector<double> e = one_step_errors(model, t, 0);
  ASSERT_EQ(e.size(), t.size() - 1);
  EXPECT_LT(rmse_batch(e), 1e-3);
  EXPECT_EQ(one_step_errors(model, t, 100).size(), t.size() - 101);
}

class SmallPipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "dqgp_pipeline_test";
    fs::remove_all(dir_);
    cfg_.out = dir_;
    cfg_.set("conditions", "b-r,t-l,r-u");
    cfg_.set("repetitions", "5");
    cfg_.set("min_steps", "120");
    cfg_.set("max_steps", "150");
    cfg_.set("train_k", "3");
    cfg_.set("max_points", "60");
    cfg_.set("gp_starts", "2");
    cfg_.set("window_m", "20");
    cfg_.set("max_mean_nomination_fraction", "1.0");
    cfg_.set("max_rmse_noise_ratio", "1e9");
    cfg_.set("min_accuracy", "0");
    cmd_synth(cfg_);
    cmd_train(cfg_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static inline fs::path dir_;
  static inline RunConfig cfg_;
};

TEST_F(SmallPipeline, SynthWritesManifestAndFiles) {
  const auto m = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  ASSERT_EQ(m.at("files").size(), 15u);
  for (const auto& e : m.at("files")) EXPECT_TRUE(fs::exists(dir_ / e.at("file").get<std::string>()));
  const std::string first = slurp(dir_ / "trajectories" / "b-r_00.csv");
  RunConfig again = cfg_;
  again.out = dir_ / "again";
  cmd_synth(again);
  EXPECT_EQ(slurp(again.out / "trajectories" / "b-r_00.csv"), first);
}

TEST_F(SmallPipeline, TrainWritesModelsAndMonotoneLog) {
  for (const char* l : {"b-r", "t-l", "r-u"}) EXPECT_TRUE(fs::exists(dir_ / "models" / (std::string(l) + ".json")));
  const auto train = nlohmann::json::parse(slurp(dir_ / "reports" / "train.json"));
  EXPECT_TRUE(fs::exists(dir_ / "split.json"));
  for (const auto& [label, c] : train.at("conditions").items()) {
    for (const auto& dim : c.at("dimensions")) {
      const auto best = dim.at("best_so_far").get<std::vector<double>>();
      for (std::size_t i = 1; i < best.size(); ++i) EXPECT_GE(best[i], best[i - 1]) << label;
    }
  }
}

TEST_F(SmallPipeline, EvalNeedsReports) {
  RunConfig cfg = cfg_;
  cfg.out = dir_ / "no_reports";
  fs::create_directories(cfg.out);
  EXPECT_THROW(cmd_eval(cfg), MissingReport);
  cfg.oracle_labels = false;
  cfg.data = dir_;
  EXPECT_THROW(cmd_predict(cfg), MissingReport);
}

TEST_F(SmallPipeline, ClassifyPredictEval) {
  cmd_classify(cfg_);
  cmd_predict(cfg_);
  const EvalResult r = cmd_eval(cfg_);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.table.empty());
  const auto cls = nlohmann::json::parse(slurp(dir_ / "reports" / "classify.json"));
  EXPECT_EQ(cls.at("summary").at("n_trajectories"), 6);
  EXPECT_LT(cls.at("summary").at("max_probability_sum_error").get<double>(), 1e-9);
  EXPECT_TRUE(fs::exists(dir_ / "reports" / "nomination.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "reports" / "rmse.csv"));
  const auto pred = nlohmann::json::parse(slurp(dir_ / "reports" / "predict.json"));
  EXPECT_LT(pred.at("overall").at("streaming_batch_difference").get<double>(), 1e-12);
  const auto summary = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  EXPECT_EQ(summary.at("config"), nlohmann::json::parse(cfg_.to_json()));
  EXPECT_TRUE(summary.at("passed").get<bool>());

  RunConfig strict = cfg_;
  strict.max_rmse_noise_ratio = 1e-9;
  EXPECT_FALSE(cmd_eval(strict).passed);
}

}  // namespace
}  // namespace dqgp
