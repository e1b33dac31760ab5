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

// dqgp command-line front end: synth, train, classify, predict, eval, run.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqgp/errors.hpp"
#include "dqgp/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::string seed;
  std::string out;
  std::vector<std::string> sets;
  std::map<std::string, std::string> values;  // key -> raw text
  bool oracle_labels = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "flat key = value file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "seed for generation and the train/test split");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--set", f.sets, "override any config key (key=value), repeatable");
  cmd->add_flag("-q,--quiet", f.quiet, "no progress output");
}

void add_keys(CLI::App* cmd, Flags& f, std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    std::string flag = std::string("--") + key;
    for (char& c : flag) {
      if (c == '_') c = '-';
    }
    cmd->add_option(flag, f.values[key], std::string("config key ") + key);
  }
}

dqgp::RunConfig resolve(CLI::App* cmd, const Flags& f) {
  dqgp::RunConfig cfg;
  if (!f.config.empty()) dqgp::apply_config_file(cfg, f.config);
  for (const auto& [key, value] : f.values) {
    std::string flag = "--" + key;
    for (char& c : flag) {
      if (c == '_') c = '-';
    }
    if (cmd->get_option_no_throw(flag) && cmd->count(flag) > 0) cfg.set(key, value);
  }
  if (!f.seed.empty()) cfg.set("seed", f.seed);
  if (!f.out.empty()) cfg.set("out", f.out);
  if (f.oracle_labels) cfg.set("oracle_labels", "true");
  for (const std::string& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw dqgp::InvalidConfig("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-quaternion GP motion models and streaming condition classification"};
  app.require_subcommand(1);

  Flags flags;
  auto* synth = app.add_subcommand("synth", "generate a synthetic handover dataset");
  auto* train = app.add_subcommand("train", "split the dataset and fit one GP per condition");
  auto* classify = app.add_subcommand("classify", "classify every test trajectory online");
  auto* predict = app.add_subcommand("predict", "one-step RMSE from the nomination step onward");
  auto* eval = app.add_subcommand("eval", "merge reports; exit 0 iff all thresholds are met");
  auto* run = app.add_subcommand("run", "synth, train, classify, predict and eval in sequence");
  for (auto* cmd : {synth, train, classify, predict, eval, run}) add_common(cmd, flags);

  const auto synth_keys = {"conditions", "repetitions", "min_steps", "max_steps", "noise_pos",
                           "noise_ang", "waypoint_pos", "waypoint_ang", "rate"};
  const auto train_keys = {"data", "train_k", "max_points", "gp_starts"};
  const auto classify_keys = {"data", "abs_nominate", "abs_eliminate", "window_m", "win_nominate_rate",
                              "win_eliminate_rate", "epsilon_floor"};
  const auto eval_keys = {"min_accuracy", "max_mean_nomination_fraction", "max_rmse_noise_ratio"};
  add_keys(synth, flags, {"data"});
  add_keys(synth, flags, synth_keys);
  add_keys(train, flags, train_keys);
  add_keys(classify, flags, classify_keys);
  add_keys(predict, flags, {"data"});
  predict->add_flag("--oracle-labels", flags.oracle_labels, "use true labels from the first step");
  add_keys(eval, flags, eval_keys);
  add_keys(run, flags, synth_keys);
  add_keys(run, flags, {"train_k", "max_points", "gp_starts", "abs_nominate", "abs_eliminate", "window_m",
                        "win_nominate_rate", "win_eliminate_rate", "epsilon_floor"});
  add_keys(run, flags, eval_keys);

  CLI11_PARSE(app, argc, argv);

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const dqgp::RunConfig cfg = resolve(cmd, flags);
    std::ostream* log = flags.quiet ? nullptr : &std::cout;
    if (cmd == synth || cmd == run) dqgp::cmd_synth(cfg, log);
    if (cmd == train || cmd == run) dqgp::cmd_train(cfg, log);
    if (cmd == classify || cmd == run) dqgp::cmd_classify(cfg, log);
    if (cmd == predict || cmd == run) dqgp::cmd_predict(cfg, log);
    if (cmd == eval || cmd == run) return dqgp::cmd_eval(cfg, log).passed ? 0 : 1;
    return 0;
  } catch (const dqgp::Error& e) {
    std::cerr << "dqgp: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "dqgp: " << e.what() << '\n';
    return 2;
  }
}
