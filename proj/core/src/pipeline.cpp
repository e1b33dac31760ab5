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

#include "dqgp/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include "dqgp/dataset.hpp"
#include "dqgp/distance.hpp"
#include "dqgp/errors.hpp"
#include "dqgp/gp_io.hpp"
#include "dqgp/report.hpp"
#include "dqgp/trajectory_io.hpp"
#include "dqgp/velocities.hpp"
#include "json_util.hpp"
#include "report_json.hpp"

namespace dqgp {

namespace fs = std::filesystem;
using detail::ordered_json;

namespace {

// ---- config fields -------------------------------------------------------

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw InvalidConfig("bad value '" + text + "' for " + key);
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw InvalidConfig("bad boolean '" + text + "' for " + key);
}

std::vector<Condition> parse_conditions(const std::string& text) {
  std::vector<Condition> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(Condition::parse(item));
  }
  return out;
}

std::string join_conditions(const std::vector<Condition>& conditions) {
  std::string s;
  for (const Condition& c : conditions) {
    if (!s.empty()) s += ',';
    s += c.label();
  }
  return s;
}

struct Field {
  const char* key;
  std::function<ordered_json(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <class T, class M>
Field number_field(const char* key, M member) {
  return {key, [member](const RunConfig& c) { return ordered_json(std::invoke(member, c)); },
          [key, member](RunConfig& c, const std::string& v) { std::invoke(member, c) = parse_number<T>(key, v); }};
}

void rescale_windows(RunConfig& c) {
  const double m = static_cast<double>(c.classifier.window_m);
  c.classifier.win_nominate = c.win_nominate_rate * m;
  c.classifier.win_eliminate = c.win_eliminate_rate * m;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"seed", [](const RunConfig& c) { return ordered_json(c.seed); },
                 [](RunConfig& c, const std::string& v) {
                   c.seed = parse_number<std::uint64_t>("seed", v);
                   c.synth.seed = c.seed;
                 }});
    f.push_back({"conditions", [](const RunConfig& c) { return ordered_json(join_conditions(c.synth.conditions)); },
                 [](RunConfig& c, const std::string& v) { c.synth.conditions = parse_conditions(v); }});
    f.push_back({"feasible", [](const RunConfig& c) { return ordered_json(join_conditions(c.synth.feasible)); },
                 [](RunConfig& c, const std::string& v) { c.synth.feasible = parse_conditions(v); }});
    f.push_back(number_field<int>("repetitions", [](auto& c) -> auto& { return c.synth.repetitions; }));
    f.push_back(number_field<int>("min_steps", [](auto& c) -> auto& { return c.synth.min_steps; }));
    f.push_back(number_field<int>("max_steps", [](auto& c) -> auto& { return c.synth.max_steps; }));
    f.push_back(number_field<double>("noise_pos", [](auto& c) -> auto& { return c.synth.noise_pos; }));
    f.push_back(number_field<double>("noise_ang", [](auto& c) -> auto& { return c.synth.noise_ang; }));
    f.push_back(number_field<double>("waypoint_pos", [](auto& c) -> auto& { return c.synth.waypoint_pos; }));
    f.push_back(number_field<double>("waypoint_ang", [](auto& c) -> auto& { return c.synth.waypoint_ang; }));
    f.push_back(number_field<double>("rate", [](auto& c) -> auto& { return c.synth.rate; }));
    f.push_back(number_field<int>("train_k", [](auto& c) -> auto& { return c.train_k; }));
    f.push_back(number_field<std::size_t>("max_points", [](auto& c) -> auto& { return c.max_points; }));
    f.push_back(number_field<int>("gp_starts", [](auto& c) -> auto& { return c.fit.starts; }));
    f.push_back(number_field<int>("gp_max_iterations", [](auto& c) -> auto& { return c.fit.simplex.max_iterations; }));
    f.push_back(number_field<double>("gp_f_tolerance", [](auto& c) -> auto& { return c.fit.simplex.f_tolerance; }));
    f.push_back(number_field<double>("gp_x_tolerance", [](auto& c) -> auto& { return c.fit.simplex.x_tolerance; }));
    f.push_back(number_field<double>("gp_initial_step", [](auto& c) -> auto& { return c.fit.simplex.initial_step; }));
    f.push_back(number_field<std::uint64_t>("gp_seed", [](auto& c) -> auto& { return c.fit.seed; }));
    f.push_back(number_field<double>("jitter_start", [](auto& c) -> auto& { return c.fit.jitter.start; }));
    f.push_back(number_field<double>("jitter_factor", [](auto& c) -> auto& { return c.fit.jitter.factor; }));
    f.push_back(number_field<double>("jitter_max", [](auto& c) -> auto& { return c.fit.jitter.max; }));
    f.push_back(number_field<double>("jitter_max_condition", [](auto& c) -> auto& { return c.fit.jitter.max_condition; }));
    f.push_back(number_field<double>("abs_nominate", [](auto& c) -> auto& { return c.classifier.abs_nominate; }));
    f.push_back(number_field<double>("abs_eliminate", [](auto& c) -> auto& { return c.classifier.abs_eliminate; }));
    f.push_back({"window_m", [](const RunConfig& c) { return ordered_json(c.classifier.window_m); },
                 [](RunConfig& c, const std::string& v) {
                   c.classifier.window_m = parse_number<std::size_t>("window_m", v);
                   rescale_windows(c);
                 }});
    f.push_back({"win_nominate_rate", [](const RunConfig& c) { return ordered_json(c.win_nominate_rate); },
                 [](RunConfig& c, const std::string& v) {
                   c.win_nominate_rate = parse_number<double>("win_nominate_rate", v);
                   rescale_windows(c);
                 }});
    f.push_back({"win_eliminate_rate", [](const RunConfig& c) { return ordered_json(c.win_eliminate_rate); },
                 [](RunConfig& c, const std::string& v) {
                   c.win_eliminate_rate = parse_number<double>("win_eliminate_rate", v);
                   rescale_windows(c);
                 }});
    f.push_back(number_field<double>("epsilon_floor", [](auto& c) -> auto& { return c.classifier.epsilon_floor; }));
    f.push_back(number_field<double>("classifier_jitter_max", [](auto& c) -> auto& { return c.classifier.jitter.max; }));
    f.push_back({"oracle_labels", [](const RunConfig& c) { return ordered_json(c.oracle_labels); },
                 [](RunConfig& c, const std::string& v) { c.oracle_labels = parse_bool("oracle_labels", v); }});
    f.push_back(number_field<double>("min_accuracy", [](auto& c) -> auto& { return c.min_accuracy; }));
    f.push_back(number_field<double>("max_mean_nomination_fraction",
                                     [](auto& c) -> auto& { return c.max_mean_nomination_fraction; }));
    f.push_back(number_field<double>("max_rmse_noise_ratio", [](auto& c) -> auto& { return c.max_rmse_noise_ratio; }));
    return f;
  }();
  return table;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j = ordered_json::object();
  for (const Field& f : fields()) j[f.key] = f.get(cfg);
  j["win_nominate"] = cfg.classifier.win_nominate;
  j["win_eliminate"] = cfg.classifier.win_eliminate;
  return j;
}

// ---- helpers -------------------------------------------------------------

void say(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n';
}

ordered_json read_report(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) throw MissingReport(what + " not found: " + path.string());
  return detail::parse_json(detail::read_text(path), what);
}

std::map<std::string, ManifestEntry> entries_by_id(const Manifest& m) {
  std::map<std::string, ManifestEntry> out;
  for (const auto& e : m.entries) out.emplace(e.id, e);
  return out;
}

Manifest read_manifest(const RunConfig& cfg) {
  const fs::path path = cfg.dataset_dir() / "manifest.json";
  if (!fs::exists(path)) throw MissingReport("dataset manifest not found: " + path.string());
  return load_manifest(path);
}

DatasetSplit read_split(const RunConfig& cfg) {
  const fs::path path = cfg.out / "split.json";
  if (!fs::exists(path)) throw MissingReport("split record not found: " + path.string());
  return split_from_json(detail::read_text(path));
}

std::vector<Trajectory> load_ids(const RunConfig& cfg, const Manifest& m,
                                 const std::map<std::string, ManifestEntry>& by_id,
                                 const std::vector<std::string>& ids) {
  std::vector<Trajectory> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw InvalidConfig("split refers to unknown trajectory '" + id + "'");
    out.push_back(load_entry(cfg.dataset_dir(), m, it->second));
  }
  return out;
}

fs::path model_path(const RunConfig& cfg, const std::string& label) { return cfg.out / "models" / (label + ".json"); }

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation; zero for fewer than two values.
MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  if (v.empty()) return r;
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

std::vector<std::size_t> even_subsample(std::size_t n, std::size_t m) {
  std::vector<std::size_t> idx;
  if (m == 0 || n <= m) {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }
  idx.reserve(m);
  for (std::size_t i = 0; i < m; ++i) idx.push_back(i * n / m);
  return idx;
}

ordered_json hp_json(const Hyperparameters& hp) {
  return {{"sigma_f", hp.sigma_f}, {"length_scale", hp.length_scale}, {"sigma_n", hp.sigma_n}};
}

}  // namespace

// ---- RunConfig -----------------------------------------------------------

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "out") {
    out = value;
    return;
  }
  if (key == "data") {
    data = value;
    return;
  }
  for (const Field& f : fields()) {
    if (key == f.key) {
      f.set(*this, value);
      return;
    }
  }
  throw InvalidConfig("unknown config key '" + key + "'");
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> v{"out", "data"};
    for (const Field& f : fields()) v.emplace_back(f.key);
    return v;
  }();
  return k;
}

std::string RunConfig::to_json() const { return detail::dump(config_json(*this)); }

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string line;
  std::size_t n = 0;
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  while (std::getline(ss, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", n);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", n);
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

void apply_config_file(RunConfig& cfg, const fs::path& path) {
  for (const auto& [k, v] : parse_config_text(detail::read_text(path))) cfg.set(k, v);
}

// ---- prediction helpers --------------------------------------------------

std::vector<double> one_step_errors(const GpModel& model, const Trajectory& trajectory, std::size_t from) {
  std::vector<double> e;
  for (std::size_t k = from; k + 1 < trajectory.size(); ++k) {
    const DualQuaternionPose next = step(trajectory.pose(k), model.predict(trajectory.pose(k)).mean);
    e.push_back(d_mag(next, trajectory.pose(k + 1)));
  }
  return e;
}

double rmse_streaming(const std::vector<double>& errors) {
  if (errors.empty()) throw RangeError("RMSE of an empty error list");
  double mean_sq = 0.0;
  std::size_t n = 0;
  for (double e : errors) {
    ++n;
    mean_sq += (e * e - mean_sq) / static_cast<double>(n);
  }
  return std::sqrt(mean_sq);
}

double rmse_batch(const std::vector<double>& errors) {
  if (errors.empty()) throw RangeError("RMSE of an empty error list");
  const Eigen::Map<const Eigen::VectorXd> v(errors.data(), static_cast<Eigen::Index>(errors.size()));
  return std::sqrt(v.squaredNorm() / static_cast<double>(errors.size()));
}

// ---- commands ------------------------------------------------------------

void cmd_synth(const RunConfig& cfg, std::ostream* log) {
  SynthSpec spec = cfg.synth;
  spec.seed = cfg.seed;
  spec.validate();
  const std::vector<Trajectory> trajectories = generate_synthetic(spec);
  const fs::path dir = cfg.dataset_dir();
  fs::create_directories(dir / "trajectories");

  Manifest m;
  m.nominal_rate = spec.rate;
  m.source = TrajectorySource::synthetic;
  m.synth = spec;
  for (const Trajectory& t : trajectories) {
    const std::string file = "trajectories/" + t.id() + ".csv";
    save_trajectory(dir / file, t);
    m.entries.push_back({t.id(), file, t.label().value_or("")});
  }
  save_manifest(dir / "manifest.json", m);
  say(log, "wrote " + std::to_string(trajectories.size()) + " trajectories to " + dir.string());
}

void cmd_train(const RunConfig& cfg, std::ostream* log) {
  const Manifest m = read_manifest(cfg);
  const DatasetSplit sp = split(m.entries, cfg.train_k, cfg.seed);
  const auto by_id = entries_by_id(m);
  fs::create_directories(cfg.out / "models");
  fs::create_directories(cfg.out / "reports");
  detail::write_text(cfg.out / "split.json", split_to_json(sp));

  ordered_json conditions = ordered_json::array();
  for (const auto& [label, ids] : sp.train) {
    std::vector<TrainingPair> pairs;
    for (const Trajectory& t : load_ids(cfg, m, by_id, ids)) {
      auto p = derive_velocities(t);
      pairs.insert(pairs.end(), p.begin(), p.end());
    }
    const auto idx = even_subsample(pairs.size(), cfg.max_points);
    std::vector<DualQuaternionPose> inputs;
    TargetMatrix targets(static_cast<Eigen::Index>(idx.size()), kOutputDims);
    inputs.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      inputs.push_back(pairs[idx[i]].pose);
      targets.row(static_cast<Eigen::Index>(i)) = pairs[idx[i]].velocity.as_vector().transpose();
    }
    FitReport fit;
    const GpModel model = GpModel::fit(std::move(inputs), std::move(targets), cfg.fit, &fit);
    save_model(model_path(cfg, label), model, label);

    ordered_json dims = ordered_json::array();
    for (int d = 0; d < kOutputDims; ++d) {
      const DimensionFit& f = fit[static_cast<std::size_t>(d)];
      dims.push_back({{"dim", d},
                      {"hyperparameters", hp_json(f.hp)},
                      {"log_marginal_likelihood", f.log_marginal_likelihood},
                      {"jitter", model.jitter(d)},
                      {"restart_values", f.restart_values},
                      {"best_so_far", f.best_so_far}});
      std::ostringstream line;
      line << label << " dim " << d << ": sigma_f=" << format_double(f.hp.sigma_f)
           << " l=" << format_double(f.hp.length_scale) << " sigma_n=" << format_double(f.hp.sigma_n)
           << " lml=" << format_double(f.log_marginal_likelihood);
      say(log, line.str());
    }
    conditions.push_back({{"label", label},
                          {"n_trajectories", ids.size()},
                          {"n_pairs", pairs.size()},
                          {"n_points", model.size()},
                          {"dimensions", std::move(dims)}});
  }
  ordered_json report;
  report["config"] = config_json(cfg);
  report["conditions"] = std::move(conditions);
  detail::write_text(cfg.out / "reports" / "train.json", detail::dump(report));
}

namespace {

std::vector<ConditionModel> load_condition_models(const RunConfig& cfg, const Manifest& m, const DatasetSplit& sp,
                                                  const std::map<std::string, ManifestEntry>& by_id) {
  std::vector<ConditionModel> models;
  for (const auto& [label, ids] : sp.train) {
    const fs::path path = model_path(cfg, label);
    if (!fs::exists(path)) throw MissingReport("model not found: " + path.string());
    auto gp = std::make_shared<const GpModel>(load_model(path, cfg.fit.jitter).model);
    models.push_back(ConditionModel::from_gp(label, load_ids(cfg, m, by_id, ids), std::move(gp)));
  }
  return models;
}

std::vector<Trajectory> load_test_set(const RunConfig& cfg, const Manifest& m, const DatasetSplit& sp,
                                      const std::map<std::string, ManifestEntry>& by_id) {
  std::vector<Trajectory> out;
  for (const auto& [label, ids] : sp.test) {
    auto t = load_ids(cfg, m, by_id, ids);
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  std::sort(out.begin(), out.end(), [](const Trajectory& a, const Trajectory& b) { return a.id() < b.id(); });
  return out;
}

}  // namespace

void cmd_classify(const RunConfig& cfg, std::ostream* log) {
  const Manifest m = read_manifest(cfg);
  const DatasetSplit sp = read_split(cfg);
  const auto by_id = entries_by_id(m);
  const std::vector<ConditionModel> models = load_condition_models(cfg, m, sp, by_id);
  const std::vector<Trajectory> tests = load_test_set(cfg, m, sp, by_id);
  fs::create_directories(cfg.out / "reports" / "traces");

  std::size_t n_correct = 0;
  std::size_t n_exhausted = 0;
  double worst_sum = 0.0;
  std::vector<double> fractions;
  std::map<std::string, std::vector<const ClassificationReport*>> by_label;
  std::vector<ClassificationReport> reports;
  reports.reserve(tests.size());
  for (const Trajectory& t : tests) {
    reports.push_back(classify_stream(t, models, cfg.classifier));
    const ClassificationReport& r = reports.back();
    detail::write_text(cfg.out / "reports" / "traces" / (t.id() + ".csv"), traces_to_csv(r));
    if (r.correct()) ++n_correct;
    if (r.status == ClassifierStatus::exhausted) ++n_exhausted;
    // An exhausted stream counts as having used the whole trajectory.
    fractions.push_back(r.nomination_fraction.value_or(1.0));
    worst_sum = std::max(worst_sum, max_probability_sum_error(r));
    std::ostringstream line;
    line << t.id() << ": " << r.nominated.value_or("-") << " at step "
         << (r.nomination_step ? std::to_string(*r.nomination_step) : "-") << "/" << t.size()
         << (r.correct() ? "" : "  WRONG");
    say(log, line.str());
  }
  for (const auto& r : reports) by_label[r.true_label.value_or("")].push_back(&r);

  ordered_json per_condition = ordered_json::array();
  std::ostringstream csv;
  csv << "label,n,correct,mean_step,std_step,mean_fraction,std_fraction\n";
  for (const auto& [label, rs] : by_label) {
    std::vector<double> steps;
    std::vector<double> fr;
    std::size_t correct = 0;
    for (const ClassificationReport* r : rs) {
      steps.push_back(static_cast<double>(r->nomination_step.value_or(r->trajectory_length)));
      fr.push_back(r->nomination_fraction.value_or(1.0));
      if (r->correct()) ++correct;
    }
    const MeanStd s = mean_std(steps);
    const MeanStd f = mean_std(fr);
    per_condition.push_back({{"label", label},
                             {"n", rs.size()},
                             {"correct", correct},
                             {"mean_nomination_step", s.mean},
                             {"std_nomination_step", s.std},
                             {"mean_nomination_fraction", f.mean},
                             {"std_nomination_fraction", f.std}});
    csv << label << ',' << rs.size() << ',' << correct << ',' << format_double(s.mean) << ','
        << format_double(s.std) << ',' << format_double(f.mean) << ',' << format_double(f.std) << '\n';
  }
  detail::write_text(cfg.out / "reports" / "nomination.csv", csv.str());

  const double accuracy =
      tests.empty() ? 0.0 : static_cast<double>(n_correct) / static_cast<double>(tests.size());
  const double mean_fraction = mean_std(fractions).mean;
  ordered_json trajs = ordered_json::array();
  for (const auto& r : reports) trajs.push_back(detail::report_json(r));

  ordered_json report;
  report["config"] = config_json(cfg);
  report["summary"] = {{"n_trajectories", tests.size()},
                       {"n_correct", n_correct},
                       {"n_exhausted", n_exhausted},
                       {"accuracy", accuracy},
                       {"mean_nomination_fraction", mean_fraction},
                       {"max_probability_sum_error", worst_sum}};
  report["per_condition"] = std::move(per_condition);
  report["trajectories"] = std::move(trajs);
  detail::write_text(cfg.out / "reports" / "classify.json", detail::dump(report));
  say(log, "accuracy " + format_double(accuracy) + " (" + std::to_string(n_correct) + "/" +
               std::to_string(tests.size()) + "), mean nomination fraction " + format_double(mean_fraction));
}

void cmd_predict(const RunConfig& cfg, std::ostream* log) {
  const Manifest m = read_manifest(cfg);
  const DatasetSplit sp = read_split(cfg);
  const auto by_id = entries_by_id(m);
  const std::vector<Trajectory> tests = load_test_set(cfg, m, sp, by_id);

  std::map<std::string, ClassificationReport> nominations;
  if (!cfg.oracle_labels) {
    const ordered_json cj = read_report(cfg.out / "reports" / "classify.json", "classification report");
    for (const auto& t : cj.at("trajectories")) {
      ClassificationReport r = detail::report_from_json(t);
      nominations.emplace(r.trajectory_id, std::move(r));
    }
  }

  std::map<std::string, std::shared_ptr<const GpModel>> models;
  auto model_for = [&](const std::string& label) {
    auto it = models.find(label);
    if (it != models.end()) return it->second;
    const fs::path path = model_path(cfg, label);
    if (!fs::exists(path)) throw MissingReport("model not found: " + path.string());
    auto gp = std::make_shared<const GpModel>(load_model(path, cfg.fit.jitter).model);
    models.emplace(label, gp);
    return gp;
  };

  struct Group {
    std::vector<double> errors;
    std::vector<double> trajectory_rmse;
    std::vector<double> rollout;
  };
  std::map<std::string, Group> groups;
  Group all;
  std::size_t n_skipped = 0;
  ordered_json trajs = ordered_json::array();
  for (const Trajectory& t : tests) {
    std::string label;
    std::size_t start = 0;
    if (cfg.oracle_labels) {
      label = t.label().value_or("");
    } else {
      auto it = nominations.find(t.id());
      if (it == nominations.end()) throw MissingReport("no classification for trajectory " + t.id());
      if (!it->second.nominated || !it->second.nomination_step) {
        ++n_skipped;
        trajs.push_back({{"trajectory_id", t.id()}, {"model", nullptr}});
        continue;
      }
      label = *it->second.nominated;
      start = *it->second.nomination_step - 1;
    }
    const auto gp = model_for(label);
    const std::vector<double> e = one_step_errors(*gp, t, start);
    if (e.empty()) {
      ++n_skipped;
      trajs.push_back({{"trajectory_id", t.id()}, {"model", label}, {"start_step", start + 1}, {"n_steps", 0}});
      continue;
    }
    const double r = rmse_streaming(e);
    ordered_json rollout_error = nullptr;
    try {
      RolloutOptions ro;
      ro.rate = t.nominal_rate();
      const Rollout ro_path = rollout(*gp, t.pose(start), t.size() - 1 - start, ro);
      rollout_error = d_mag(ro_path.trajectory.pose(ro_path.trajectory.size() - 1), t.pose(t.size() - 1));
    } catch (const DivergenceDetected&) {
    }
    Group& g = groups[t.label().value_or(label)];
    for (Group* dst : {&g, &all}) {
      dst->errors.insert(dst->errors.end(), e.begin(), e.end());
      dst->trajectory_rmse.push_back(r);
      if (!rollout_error.is_null()) dst->rollout.push_back(rollout_error.get<double>());
    }
    trajs.push_back({{"trajectory_id", t.id()},
                     {"model", label},
                     {"start_step", start + 1},
                     {"n_steps", e.size()},
                     {"rmse", r},
                     {"rollout_error", rollout_error}});
  }

  const std::optional<double> floor = m.synth ? std::optional<double>(m.synth->noise_floor()) : std::nullopt;
  auto group_json = [&](const Group& g) {
    ordered_json j;
    const double r = rmse_streaming(g.errors);
    const MeanStd per = mean_std(g.trajectory_rmse);
    j["n_trajectories"] = g.trajectory_rmse.size();
    j["n_steps"] = g.errors.size();
    j["rmse"] = r;
    j["rmse_4sf"] = format_significant(r, 4);
    j["rmse_batch"] = rmse_batch(g.errors);
    j["mean_trajectory_rmse"] = per.mean;
    j["std_trajectory_rmse"] = per.std;
    j["noise_ratio"] = floor ? ordered_json(r / *floor) : ordered_json(nullptr);
    j["mean_rollout_error"] = g.rollout.empty() ? ordered_json(nullptr) : ordered_json(mean_std(g.rollout).mean);
    return j;
  };

  ordered_json per_condition = ordered_json::array();
  std::ostringstream csv;
  csv << "label,n_trajectories,n_steps,rmse,mean_trajectory_rmse,std_trajectory_rmse,noise_ratio,mean_rollout_error\n";
  for (const auto& [label, g] : groups) {
    ordered_json j = group_json(g);
    csv << label << ',' << g.trajectory_rmse.size() << ',' << g.errors.size() << ','
        << format_double(j["rmse"].get<double>()) << ',' << format_double(j["mean_trajectory_rmse"].get<double>())
        << ',' << format_double(j["std_trajectory_rmse"].get<double>()) << ','
        << (floor ? format_double(j["noise_ratio"].get<double>()) : "") << ','
        << (j["mean_rollout_error"].is_null() ? "" : format_double(j["mean_rollout_error"].get<double>())) << '\n';
    ordered_json row = {{"label", label}};
    row.update(j);
    per_condition.push_back(std::move(row));
  }
  fs::create_directories(cfg.out / "reports");
  detail::write_text(cfg.out / "reports" / "rmse.csv", csv.str());

  ordered_json report;
  report["config"] = config_json(cfg);
  report["labels_from"] = cfg.oracle_labels ? "oracle" : "classifier";
  report["noise_floor"] = floor ? ordered_json(*floor) : ordered_json(nullptr);
  report["n_skipped"] = n_skipped;
  if (all.errors.empty()) {
    report["overall"] = nullptr;
  } else {
    report["overall"] = group_json(all);
    report["overall"]["streaming_batch_difference"] = std::abs(rmse_streaming(all.errors) - rmse_batch(all.errors));
    say(log, "overall RMSE " + format_significant(rmse_streaming(all.errors), 4));
  }
  report["per_condition"] = std::move(per_condition);
  report["trajectories"] = std::move(trajs);
  detail::write_text(cfg.out / "reports" / "predict.json", detail::dump(report));
}

EvalResult cmd_eval(const RunConfig& cfg, std::ostream* log) {
  const ordered_json cj = read_report(cfg.out / "reports" / "classify.json", "classification report");
  const ordered_json pj = read_report(cfg.out / "reports" / "predict.json", "prediction report");
  try {
    const ordered_json& cs = cj.at("summary");
    const double accuracy = cs.at("accuracy").get<double>();
    const double fraction = cs.at("mean_nomination_fraction").get<double>();
    const double sum_error = cs.at("max_probability_sum_error").get<double>();

    double max_ratio = 0.0;
    bool have_ratio = !pj.at("noise_floor").is_null();
    ordered_json rows = ordered_json::array();
    for (const auto& c : pj.at("per_condition")) {
      ordered_json row = {{"label", c.at("label")}, {"rmse", c.at("rmse")}, {"noise_ratio", c.at("noise_ratio")}};
      if (have_ratio) max_ratio = std::max(max_ratio, c.at("noise_ratio").get<double>());
      rows.push_back(std::move(row));
    }
    const bool predicted = !pj.at("overall").is_null();

    ordered_json checks;
    checks["accuracy"] = accuracy >= cfg.min_accuracy;
    checks["mean_nomination_fraction"] = fraction <= cfg.max_mean_nomination_fraction;
    checks["probability_sums"] = sum_error <= 1e-9;
    checks["rmse_noise_ratio"] = predicted && (!have_ratio || max_ratio <= cfg.max_rmse_noise_ratio);
    bool passed = true;
    for (const auto& [k, v] : checks.items()) passed = passed && v.get<bool>();

    ordered_json summary;
    summary["config"] = config_json(cfg);
    summary["classification"] = {{"n_trajectories", cs.at("n_trajectories")},
                                 {"n_correct", cs.at("n_correct")},
                                 {"accuracy", accuracy},
                                 {"mean_nomination_fraction", fraction},
                                 {"max_probability_sum_error", sum_error},
                                 {"per_condition", cj.at("per_condition")}};
    summary["prediction"] = {
        {"labels_from", pj.at("labels_from")},
        {"noise_floor", pj.at("noise_floor")},
        {"overall_rmse", predicted ? pj["overall"].at("rmse") : ordered_json(nullptr)},
        {"overall_rmse_4sf", predicted ? pj["overall"].at("rmse_4sf") : ordered_json(nullptr)},
        {"max_noise_ratio", have_ratio ? ordered_json(max_ratio) : ordered_json(nullptr)},
        {"per_condition", std::move(rows)}};
    summary["checks"] = checks;
    summary["passed"] = passed;
    detail::write_text(cfg.out / "summary.json", detail::dump(summary));

    std::ostringstream t;
    char buf[160];
    t << "classification\n";
    std::snprintf(buf, sizeof buf, "  accuracy                  %-10s (min %s)  %s\n",
                  format_significant(accuracy, 4).c_str(), format_double(cfg.min_accuracy).c_str(),
                  checks["accuracy"].get<bool>() ? "ok" : "FAIL");
    t << buf;
    std::snprintf(buf, sizeof buf, "  mean nomination fraction  %-10s (max %s)  %s\n",
                  format_significant(fraction, 4).c_str(), format_double(cfg.max_mean_nomination_fraction).c_str(),
                  checks["mean_nomination_fraction"].get<bool>() ? "ok" : "FAIL");
    t << buf;
    std::snprintf(buf, sizeof buf, "  max |sum p - 1|           %-10s %s\n", format_significant(sum_error, 2).c_str(),
                  checks["probability_sums"].get<bool>() ? "ok" : "FAIL");
    t << buf << "\n";
    t << "prediction (one-step d_mag RMSE)\n";
    std::snprintf(buf, sizeof buf, "  %-8s %-12s %-12s\n", "label", "rmse", "x floor");
    t << buf;
    for (const auto& c : pj.at("per_condition")) {
      std::snprintf(buf, sizeof buf, "  %-8s %-12s %-12s\n", c.at("label").get<std::string>().c_str(),
                    format_significant(c.at("rmse").get<double>(), 4).c_str(),
                    c.at("noise_ratio").is_null() ? "-"
                                                  : format_significant(c["noise_ratio"].get<double>(), 3).c_str());
      t << buf;
    }
    std::snprintf(buf, sizeof buf, "  %-8s %-12s (max ratio %s)  %s\n", "overall",
                  predicted ? pj["overall"].at("rmse_4sf").get<std::string>().c_str() : "-",
                  format_double(cfg.max_rmse_noise_ratio).c_str(),
                  checks["rmse_noise_ratio"].get<bool>() ? "ok" : "FAIL");
    t << buf << "\n" << (passed ? "PASS" : "FAIL") << "\n";
    detail::write_text(cfg.out / "summary.txt", t.str());
    if (log) *log << t.str();
    return {passed, t.str()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 1);
  }
}

}  // namespace dqgp
