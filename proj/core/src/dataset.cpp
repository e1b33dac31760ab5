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

#include "dqgp/dataset.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dqgp/errors.hpp"
#include "dqgp/trajectory_io.hpp"
#include "json_util.hpp"

namespace dqgp {

using detail::ordered_json;

namespace {

// FNV-1a, used to derive a per-label stream from the split seed.
std::uint64_t label_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <typename Item, typename IdOf, typename LabelOf>
std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> split_indices(
    std::span<const Item> items, int train_k, std::uint64_t seed, IdOf id_of, LabelOf label_of) {
  if (train_k < 1) throw InvalidConfig("train_k must be >= 1");
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < items.size(); ++i) by_label[label_of(items[i])].push_back(i);

  std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
  for (auto& [label, idx] : by_label) {
    if (idx.size() < static_cast<std::size_t>(train_k) + 1) {
      throw InsufficientData("condition '" + label + "' has " + std::to_string(idx.size()) +
                             " trajectories, needs at least " + std::to_string(train_k + 1));
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return id_of(items[a]) < id_of(items[b]); });
    std::mt19937_64 rng(seed ^ label_hash(label));
    std::shuffle(idx.begin(), idx.end(), rng);
    auto& [train, test] = out[label];
    train.assign(idx.begin(), idx.begin() + train_k);
    test.assign(idx.begin() + train_k, idx.end());
    auto by_id = [&](std::size_t a, std::size_t b) { return id_of(items[a]) < id_of(items[b]); };
    std::sort(train.begin(), train.end(), by_id);
    std::sort(test.begin(), test.end(), by_id);
  }
  return out;
}

ordered_json condition_list(const std::vector<Condition>& cs) {
  ordered_json a = ordered_json::array();
  for (const Condition& c : cs) a.push_back(c.label());
  return a;
}

std::vector<Condition> parse_condition_list(const ordered_json& a) {
  std::vector<Condition> cs;
  for (const auto& s : a) cs.push_back(Condition::parse(s.get<std::string>()));
  return cs;
}

ordered_json synth_to_ordered(const SynthSpec& s) {
  ordered_json j;
  j["conditions"] = condition_list(s.conditions);
  j["feasible"] = condition_list(s.feasible);
  j["repetitions"] = s.repetitions;
  j["min_steps"] = s.min_steps;
  j["max_steps"] = s.max_steps;
  j["noise_pos"] = s.noise_pos;
  j["noise_ang"] = s.noise_ang;
  j["waypoint_pos"] = s.waypoint_pos;
  j["waypoint_ang"] = s.waypoint_ang;
  j["rate"] = s.rate;
  j["seed"] = s.seed;
  j["noise_floor"] = s.noise_floor();
  return j;
}

SynthSpec synth_from_ordered(const ordered_json& j) {
  SynthSpec s;
  s.conditions = parse_condition_list(j.at("conditions"));
  s.feasible = parse_condition_list(j.at("feasible"));
  s.repetitions = j.at("repetitions").get<int>();
  s.min_steps = j.at("min_steps").get<int>();
  s.max_steps = j.at("max_steps").get<int>();
  s.noise_pos = j.at("noise_pos").get<double>();
  s.noise_ang = j.at("noise_ang").get<double>();
  s.waypoint_pos = j.at("waypoint_pos").get<double>();
  s.waypoint_ang = j.at("waypoint_ang").get<double>();
  s.rate = j.at("rate").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

}  // namespace

std::vector<std::string> Manifest::labels() const {
  std::set<std::string> s;
  for (const auto& e : entries) s.insert(e.label);
  return {s.begin(), s.end()};
}

std::string manifest_to_json(const Manifest& m) {
  ordered_json j;
  j["format_version"] = kManifestFormatVersion;
  j["source"] = to_string(m.source);
  j["nominal_rate"] = m.nominal_rate;
  j["synth"] = m.synth ? synth_to_ordered(*m.synth) : ordered_json(nullptr);
  ordered_json files = ordered_json::array();
  for (const auto& e : m.entries) files.push_back({{"id", e.id}, {"file", e.file}, {"label", e.label}});
  j["files"] = std::move(files);
  return detail::dump(j);
}

Manifest manifest_from_json(const std::string& text) {
  const ordered_json j = detail::parse_json(text, "manifest");
  try {
    if (j.at("format_version").get<int>() != kManifestFormatVersion) {
      throw ParseError("unsupported manifest version", 1);
    }
    Manifest m;
    m.source = trajectory_source_from_string(j.value("source", std::string("recorded")));
    m.nominal_rate = j.value("nominal_rate", 240.0);
    if (j.contains("synth") && !j["synth"].is_null()) m.synth = synth_from_ordered(j["synth"]);
    for (const auto& f : j.at("files")) {
      m.entries.push_back({f.at("id").get<std::string>(), f.at("file").get<std::string>(),
                           f.at("label").get<std::string>()});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what(), 1);
  }
}

void save_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  detail::write_text(path, manifest_to_json(manifest));
}

Manifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(detail::read_text(path));
}

Trajectory load_entry(const std::filesystem::path& dataset_dir, const Manifest& manifest,
                      const ManifestEntry& entry) {
  Trajectory t = load_trajectory(dataset_dir / entry.file, entry.label, manifest.source, manifest.nominal_rate);
  t.set_id(entry.id);
  return t;
}

DatasetSplit split(std::span<const ManifestEntry> entries, int train_k, std::uint64_t seed) {
  const auto idx = split_indices(
      entries, train_k, seed, [](const ManifestEntry& e) -> const std::string& { return e.id; },
      [](const ManifestEntry& e) -> const std::string& { return e.label; });
  DatasetSplit s;
  s.train_k = train_k;
  s.seed = seed;
  for (const auto& [label, tt] : idx) {
    for (std::size_t i : tt.first) s.train[label].push_back(entries[i].id);
    for (std::size_t i : tt.second) s.test[label].push_back(entries[i].id);
  }
  return s;
}

std::pair<std::vector<Trajectory>, std::vector<Trajectory>> split(std::span<const Trajectory> trajectories,
                                                                  int train_k, std::uint64_t seed) {
  for (const auto& t : trajectories) {
    if (!t.label()) throw InsufficientData("split needs labeled trajectories ('" + t.id() + "' has no label)");
  }
  const auto idx = split_indices(
      trajectories, train_k, seed, [](const Trajectory& t) -> const std::string& { return t.id(); },
      [](const Trajectory& t) -> const std::string& { return *t.label(); });
  std::pair<std::vector<Trajectory>, std::vector<Trajectory>> out;
  for (const auto& [label, tt] : idx) {
    for (std::size_t i : tt.first) out.first.push_back(trajectories[i]);
    for (std::size_t i : tt.second) out.second.push_back(trajectories[i]);
  }
  return out;
}

std::string split_to_json(const DatasetSplit& s) {
  ordered_json j;
  j["train_k"] = s.train_k;
  j["seed"] = s.seed;
  ordered_json conds = ordered_json::object();
  for (const auto& [label, ids] : s.train) {
    conds[label] = {{"train", ids}, {"test", s.test.count(label) ? s.test.at(label) : std::vector<std::string>{}}};
  }
  j["conditions"] = std::move(conds);
  return detail::dump(j);
}

DatasetSplit split_from_json(const std::string& text) {
  const ordered_json j = detail::parse_json(text, "split record");
  try {
    DatasetSplit s;
    s.train_k = j.at("train_k").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [label, c] : j.at("conditions").items()) {
      s.train[label] = c.at("train").get<std::vector<std::string>>();
      s.test[label] = c.at("test").get<std::vector<std::string>>();
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed split record: ") + e.what(), 1);
  }
}

std::string synth_spec_to_json(const SynthSpec& spec) { return detail::dump(synth_to_ordered(spec)); }

SynthSpec synth_spec_from_json(const std::string& text) {
  try {
    return synth_from_ordered(detail::parse_json(text, "synthetic spec"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed synthetic spec: ") + e.what(), 1);
  }
}

}  // namespace dqgp
