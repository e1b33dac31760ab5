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

#include "dqgp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dqgp/errors.hpp"
#include "dqgp/trajectory_io.hpp"
#include "report_json.hpp"

namespace dqgp {

namespace detail {

namespace {

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ClassifierStatus status_from_string(const std::string& s) {
  if (s == "running") return ClassifierStatus::running;
  if (s == "nominated") return ClassifierStatus::nominated;
  if (s == "exhausted") return ClassifierStatus::exhausted;
  throw ParseError("unknown classifier status '" + s + "'", 1);
}

}  // namespace

ordered_json report_json(const ClassificationReport& r) {
  ordered_json j;
  j["trajectory_id"] = r.trajectory_id;
  j["true_label"] = optional_json(r.true_label);
  j["status"] = to_string(r.status);
  j["nominated"] = optional_json(r.nominated);
  j["nomination_step"] = optional_json(r.nomination_step);
  j["nomination_fraction"] = optional_json(r.nomination_fraction);
  j["nomination_rule"] = r.nomination_rule;
  j["trajectory_length"] = r.trajectory_length;
  j["steps_observed"] = r.steps_observed;
  ordered_json el = ordered_json::array();
  for (const DecisionEvent& e : r.eliminations) {
    el.push_back({{"label", e.label}, {"step", e.step}, {"rule", e.rule}});
  }
  j["eliminations"] = std::move(el);
  ordered_json tr = ordered_json::object();
  for (std::size_t i = 0; i < r.labels.size(); ++i) tr[r.labels[i]] = r.traces.at(i);
  j["traces"] = std::move(tr);
  return j;
}

ClassificationReport report_from_json(const ordered_json& j) {
  try {
    ClassificationReport r;
    r.trajectory_id = j.at("trajectory_id").get<std::string>();
    if (!j.at("true_label").is_null()) r.true_label = j["true_label"].get<std::string>();
    r.status = status_from_string(j.at("status").get<std::string>());
    if (!j.at("nominated").is_null()) r.nominated = j["nominated"].get<std::string>();
    if (!j.at("nomination_step").is_null()) r.nomination_step = j["nomination_step"].get<std::size_t>();
    if (!j.at("nomination_fraction").is_null()) r.nomination_fraction = j["nomination_fraction"].get<double>();
    r.nomination_rule = j.at("nomination_rule").get<std::string>();
    r.trajectory_length = j.at("trajectory_length").get<std::size_t>();
    r.steps_observed = j.at("steps_observed").get<std::size_t>();
    for (const auto& e : j.at("eliminations")) {
      r.eliminations.push_back(
          {e.at("label").get<std::string>(), e.at("step").get<std::size_t>(), e.at("rule").get<std::string>()});
    }
    for (const auto& [label, trace] : j.at("traces").items()) {
      r.labels.push_back(label);
      r.traces.push_back(trace.get<std::vector<double>>());
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed classification report: ") + e.what(), 1);
  }
}

}  // namespace detail

std::string report_to_json(const ClassificationReport& report) {
  return detail::dump(detail::report_json(report));
}

ClassificationReport report_from_json(const std::string& text) {
  return detail::report_from_json(detail::parse_json(text, "classification report"));
}

std::string traces_to_csv(const ClassificationReport& report) {
  std::ostringstream out;
  out << "step";
  for (const auto& l : report.labels) out << ',' << l;
  out << '\n';
  for (std::size_t s = 0; s < report.steps_observed; ++s) {
    out << s + 1;
    for (const auto& tr : report.traces) {
      out << ',';
      if (s < tr.size()) out << format_double(tr[s]);
    }
    out << '\n';
  }
  return out.str();
}

double max_probability_sum_error(const ClassificationReport& report) {
  double worst = 0.0;
  for (std::size_t s = 0; s < report.steps_observed; ++s) {
    double sum = 0.0;
    for (const auto& tr : report.traces) {
      if (s < tr.size()) sum += tr[s];
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

std::string format_significant(double v, int digits) {
  if (digits < 1) throw RangeError("format_significant needs at least one digit");
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  if (v == 0.0) {
    return digits == 1 ? "0" : "0." + std::string(static_cast<std::size_t>(digits - 1), '0');
  }
  // Round first so that e.g. 9.9996 moves to the next decade before the
  // number of decimals is fixed.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  const int exponent = std::stoi(std::string(buf).substr(std::string(buf).find('e') + 1));
  const int decimals = std::max(0, digits - 1 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, std::stod(buf));
  return buf;
}

}  // namespace dqgp
