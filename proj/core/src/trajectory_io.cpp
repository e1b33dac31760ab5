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

#include "dqgp/trajectory_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>

#include "dqgp/distance.hpp"
#include "dqgp/errors.hpp"

namespace dqgp {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::array<double, 8> parse_row(std::string_view line, std::size_t line_no) {
  std::array<double, 8> v{};
  std::size_t field = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    const std::string_view tok = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (field >= v.size()) throw ParseError("too many fields", line_no);
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto res = std::from_chars(first, last, v[field]);
    if (res.ec != std::errc() || res.ptr != last || first == last) {
      throw ParseError("cannot parse field " + std::to_string(field + 1), line_no);
    }
    ++field;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (field != v.size()) throw ParseError("expected 8 fields, got " + std::to_string(field), line_no);
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

Trajectory parse_trajectory_csv(const std::string& text, std::optional<std::string> label,
                                TrajectorySource source, double nominal_rate) {
  std::vector<TrajectorySample> samples;
  std::string_view rest(text);
  std::size_t line_no = 0;
  bool header_seen = false;
  UnitQuaternion previous;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = trim_cr(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (!header_seen) {
      if (line != kTrajectoryCsvHeader) {
        throw ParseError(std::string("expected header '") + kTrajectoryCsvHeader + "'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto v = parse_row(line, line_no);
    for (double c : v) {
      if (!std::isfinite(c)) throw ParseError("non-finite value", line_no);
    }
    const Quaternion raw{v[4], v[5], v[6], v[7]};
    if (raw.norm() < 1e-12) throw InvalidQuaternionRow("quaternion has zero norm", line_no);
    UnitQuaternion q(raw);
    if (!samples.empty()) {
      if (!(v[0] > samples.back().t)) throw NonMonotoneTime("time is not strictly increasing", line_no);
      // sign continuity with the previous sample
      if (dot(q.quaternion(), previous.quaternion()) < 0.0) q = -q;
      if (d_arc(previous, q) > std::numbers::pi / 4.0) {
        throw JumpDetected("orientation jump above pi/4 between consecutive samples", line_no);
      }
    }
    previous = q;
    samples.push_back({v[0], DualQuaternionPose::from_pose(q, Vec3(v[1], v[2], v[3]))});
  }
  if (!header_seen) throw ParseError("empty trajectory file", 1);
  return Trajectory(std::move(samples), std::move(label), source, nominal_rate);
}

Trajectory load_trajectory(const std::filesystem::path& path, std::optional<std::string> label,
                           TrajectorySource source, double nominal_rate) {
  Trajectory t = parse_trajectory_csv(read_file(path), std::move(label), source, nominal_rate);
  t.set_id(path.stem().string());
  return t;
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  std::string out = kTrajectoryCsvHeader;
  out += '\n';
  for (const auto& s : trajectory.samples()) {
    const RigidPose p = s.pose.to_pose();
    const double fields[8] = {s.t, p.translation.x(), p.translation.y(), p.translation.z(),
                              p.rotation.w(), p.rotation.x(), p.rotation.y(), p.rotation.z()};
    for (int i = 0; i < 8; ++i) {
      if (i) out += ',';
      out += format_double(fields[i]);
    }
    out += '\n';
  }
  return out;
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << trajectory_to_csv(trajectory);
}

}  // namespace dqgp
