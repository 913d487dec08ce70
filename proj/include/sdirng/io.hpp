// Copyright 2026 The sdirng Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats: device and report documents (JSON), curve and round-log
// tables (comma separated), run manifests (JSON).

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdirng/optimizer.hpp"
#include "sdirng/protocol.hpp"
#include "sdirng/qubit.hpp"

namespace sdirng::io {

using nlohmann::json;

// Device document:
//   {"preparations": [{"theta": r, "eta": r} x4],
//    "measurements": [{"theta": r, "eta": r, "fixed_computational": bool} x2]}
// Angles are radians.
json device_to_json(const QubitDevice &d);
QubitDevice device_from_json(const json &j);
std::string write_device(const QubitDevice &d);
/// Throws ParseError carrying the line (syntax errors) or field path.
QubitDevice parse_device(std::string_view text);

// Curve table: header row, then t_target, achieved_t, p_guess, h_min and the
// ten parameters, 17 significant digits.
extern const char *const kCurveHeader;
std::string write_curve(std::span<const CurvePoint> curve);
std::vector<CurvePoint> parse_curve(std::string_view text);

// Round log: round_index, a (two characters), y, b.
std::string write_round_log(std::span<const RoundRecord> records);
std::vector<RoundRecord> parse_round_log(std::string_view text);

json report_to_json(const EstimationReport &r);
EstimationReport report_from_json(const json &j);

struct RunManifest {
  std::string command;
  json parameters = json::object();
  json seeds = json::object();
  std::string tool_version;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double wall_seconds = 0;
};
json manifest_to_json(const RunManifest &m);

std::string read_file(const std::filesystem::path &path);
/// Writes through a temporary sibling and renames, so a failed write leaves
/// no partial file. Throws IoError.
void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

/// Probes that `path` can be created; throws IoError otherwise.
void check_writable(const std::filesystem::path &path);

/// Formats with 17 significant digits.
std::string format_real(double v);

}  // namespace sdirng::io
