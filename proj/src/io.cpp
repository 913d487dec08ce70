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

#include "sdirng/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "sdirng/errors.hpp"

namespace sdirng::io {

namespace {

const char *const kCellLabels[4] = {"00", "01", "10", "11"};

double number_field(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.contains(key)) throw ParseError(path + "." + key, "missing field");
  const json &v = obj.at(key);
  if (!v.is_number()) throw ParseError(path + "." + key, "expected a number (radians)");
  return v.get<double>();
}

void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &path) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto &[key, value] : obj.items()) {
    if (!ok.count(key)) {
      throw ParseError(path + "." + key, "unknown field (angles are given as theta/eta in radians)");
    }
  }
}

const json &array_field(const json &j, const char *key, std::size_t size) {
  if (!j.contains(key)) throw ParseError(key, "missing field");
  const json &a = j.at(key);
  if (!a.is_array() || a.size() != size) {
    throw ParseError(key, "expected an array of " + std::to_string(size) + " records");
  }
  return a;
}

double parse_real(std::string_view cell, const std::string &where) {
  const std::string s(cell);
  if (s.empty()) throw ParseError(where, "empty value");
  char *end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) throw ParseError(where, "not a number: '" + s + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json device_to_json(const QubitDevice &d) {
  json j;
  j["preparations"] = json::array();
  for (const Qubit &q : d.preparations) j["preparations"].push_back({{"theta", q.theta()}, {"eta", q.eta()}});
  j["measurements"] = json::array();
  for (const Measurement &m : d.measurements) {
    j["measurements"].push_back(
        {{"theta", m.theta()}, {"eta", m.eta()}, {"fixed_computational", m.fixed_computational()}});
  }
  return j;
}

QubitDevice device_from_json(const json &j) {
  if (!j.is_object()) throw ParseError("document", "expected an object with preparations and measurements");
  reject_unknown(j, {"preparations", "measurements"}, "document");
  const json &preps = array_field(j, "preparations", 4);
  const json &meas = array_field(j, "measurements", 2);

  auto build = [](auto make, const std::string &path) {
    try {
      return make();
    } catch (const DomainError &e) {
      throw ParseError(path, e.what());
    }
  };

  std::vector<Qubit> qs;
  for (std::size_t a = 0; a < 4; ++a) {
    const std::string path = "preparations[" + std::to_string(a) + "]";
    const json &r = preps[a];
    if (!r.is_object()) throw ParseError(path, "expected a {theta, eta} record");
    reject_unknown(r, {"theta", "eta"}, path);
    const double theta = number_field(r, "theta", path);
    const double eta = number_field(r, "eta", path);
    qs.push_back(build([&] { return Qubit(theta, eta); }, path));
  }
  std::vector<Measurement> ms;
  for (std::size_t y = 0; y < 2; ++y) {
    const std::string path = "measurements[" + std::to_string(y) + "]";
    const json &r = meas[y];
    if (!r.is_object()) throw ParseError(path, "expected a {theta, eta, fixed_computational} record");
    reject_unknown(r, {"theta", "eta", "fixed_computational"}, path);
    const double theta = number_field(r, "theta", path);
    const double eta = number_field(r, "eta", path);
    bool fixed = false;
    if (r.contains("fixed_computational")) {
      if (!r.at("fixed_computational").is_boolean()) {
        throw ParseError(path + ".fixed_computational", "expected true or false");
      }
      fixed = r.at("fixed_computational").get<bool>();
    }
    ms.push_back(build([&] { return Measurement(theta, eta, fixed); }, path));
  }
  return QubitDevice{{qs[0], qs[1], qs[2], qs[3]}, {ms[0], ms[1]}};
}

std::string write_device(const QubitDevice &d) { return device_to_json(d).dump(2) + "\n"; }

QubitDevice parse_device(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError("line " + std::to_string(line), e.what());
  }
  return device_from_json(j);
}

const char *const kCurveHeader =
    "t_target,achieved_t,p_guess,h_min,theta_00,eta_00,theta_01,eta_01,theta_10,eta_10,"
    "theta_11,eta_11,theta_1,eta_1";

std::string write_curve(std::span<const CurvePoint> curve) {
  std::string out = std::string(kCurveHeader) + "\n";
  for (const CurvePoint &p : curve) {
    out += format_real(p.t_target) + "," + format_real(p.achieved_t) + "," + format_real(p.p_guess) +
           "," + format_real(p.h_min);
    for (int k = 0; k < ParameterVector::kSize; ++k) out += "," + format_real(p.argmax_params[k]);
    out += "\n";
  }
  return out;
}

std::vector<CurvePoint> parse_curve(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kCurveHeader) throw ParseError("line 1", "missing or unexpected curve header");
  const auto columns = split(kCurveHeader, ',');
  std::vector<CurvePoint> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const auto cells = split(lines[i], ',');
    if (cells.size() != columns.size()) {
      throw ParseError(where, "expected " + std::to_string(columns.size()) + " columns, found " +
                                  std::to_string(cells.size()));
    }
    std::vector<double> v;
    for (std::size_t c = 0; c < cells.size(); ++c) v.push_back(parse_real(cells[c], where + ", " + std::string(columns[c])));
    CurvePoint p;
    p.t_target = v[0];
    p.achieved_t = v[1];
    p.p_guess = v[2];
    p.h_min = v[3];
    RawParameters params;
    for (int k = 0; k < ParameterVector::kSize; ++k) params(k) = v[4 + k];
    try {
      p.argmax_params = ParameterVector(params);
    } catch (const DomainError &e) {
      throw ParseError(where, e.what());
    }
    if (!(p.p_guess >= 0.5 && p.p_guess <= 1) || !(p.h_min >= 0 && p.h_min <= 1)) {
      throw ParseError(where, "p_guess or h_min out of range");
    }
    out.push_back(p);
  }
  return out;
}

std::string write_round_log(std::span<const RoundRecord> records) {
  std::string out = "round_index,a,y,b\n";
  out.reserve(out.size() + records.size() * 16);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RoundRecord &r = records[i];
    out += std::to_string(i);
    out += ',';
    out += kCellLabels[r.a];
    out += ',';
    out += static_cast<char>('0' + r.y);
    out += ',';
    out += static_cast<char>('0' + r.b);
    out += '\n';
  }
  return out;
}

std::vector<RoundRecord> parse_round_log(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "round_index,a,y,b") throw ParseError("line 1", "missing round log header");
  std::vector<RoundRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const auto cells = split(lines[i], ',');
    if (cells.size() != 4) throw ParseError(where, "expected 4 columns");
    int a = -1;
    for (int k = 0; k < 4; ++k) {
      if (cells[1] == kCellLabels[k]) a = k;
    }
    if (a < 0) throw ParseError(where + ", a", "expected 00, 01, 10 or 11");
    if (cells[2] != "0" && cells[2] != "1") throw ParseError(where + ", y", "expected 0 or 1");
    if (cells[3] != "0" && cells[3] != "1") throw ParseError(where + ", b", "expected 0 or 1");
    out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(cells[2][0] - '0'),
                   static_cast<std::uint8_t>(cells[3][0] - '0')});
  }
  return out;
}

json report_to_json(const EstimationReport &r) {
  json counts = json::array();
  for (int a = 0; a < 4; ++a) {
    for (int y = 0; y < 2; ++y) {
      counts.push_back({{"a", kCellLabels[a]}, {"y", y}, {"rounds", r.counts[a][y].rounds},
                        {"zeros", r.counts[a][y].zeros}});
    }
  }
  return {{"n_rounds", r.n_rounds},
          {"counts", counts},
          {"t_hat", r.t_hat},
          {"t_lower", r.t_lower},
          {"confidence", r.confidence},
          {"h_min_certified", r.h_min_certified},
          {"assumption", "independent identically distributed rounds (collective attacks)"}};
}

EstimationReport report_from_json(const json &j) {
  EstimationReport r;
  try {
    r.n_rounds = j.at("n_rounds").get<std::uint64_t>();
    r.t_hat = j.at("t_hat").get<double>();
    r.t_lower = j.at("t_lower").get<double>();
    r.confidence = j.at("confidence").get<double>();
    r.h_min_certified = j.at("h_min_certified").get<double>();
    const json &counts = j.at("counts");
    if (!counts.is_array() || counts.size() != 8) throw ParseError("counts", "expected 8 cells");
    for (const json &c : counts) {
      const std::string a = c.at("a").get<std::string>();
      const int y = c.at("y").get<int>();
      int ai = -1;
      for (int k = 0; k < 4; ++k) {
        if (a == kCellLabels[k]) ai = k;
      }
      if (ai < 0 || (y != 0 && y != 1)) throw ParseError("counts", "bad cell label");
      r.counts[ai][y] = {c.at("rounds").get<std::uint64_t>(), c.at("zeros").get<std::uint64_t>()};
    }
  } catch (const json::exception &e) {
    throw ParseError("report", e.what());
  }
  return r;
}

json manifest_to_json(const RunManifest &m) {
  return {{"command", m.command},   {"parameters", m.parameters}, {"seeds", m.seeds},
          {"tool_version", m.tool_version}, {"inputs", m.inputs}, {"outputs", m.outputs},
          {"wall_seconds", m.wall_seconds}};
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::filesystem::path partial_path(const std::filesystem::path &path) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  return tmp;
}

}  // namespace

void check_writable(const std::filesystem::path &path) {
  const auto tmp = partial_path(path);
  {
    std::ofstream probe(tmp, std::ios::binary | std::ios::trunc);
    if (!probe) throw IoError("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::remove(tmp, ec);
}

void write_file_atomic(const std::filesystem::path &path, std::string_view contents) {
  const auto tmp = partial_path(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("short write to " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace sdirng::io
