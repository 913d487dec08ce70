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

#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>
#include <random>

#include "reference.hpp"
#include "sdirng/behavior_table.hpp"
#include "sdirng/errors.hpp"

using namespace sdirng;
namespace fs = std::filesystem;
using io::json;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::path(::testing::TempDir()) / "sdirng_io_test";
  fs::create_directories(dir);
  return dir;
}

std::string location_of(std::string_view text) {
  try {
    io::parse_device(text);
  } catch (const ParseError &e) {
    return e.location();
  }
  return "<no error>";
}

}  // namespace

TEST(DeviceJson, round_trip_property) {
  std::mt19937_64 rng(50);
  for (int i = 0; i < 1000; ++i) {
    const QubitDevice d = ref::random_device(rng, i % 2 == 0);
    const QubitDevice back = io::parse_device(io::write_device(d));
    const Table a = behavior_table(d), b = behavior_table(back);
    EXPECT_LE((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(back, d);
  }
}

TEST(DeviceJson, presets_round_trip) {
  for (const char *name : {"qrac", "bb84"}) {
    const QubitDevice d = preset_by_name(name);
    EXPECT_EQ(io::parse_device(io::write_device(d)), d);
  }
}

TEST(DeviceJson, syntax_errors_report_line) {
  EXPECT_EQ(location_of("{\n  \"preparations\": [\n  ,\n]}"), "line 3");
  EXPECT_EQ(location_of(""), "line 1");
}

TEST(DeviceJson, field_errors_report_path) {
  json j = io::device_to_json(preset_by_name("qrac"));
  j["preparations"][2]["theta"] = 4.0;
  EXPECT_EQ(location_of(j.dump()), "preparations[2]");

  j = io::device_to_json(preset_by_name("qrac"));
  j["measurements"][1].erase("eta");
  EXPECT_EQ(location_of(j.dump()), "measurements[1].eta");

  j = io::device_to_json(preset_by_name("qrac"));
  j["preparations"][0]["theta"] = "pi";
  EXPECT_EQ(location_of(j.dump()), "preparations[0].theta");

  j = io::device_to_json(preset_by_name("qrac"));
  j["preparations"].erase(3);
  EXPECT_EQ(location_of(j.dump()), "preparations");
}

TEST(DeviceJson, degree_fields_are_rejected) {
  json j = io::device_to_json(preset_by_name("qrac"));
  j["preparations"][1]["theta_deg"] = 45;
  try {
    io::parse_device(j.dump());
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.location(), "preparations[1].theta_deg");
    EXPECT_NE(std::string(e.what()).find("radians"), std::string::npos);
  }
  j = io::device_to_json(preset_by_name("qrac"));
  j["units"] = "degrees";
  EXPECT_EQ(location_of(j.dump()), "document.units");
}

TEST(CurveCsv, round_trip) {
  std::mt19937_64 rng(51);
  std::vector<CurvePoint> curve;
  for (int i = 0; i < 20; ++i) {
    CurvePoint p;
    p.t_target = 2.0 + 0.04 * i;
    p.achieved_t = p.t_target + 1e-7;
    p.p_guess = 1.0 - 0.01 * i;
    p.h_min = -std::log2(p.p_guess);
    p.argmax_params = ParameterVector::from_device(ref::random_device(rng, true));
    curve.push_back(p);
  }
  const std::string text = io::write_curve(curve);
  EXPECT_EQ(text.substr(0, text.find('\n')), io::kCurveHeader);
  const auto back = io::parse_curve(text);
  ASSERT_EQ(back.size(), curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(back[i].t_target, curve[i].t_target);
    EXPECT_EQ(back[i].achieved_t, curve[i].achieved_t);
    EXPECT_EQ(back[i].p_guess, curve[i].p_guess);
    EXPECT_EQ(back[i].h_min, curve[i].h_min);
    EXPECT_EQ(back[i].argmax_params, curve[i].argmax_params);
  }
}

TEST(CurveCsv, errors) {
  EXPECT_THROW(io::parse_curve("t,p\n"), ParseError);
  const std::string header = std::string(io::kCurveHeader) + "\n";
  try {
    io::parse_curve(header + "2,2,1,0,0,0,0,0,0,0,0,0,0\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.location(), "line 2");
  }
  try {
    io::parse_curve(header + "2,2,1,0,0,0,0,0,0,0,0,0,0,x\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.location(), "line 2, eta_1");
  }
  EXPECT_THROW(io::parse_curve(header + "2,2,0.3,0,0,0,0,0,0,0,0,0,0,0\n"), ParseError);
  EXPECT_THROW(io::parse_curve(header + "2,2,1,0,9,0,0,0,0,0,0,0,0,0\n"), ParseError);
}

TEST(RoundLog, round_trip) {
  const auto recs = run_rounds(qrac_preset(), {0.05, 0.01}, 2000, 4);
  const std::string text = io::write_round_log(recs);
  EXPECT_EQ(text.substr(0, text.find('\n')), "round_index,a,y,b");
  EXPECT_EQ(io::parse_round_log(text), recs);
}

TEST(RoundLog, errors) {
  EXPECT_THROW(io::parse_round_log("a,y,b\n"), ParseError);
  try {
    io::parse_round_log("round_index,a,y,b\n0,00,0,1\n1,2,0,1\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.location(), "line 3, a");
  }
}

TEST(Report, round_trip) {
  EstimationReport r = estimate_witness(run_rounds(qrac_preset(), {}, 5000, 6), 0.99);
  r.h_min_certified = 0.01;
  const json j = io::report_to_json(r);
  EXPECT_TRUE(j.contains("assumption"));
  const EstimationReport back = io::report_from_json(j);
  EXPECT_EQ(back.n_rounds, r.n_rounds);
  EXPECT_EQ(back.counts, r.counts);
  EXPECT_EQ(back.t_hat, r.t_hat);
  EXPECT_EQ(back.t_lower, r.t_lower);
  EXPECT_EQ(back.confidence, r.confidence);
  EXPECT_EQ(back.h_min_certified, r.h_min_certified);
  EXPECT_THROW(io::report_from_json(json::object()), ParseError);
}

TEST(Files, atomic_write_and_read) {
  const fs::path p = scratch_dir() / "out.txt";
  io::write_file_atomic(p, "hello\n");
  EXPECT_EQ(io::read_file(p), "hello\n");
  io::write_file_atomic(p, "again");
  EXPECT_EQ(io::read_file(p), "again");
  EXPECT_FALSE(fs::exists(p.string() + ".partial"));
}

TEST(Files, unwritable_and_missing) {
  const fs::path bad = scratch_dir() / "no_such_dir" / "x.txt";
  EXPECT_THROW(io::check_writable(bad), IoError);
  EXPECT_THROW(io::write_file_atomic(bad, "x"), IoError);
  EXPECT_FALSE(fs::exists(bad));
  EXPECT_THROW(io::read_file(bad), IoError);
}

TEST(Format, shortest_exact) {
  for (double v : {0.1, std::numbers::pi, 1e-300, -2.5}) EXPECT_EQ(std::stod(io::format_real(v)), v);
}
