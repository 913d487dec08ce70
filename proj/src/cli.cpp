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

#include "sdirng/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "sdirng/behavior_table.hpp"
#include "sdirng/errors.hpp"
#include "sdirng/io.hpp"
#include "sdirng/optimizer.hpp"
#include "sdirng/protocol.hpp"
#include "sdirng/witness.hpp"

#ifndef SDIRNG_VERSION
#define SDIRNG_VERSION "unknown"
#endif

namespace sdirng::cli {

namespace {

using io::json;
using Clock = std::chrono::steady_clock;

constexpr double kTwoToMinus32 = 2.3283064365386963e-10;
const char *const kCellLabels[4] = {"00", "01", "10", "11"};

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Globals {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string manifest;
};

struct DeviceSource {
  std::string preset;
  std::string device_path;

  void add_to(CLI::App *cmd) {
    auto *p = cmd->add_option("--preset", preset, "Built-in device: qrac or bb84")
                  ->check(CLI::IsMember({"qrac", "bb84"}));
    auto *d = cmd->add_option("--device", device_path, "Device document (JSON, radians)");
    p->excludes(d);
  }

  QubitDevice load() const {
    if (!preset.empty()) return preset_by_name(preset);
    if (device_path.empty()) throw DomainError("one of --preset or --device is required");
    return io::parse_device(io::read_file(device_path));
  }

  json describe() const {
    return preset.empty() ? json{{"device", device_path}} : json{{"preset", preset}};
  }
};

struct NoiseFlags {
  NoiseModel model;
  void add_to(CLI::App *cmd) {
    cmd->add_option("--depolarizing-q", model.depolarizing_q, "Depolarizing probability")
        ->capture_default_str();
    cmd->add_option("--flip-p", model.flip_p, "Outcome flip probability")->capture_default_str();
  }
  json describe() const { return {{"depolarizing_q", model.depolarizing_q}, {"flip_p", model.flip_p}}; }
};

struct SettingsFlags {
  OptimizationSettings s;
  void add_to(CLI::App *cmd) {
    cmd->add_option("--starts", s.starts, "Random starts per point")->capture_default_str();
    cmd->add_option("--penalty-schedule", s.penalty_weight_schedule, "Increasing penalty weights")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--constraint-tol", s.constraint_tolerance, "Admissible |T - target|")
        ->capture_default_str();
    cmd->add_option("--convergence-tol", s.convergence_tolerance, "Simplex value spread")
        ->capture_default_str();
    cmd->add_option("--max-iterations", s.max_iterations, "Iterations per stage")->capture_default_str();
  }
  json describe() const {
    return {{"starts", s.starts},
            {"penalty_weight_schedule", s.penalty_weight_schedule},
            {"constraint_tolerance", s.constraint_tolerance},
            {"convergence_tolerance", s.convergence_tolerance},
            {"max_iterations", s.max_iterations},
            {"rng_seed", s.rng_seed},
            {"threads", s.threads}};
  }
};

void write_manifest(const std::string &path, io::RunManifest m, Clock::time_point started) {
  m.tool_version = SDIRNG_VERSION;
  m.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  io::write_file_atomic(path, io::manifest_to_json(m).dump(2) + "\n");
}

std::string manifest_path(const Globals &g, const std::string &out) {
  return g.manifest.empty() ? out + ".manifest.json" : g.manifest;
}

std::vector<CurvePoint> compute_curve(double t_min, double t_max, double step,
                                      const OptimizationSettings &s, std::vector<SweepFailure> &failures) {
  const std::vector<double> grid = make_grid(t_min, t_max, step);
  return sweep_curve(grid, s, &failures);
}

void print_table(std::ostream &out, const Table &t) {
  out << "behavior table E(a,y) = P(b=0|a,y):\n";
  for (int a = 0; a < 4; ++a) {
    out << "  a=" << kCellLabels[a] << "  y=0 " << fixed6(t(a, 0)) << "  y=1 " << fixed6(t(a, 1)) << "\n";
  }
}

// witness ---------------------------------------------------------------

struct WitnessCommand {
  DeviceSource source;
  std::string curve_path;

  int run(const Globals &g, std::ostream &out) const {
    const QubitDevice d = source.load();
    const Table table = behavior_table(d);
    const auto cert = certify_table(table);
    print_table(out, table);
    out << "T=" << fixed6(cert.t_value) << "\n";
    out << "classical bound " << fixed6(classical_bound()) << ", quantum bound " << fixed6(quantum_bound())
        << "\n";
    out << "p_guess=" << fixed6(cert.p_guess) << "\n";
    out << "H∞ of table " << fixed6(cert.h_min) << "\n";

    std::optional<double> certified;
    if (cert.t_value <= classical_bound() + 1e-12) {
      certified = 0.0;
    } else if (!curve_path.empty()) {
      const auto curve = io::parse_curve(io::read_file(curve_path));
      certified = certify_witness(cert.t_value, curve);
    }
    if (certified) {
      out << "H∞ certified " << fixed6(*certified) << "\n";
    } else {
      out << "H∞ certified n/a (pass --curve to certify T above 2)\n";
    }
    if (cert.t_value <= classical_bound() + 1e-12) out << "status: no violation\n";

    if (!g.out.empty()) {
      json j = {{"t_value", cert.t_value},
                {"p_guess", cert.p_guess},
                {"h_min", cert.h_min},
                {"behavior_table", json::array()}};
      for (int a = 0; a < 4; ++a) j["behavior_table"].push_back({table(a, 0), table(a, 1)});
      if (certified) j["h_min_certified"] = *certified;
      io::write_file_atomic(g.out, j.dump(2) + "\n");
    }
    return kSuccess;
  }
};

// curve -----------------------------------------------------------------

struct CurveCommand {
  double t_min = 2.0;
  double t_max = quantum_bound();
  double step = 0.02;
  SettingsFlags settings;

  int run(const Globals &g, const std::vector<std::string> &argv, std::ostream &out,
          std::ostream &err) {
    const auto started = Clock::now();
    if (!(t_min >= classical_bound() && t_min <= t_max && t_max <= quantum_bound() + 1e-12)) {
      throw DomainError("need 2 <= t-min <= t-max <= 2*sqrt(2)");
    }
    const std::string out_path = g.out.empty() ? "curve.csv" : g.out;
    io::check_writable(out_path);
    settings.s.rng_seed = g.seed;
    settings.s.threads = g.threads;
    settings.s.validate();

    std::vector<SweepFailure> failures;
    const auto curve = compute_curve(t_min, t_max, step, settings.s, failures);
    io::write_file_atomic(out_path, io::write_curve(curve));

    io::RunManifest m;
    m.command = "curve";
    m.parameters = settings.describe();
    m.parameters["argv"] = argv;
    m.parameters["t_min"] = t_min;
    m.parameters["t_max"] = t_max;
    m.parameters["step"] = step;
    m.seeds = {{"rng_seed", g.seed}};
    m.outputs = {out_path};
    json fails = json::array();
    for (const auto &f : failures) fails.push_back({{"t_target", f.t_target}, {"message", f.message}});
    m.parameters["failures"] = fails;
    write_manifest(manifest_path(g, out_path), m, started);

    out << "wrote " << curve.size() << " curve points to " << out_path << "\n";
    for (const CurvePoint &p : curve) {
      out << "  T=" << fixed6(p.t_target) << "  p_guess=" << fixed6(p.p_guess) << "  H∞=" << fixed6(p.h_min)
          << "\n";
    }
    if (!failures.empty()) {
      err << failures.size() << " infeasible point(s):\n";
      for (const auto &f : failures) err << "  T=" << fixed6(f.t_target) << ": " << f.message << "\n";
      return kNoViolation;
    }
    return kSuccess;
  }
};

// simulate / expand -----------------------------------------------------

struct RoundFlags {
  DeviceSource source;
  NoiseFlags noise;
  std::uint64_t n = 1000000;
  double confidence = 0.99;
  std::string log_path;

  void add_to(CLI::App *cmd) {
    source.add_to(cmd);
    noise.add_to(cmd);
    cmd->add_option("-n,--rounds", n, "Number of protocol rounds")->capture_default_str();
    cmd->add_option("--confidence", confidence, "One-sided confidence level")->capture_default_str();
    cmd->add_option("--log", log_path, "Write the round log here");
  }

  json describe() const {
    json j = source.describe();
    j["noise"] = noise.describe();
    j["rounds"] = n;
    j["confidence"] = confidence;
    return j;
  }
};

std::vector<CurvePoint> load_or_build_curve(const std::string &source, const std::string &auto_out,
                                            const Globals &g, std::ostream &err) {
  if (source != "auto") return io::parse_curve(io::read_file(source));
  OptimizationSettings s;
  s.rng_seed = g.seed;
  s.threads = g.threads;
  std::vector<SweepFailure> failures;
  err << "building the certification curve (default settings)...\n";
  const auto grid = default_curve_grid();
  auto curve = sweep_curve(grid, s, &failures);
  if (!failures.empty()) throw InfeasibleError("certification curve has infeasible points", 0);
  io::write_file_atomic(auto_out, io::write_curve(curve));
  return curve;
}

struct SimulateCommand {
  RoundFlags rounds;
  std::string curve_path;

  int run(const Globals &g, const std::vector<std::string> &argv, std::ostream &out) const {
    const auto started = Clock::now();
    const QubitDevice d = rounds.source.load();
    if (!g.out.empty()) io::check_writable(g.out);
    const auto records = run_rounds(d, rounds.noise.model, rounds.n, g.seed);
    EstimationReport report = estimate_witness(records, rounds.confidence);
    if (!curve_path.empty()) {
      const auto curve = io::parse_curve(io::read_file(curve_path));
      report.h_min_certified = certify(report, curve);
    }
    if (!rounds.log_path.empty()) io::write_file_atomic(rounds.log_path, io::write_round_log(records));

    const json j = io::report_to_json(report);
    out << "t_hat=" << fixed6(report.t_hat) << "  t_lower=" << fixed6(report.t_lower)
        << "  H∞ certified " << fixed6(report.h_min_certified) << "\n";
    if (g.out.empty()) {
      out << j.dump(2) << "\n";
      return kSuccess;
    }
    io::write_file_atomic(g.out, j.dump(2) + "\n");
    io::RunManifest m;
    m.command = "simulate";
    m.parameters = rounds.describe();
    m.parameters["argv"] = argv;
    m.parameters["curve"] = curve_path;
    m.seeds = {{"round_seed", g.seed}};
    if (!curve_path.empty()) m.inputs.push_back(curve_path);
    if (!rounds.source.device_path.empty()) m.inputs.push_back(rounds.source.device_path);
    m.outputs = {g.out};
    if (!rounds.log_path.empty()) m.outputs.push_back(rounds.log_path);
    write_manifest(manifest_path(g, g.out), m, started);
    return kSuccess;
  }
};

struct ExpandCommand {
  RoundFlags rounds;
  std::string curve_path;
  double epsilon = kTwoToMinus32;
  std::uint64_t extractor_seed = 2;
  std::string report_path;

  int run(const Globals &g, const std::vector<std::string> &argv, std::ostream &out,
          std::ostream &err) const {
    const auto started = Clock::now();
    if (g.out.empty()) throw DomainError("--out is required for expand");
    const std::string report_out = report_path.empty() ? g.out + ".report.json" : report_path;
    const QubitDevice d = rounds.source.load();
    io::check_writable(g.out);
    io::check_writable(report_out);

    const std::string curve_out = g.out + ".curve.csv";
    const auto curve = load_or_build_curve(curve_path, curve_out, g, err);

    const auto records = run_rounds(d, rounds.noise.model, rounds.n, g.seed);
    EstimationReport report = estimate_witness(records, rounds.confidence);
    report.h_min_certified = certify(report, curve);

    const std::size_t n = records.size();
    const std::size_t m_bits =
        ExtractionParams::output_length_for(n, report.h_min_certified, epsilon);
    const std::size_t seed_bits = ExtractionParams::seed_length_for(n, m_bits);

    std::string status;
    if (report.t_lower <= classical_bound() || report.h_min_certified <= 0) {
      status = "no violation";
    } else if (m_bits == 0) {
      status = "insufficient entropy";
    } else {
      status = "ok";
    }

    std::vector<std::string> outputs = {report_out};
    if (m_bits > 0) {
      ExtractionParams params{n, report.h_min_certified, epsilon, BitString::random(seed_bits, extractor_seed)};
      const BitString bits = extract_bits(outcome_bits(records), params);
      const auto bytes = bits.to_bytes_msb_first();
      io::write_file_atomic(g.out, std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
      outputs.insert(outputs.begin(), g.out);
    }
    if (!rounds.log_path.empty()) {
      io::write_file_atomic(rounds.log_path, io::write_round_log(records));
      outputs.push_back(rounds.log_path);
    }
    if (curve_path == "auto") outputs.push_back(curve_out);

    json j = io::report_to_json(report);
    j["status"] = status;
    j["epsilon"] = epsilon;
    j["output_bits"] = m_bits;
    j["output_bytes"] = (m_bits + 7) / 8;
    j["valid_bits_in_last_byte"] = m_bits % 8 == 0 ? (m_bits == 0 ? 0 : 8) : m_bits % 8;
    j["input_bits_consumed"] = {{"setting_choices", 3 * static_cast<std::uint64_t>(n)},
                                {"extractor_seed", m_bits > 0 ? seed_bits : 0}};
    io::write_file_atomic(report_out, j.dump(2) + "\n");

    io::RunManifest man;
    man.command = "expand";
    man.parameters = rounds.describe();
    man.parameters["argv"] = argv;
    man.parameters["curve"] = curve_path;
    man.parameters["epsilon"] = epsilon;
    man.seeds = {{"round_seed", g.seed}, {"extractor_seed", extractor_seed}};
    if (curve_path != "auto") man.inputs.push_back(curve_path);
    if (!rounds.source.device_path.empty()) man.inputs.push_back(rounds.source.device_path);
    man.outputs = outputs;
    write_manifest(manifest_path(g, g.out), man, started);

    out << "t_hat=" << fixed6(report.t_hat) << "  t_lower=" << fixed6(report.t_lower) << "\n";
    out << "H∞ certified " << fixed6(report.h_min_certified) << " bits/round\n";
    out << "status: " << status << "\n";
    out << "consumed " << 3 * n << " setting bits" << (m_bits > 0 ? " + " + std::to_string(seed_bits) + " seed bits" : "")
        << ", produced " << m_bits << " output bits\n";
    return m_bits > 0 ? kSuccess : kNoViolation;
  }
};

// oracle ----------------------------------------------------------------

struct OracleCommand {
  double t = 2.0;
  int resolution = 9;
  double band = 0.05;
  bool free_first = false;

  int run(std::ostream &out) const {
    const double p = grid_oracle_max_guessing(t, resolution, band, {free_first});
    out << "p_guess=" << fixed6(p) << "  H∞=" << fixed6(min_entropy(p)) << "\n";
    return kSuccess;
  }
};

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Semi-device-independent random number expansion with qubit prepare-and-measure devices",
               "sdirng"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for the optimizer / protocol rounds")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", g.out, "Output file");
  app.add_option("--manifest", g.manifest, "Manifest path (default <out>.manifest.json)");

  WitnessCommand witness;
  auto *w = app.add_subcommand("witness", "Witness, behavior table and min-entropy of a device");
  witness.source.add_to(w);
  w->add_option("--curve", witness.curve_path, "Curve file for certification above T=2");

  CurveCommand curve;
  auto *c = app.add_subcommand("curve", "Min-entropy bound versus witness value");
  c->add_option("--t-min", curve.t_min, "First witness value")->capture_default_str();
  c->add_option("--t-max", curve.t_max, "Last witness value")->capture_default_str();
  c->add_option("--step", curve.step, "Grid step")->capture_default_str();
  curve.settings.add_to(c);

  SimulateCommand simulate;
  auto *s = app.add_subcommand("simulate", "Simulate rounds and estimate the witness");
  simulate.rounds.add_to(s);
  s->add_option("--curve", simulate.curve_path, "Curve file for certification");

  ExpandCommand expand;
  auto *e = app.add_subcommand("expand", "Simulate, certify and extract random bits");
  expand.rounds.add_to(e);
  e->add_option("--curve", expand.curve_path, "Curve file, or 'auto' to build one")->required();
  e->add_option("--epsilon", expand.epsilon, "Extractor security parameter")->capture_default_str();
  e->add_option("--extractor-seed", expand.extractor_seed, "Seed for the Toeplitz matrix")
      ->capture_default_str();
  e->add_option("--report", expand.report_path, "Report path (default <out>.report.json)");

  OracleCommand oracle;
  auto *o = app.add_subcommand("oracle", "Exhaustive grid search at one witness value");
  o->add_option("--t", oracle.t, "Witness value")->required();
  o->add_option("--resolution", oracle.resolution, "Grid points per angle")->capture_default_str();
  o->add_option("--band", oracle.band, "Admissible |T - t|")->capture_default_str();
  o->add_flag("--free-first-measurement", oracle.free_first, "Also search measurement y=0");

  for (auto *sub : {w, c, s, e, o}) sub->fallthrough();

  try {
    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  } catch (const CLI::ParseError &ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*w) return witness.run(g, out);
    if (*c) return curve.run(g, args, out, err);
    if (*s) return simulate.run(g, args, out);
    if (*e) return expand.run(g, args, out, err);
    if (*o) return oracle.run(out);
  } catch (const ParseError &ex) {
    err << "parse error: " << ex.what() << "\n";
    return kUsage;
  } catch (const DomainError &ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const IoError &ex) {
    err << "I/O error: " << ex.what() << "\n";
    return kIo;
  } catch (const InfeasibleError &ex) {
    err << "infeasible: " << ex.what() << "\n";
    return kNoViolation;
  } catch (const InconsistencyError &ex) {
    err << "inconsistent: " << ex.what() << "\n";
    return kNoViolation;
  } catch (const EstimationError &ex) {
    err << "estimation error: " << ex.what() << "\n";
    return kNoViolation;
  }
  return kUsage;
}

}  // namespace sdirng::cli
