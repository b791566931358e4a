// hqk: command-line front end for the hybrid QKD-KLJN toolkit.
//
//   hqk sweep      rate/throughput table versus distance
//   hqk trace      round-by-round protocol trace (reference fixture by default)
//   hqk simulate   Monte Carlo session, gated or buffered
//   hqk crossover  distance where hybrid throughput meets BB84
//
// Configuration: --config FILE, else $HQK_CONFIG if set, else built-in
// defaults; command-line flags override file values.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqk/hqk.hpp"

namespace {

struct Overrides {
  std::vector<std::pair<std::string, std::string>> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values.emplace_back(key, v); }, help);
  }
};

void emit(const hqk::RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary | std::ios::trunc);
  if (!os) throw hqk::IoError("cannot open output '" + cfg.out + "' for writing");
  os << text;
  os.flush();
  if (!os) throw hqk::IoError("write to '" + cfg.out + "' failed");
}

std::string cmd_sweep(const hqk::RunConfig& cfg) {
  const auto points = hqk::sweep(cfg.params, cfg.sweep.distance_min, cfg.sweep.distance_max,
                                 cfg.sweep.points, cfg.sweep.spacing);
  std::ostringstream os;
  if (cfg.format == hqk::OutputFormat::Csv) {
    hqk::write_rates_csv(os, points);
  } else {
    hqk::write_rates_records(os, points);
  }
  return os.str();
}

std::string cmd_trace(const hqk::RunConfig& cfg, const std::string& fixture, bool random,
                      std::uint64_t random_rounds) {
  std::vector<hqk::RoundInputs> inputs;
  if (random) {
    hqk::Rng rng(hqk::derive_seed(cfg.seed, 0x7472616365ULL));
    for (std::uint64_t i = 0; i < random_rounds; ++i) inputs.push_back(hqk::random_inputs(rng));
  } else if (!fixture.empty()) {
    std::ifstream in(fixture);
    if (!in) throw hqk::IoError("cannot open fixture '" + fixture + "'");
    try {
      inputs = hqk::parse_fixture(in);
    } catch (const hqk::ParseError& e) {
      throw hqk::Error(hqk::ErrorKind::Parse, "fixture '" + fixture + "', " + e.what());
    }
  } else {
    inputs = hqk::parse_fixture(std::string(hqk::kReferenceFixture));
  }
  const auto rounds = hqk::replay(cfg.protocol, inputs, cfg.seed);
  return hqk::render_trace(rounds);
}

std::string cmd_simulate(const hqk::RunConfig& cfg) {
  // Session construction validates the protocol/mode pairing up front.
  hqk::SessionConfig sc = hqk::session_config(cfg);
  const hqk::Session session(sc);
  const hqk::SessionStats stats = cfg.mode == hqk::TimingModeKind::Gated
                                      ? session.run_gated(cfg.rounds, cfg.seed)
                                      : session.run_buffered(cfg.duration, cfg.seed);
  const hqk::SimulationReport report = hqk::make_report(stats, cfg.params);
  std::ostringstream os;
  if (cfg.format == hqk::OutputFormat::Csv) {
    hqk::write_report_csv(os, report);
  } else {
    os << hqk::to_json(report).dump() << '\n';
  }
  return os.str();
}

std::string cmd_crossover(const hqk::RunConfig& cfg) {
  const hqk::Bracket bracket{cfg.bracket_lo, cfg.bracket_hi};
  double d = 0.0;
  try {
    d = hqk::short_haul_supremacy_bound(cfg.params, cfg.factor, bracket);
  } catch (const hqk::SolverError& e) {
    throw hqk::SolverError(std::string(e.what()) + " for factor " +
                           hqk::detail::format_double(cfg.factor) +
                           "; widen --bracket or lower --factor");
  }
  const hqk::RatePoint p = hqk::throughputs(cfg.params, d);
  nlohmann::ordered_json j;
  j["factor"] = cfg.factor;
  j["bracket_lo_km"] = cfg.bracket_lo;
  j["bracket_hi_km"] = cfg.bracket_hi;
  j["distance_km"] = d;
  j["t_p23_bps"] = p.t_p23;
  j["t_bb84_bps"] = p.t_bb84;
  j["ratio"] = p.t_p23 / p.t_bb84;
  std::ostringstream os;
  if (cfg.format == hqk::OutputFormat::Csv) {
    os << "key,value\n";
    for (const auto& [k, v] : j.items()) os << k << ',' << hqk::csv_number(v.get<double>()) << '\n';
  } else {
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid QKD-KLJN key distribution simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dump_path;
  app.add_option("--config", config_path, "Configuration file (INI sections)");
  app.add_option("--dump-config", dump_path,
                 "Write the effective configuration to this path ('-' for stdout)");

  Overrides ov;
  auto common = [&](CLI::App* sub) {
    ov.add(sub, "--seed", "run.seed", "Random seed");
    ov.add(sub, "--out", "run.out", "Output file (default stdout)");
    ov.add(sub, "--format", "run.format", "csv | records");
    ov.add(sub, "--protocol", "session.protocol", "bb84 | I | II | III");
  };

  auto* sweep = app.add_subcommand("sweep", "Rates and throughputs versus distance");
  common(sweep);
  ov.add(sweep, "--distance-min", "sweep.distance_min", "Smallest distance, km");
  ov.add(sweep, "--distance-max", "sweep.distance_max", "Largest distance, km");
  ov.add(sweep, "--points", "sweep.points", "Number of distances");
  ov.add(sweep, "--spacing", "sweep.spacing", "linear | log");

  auto* trace = app.add_subcommand("trace", "Round-by-round protocol trace");
  common(trace);
  std::string fixture;
  bool random = false;
  std::uint64_t random_rounds = 14;
  trace->add_option("--fixture", fixture, "Fixture file; defaults to the bundled 14-round example");
  trace->add_flag("--random", random, "Draw random inputs from --seed instead of a fixture");
  trace->add_option("--rounds", random_rounds, "Rounds for --random")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo session");
  common(simulate);
  ov.add(simulate, "--mode", "session.mode", "gated | buffered");
  ov.add(simulate, "--rounds", "session.rounds", "Optical pulses (gated)");
  ov.add(simulate, "--distance", "session.distance", "Link length, km");
  ov.add(simulate, "--duration", "session.duration", "Simulated seconds (buffered)");
  ov.add(simulate, "--burst-block", "session.burst_block", "Bits per burst (buffered)");
  ov.add(simulate, "--buffer-capacity", "session.buffer_capacity", "Buffer size, bits");
  ov.add(simulate, "--classification", "session.classification", "ideal | sampled");

  auto* crossover = app.add_subcommand("crossover", "Hybrid vs BB84 throughput crossover");
  common(crossover);
  std::vector<double> bracket;
  crossover->add_option("--bracket", bracket, "Search bracket LO HI in km")->expected(2);
  ov.add(crossover, "--factor", "crossover.factor",
         "Largest distance with T_II,III >= factor * T_BB84 (1 = crossover)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hqk: error: " << e.what() << "\n(run with --help for usage)\n";
    return static_cast<int>(hqk::ErrorKind::Usage);
  }

  try {
    hqk::RunConfig cfg;
    if (config_path.empty()) {
      if (const char* env = std::getenv("HQK_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) cfg = hqk::load_config(config_path);
    for (const auto& [key, value] : ov.values) hqk::set_config_value(cfg, key, value);
    if (bracket.size() == 2) {
      cfg.bracket_lo = bracket[0];
      cfg.bracket_hi = bracket[1];
    }
    hqk::validate(cfg.params);

    if (!dump_path.empty()) {
      const std::string text = hqk::dump_config(cfg);
      if (dump_path == "-") {
        std::cout << text;
      } else {
        std::ofstream os(dump_path, std::ios::binary | std::ios::trunc);
        if (!os || !(os << text)) throw hqk::IoError("cannot write config to '" + dump_path + "'");
      }
    }

    std::string text;
    if (*sweep) text = cmd_sweep(cfg);
    else if (*trace) text = cmd_trace(cfg, fixture, random, random_rounds);
    else if (*simulate) text = cmd_simulate(cfg);
    else if (*crossover) text = cmd_crossover(cfg);
    emit(cfg, text);
  } catch (const hqk::Error& e) {
    std::cerr << "hqk: error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "hqk: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
