#pragma once

// Run configuration: an INI-style file with [optical], [kljn], [sweep],
// [session], [crossover] and [run] sections. Missing keys keep their
// defaults (the reference parameter set); unknown sections or keys are
// rejected. dump_config() writes every effective value with round-trip
// precision, so a dumped file re-ingests to the identical configuration.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hqk/error.hpp"
#include "hqk/physics.hpp"
#include "hqk/protocol.hpp"
#include "hqk/rates.hpp"
#include "hqk/session.hpp"

namespace hqk {

enum class OutputFormat : std::uint8_t { Csv, Records };

struct SweepSpec {
  double distance_min = 0.1;
  double distance_max = 10.0;
  int points = 200;
  Spacing spacing = Spacing::Log;

  bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
  SystemParams params{};
  double temperature_scale = 1.0;
  SweepSpec sweep{};

  Protocol protocol = Protocol::II;
  TimingModeKind mode = TimingModeKind::Gated;
  std::uint64_t buffer_capacity = 100'000;
  std::uint64_t burst_block = 10'000;
  std::uint64_t rounds = 100'000;
  double distance = 2.0;      // km, simulate
  double duration = 10.0;     // s, buffered simulate
  Classification classification = Classification::Ideal;

  double bracket_lo = 0.1;
  double bracket_hi = 10.0;
  double factor = 1.0;

  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty: stdout

  bool operator==(const RunConfig&) const = default;
};

// ---- enum <-> text ---------------------------------------------------------

inline Protocol parse_protocol(const std::string& s) {
  if (s == "bb84" || s == "BB84") return Protocol::Bb84;
  if (s == "I" || s == "1" || s == "p1") return Protocol::I;
  if (s == "II" || s == "2" || s == "p2") return Protocol::II;
  if (s == "III" || s == "3" || s == "p3") return Protocol::III;
  throw ConfigError("unknown protocol '" + s + "' (bb84, I, II, III)");
}

inline TimingModeKind parse_mode(const std::string& s) {
  if (s == "gated") return TimingModeKind::Gated;
  if (s == "buffered") return TimingModeKind::Buffered;
  throw ConfigError("unknown mode '" + s + "' (gated, buffered)");
}

inline std::string to_string(TimingModeKind m) {
  return m == TimingModeKind::Gated ? "gated" : "buffered";
}

inline Spacing parse_spacing(const std::string& s) {
  if (s == "linear") return Spacing::Linear;
  if (s == "log") return Spacing::Log;
  throw ConfigError("unknown spacing '" + s + "' (linear, log)");
}

inline std::string to_string(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "records" || s == "jsonl" || s == "json") return OutputFormat::Records;
  throw ConfigError("unknown format '" + s + "' (csv, records)");
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "records"; }

inline Classification parse_classification(const std::string& s) {
  if (s == "ideal") return Classification::Ideal;
  if (s == "sampled") return Classification::Sampled;
  throw ConfigError("unknown classification '" + s + "' (ideal, sampled)");
}

inline std::string to_string(Classification c) {
  return c == Classification::Ideal ? "ideal" : "sampled";
}

// ---- load / dump -----------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  is >> v;
  if (!is || !(is >> std::ws).eof()) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

inline std::uint64_t to_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": not a non-negative integer: '" + text + "'");
  }
  return v;
}

inline int to_int(const std::string& key, const std::string& text) {
  const std::uint64_t v = to_u64(key, text);
  if (v > 1'000'000'000ULL) throw ConfigError(key + ": value too large");
  return static_cast<int>(v);
}

}  // namespace detail

/// Applies "section.key" = value. Shared by the file loader and CLI flags.
inline void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  using detail::to_double;
  using detail::to_int;
  using detail::to_u64;
  auto& o = c.params.optical;
  auto& l = c.params.line;

  if (key == "optical.alpha") o.alpha = to_double(key, value);
  else if (key == "optical.mu") o.mu = to_double(key, value);
  else if (key == "optical.eta_d") o.eta_d = to_double(key, value);
  else if (key == "optical.p_d") o.p_d = to_double(key, value);
  else if (key == "optical.e_opt") o.e_opt = to_double(key, value);
  else if (key == "optical.f_ec") o.f_ec = to_double(key, value);
  else if (key == "optical.f_qkd") o.f_qkd = to_double(key, value);
  else if (key == "kljn.v") l.v = to_double(key, value);
  else if (key == "kljn.n_pairs") l.n_pairs = to_int(key, value);
  else if (key == "kljn.n_samples") l.n_samples = to_int(key, value);
  else if (key == "kljn.r_low") l.r_low = to_double(key, value);
  else if (key == "kljn.r_high") l.r_high = to_double(key, value);
  else if (key == "kljn.temperature_scale") c.temperature_scale = to_double(key, value);
  else if (key == "sweep.distance_min") c.sweep.distance_min = to_double(key, value);
  else if (key == "sweep.distance_max") c.sweep.distance_max = to_double(key, value);
  else if (key == "sweep.points") c.sweep.points = to_int(key, value);
  else if (key == "sweep.spacing") c.sweep.spacing = parse_spacing(value);
  else if (key == "session.protocol") c.protocol = parse_protocol(value);
  else if (key == "session.mode") c.mode = parse_mode(value);
  else if (key == "session.buffer_capacity") c.buffer_capacity = to_u64(key, value);
  else if (key == "session.burst_block") c.burst_block = to_u64(key, value);
  else if (key == "session.rounds") c.rounds = to_u64(key, value);
  else if (key == "session.distance") c.distance = to_double(key, value);
  else if (key == "session.duration") c.duration = to_double(key, value);
  else if (key == "session.classification") c.classification = parse_classification(value);
  else if (key == "crossover.bracket_lo") c.bracket_lo = to_double(key, value);
  else if (key == "crossover.bracket_hi") c.bracket_hi = to_double(key, value);
  else if (key == "crossover.factor") c.factor = to_double(key, value);
  else if (key == "run.seed") c.seed = to_u64(key, value);
  else if (key == "run.format") c.format = parse_format(value);
  else if (key == "run.out") c.out = value;
  else throw ConfigError("unknown configuration key '" + key + "'");
}

inline RunConfig parse_config(std::istream& in, RunConfig base = {}) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("key '" + section + "' must live inside a [section]");
    }
    for (const auto& [key, value] : body) {
      set_config_value(base, section + "." + key, value.get_value<std::string>());
    }
  }
  return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

inline std::string dump_config(const RunConfig& c) {
  using detail::format_double;
  const auto& o = c.params.optical;
  const auto& l = c.params.line;
  std::ostringstream os;
  os << "[optical]\n"
     << "alpha = " << format_double(o.alpha) << '\n'
     << "mu = " << format_double(o.mu) << '\n'
     << "eta_d = " << format_double(o.eta_d) << '\n'
     << "p_d = " << format_double(o.p_d) << '\n'
     << "e_opt = " << format_double(o.e_opt) << '\n'
     << "f_ec = " << format_double(o.f_ec) << '\n'
     << "f_qkd = " << format_double(o.f_qkd) << '\n'
     << "\n[kljn]\n"
     << "v = " << format_double(l.v) << '\n'
     << "n_pairs = " << l.n_pairs << '\n'
     << "n_samples = " << l.n_samples << '\n'
     << "r_low = " << format_double(l.r_low) << '\n'
     << "r_high = " << format_double(l.r_high) << '\n'
     << "temperature_scale = " << format_double(c.temperature_scale) << '\n'
     << "\n[sweep]\n"
     << "distance_min = " << format_double(c.sweep.distance_min) << '\n'
     << "distance_max = " << format_double(c.sweep.distance_max) << '\n'
     << "points = " << c.sweep.points << '\n'
     << "spacing = " << to_string(c.sweep.spacing) << '\n'
     << "\n[session]\n"
     << "protocol = " << to_string(c.protocol) << '\n'
     << "mode = " << to_string(c.mode) << '\n'
     << "buffer_capacity = " << c.buffer_capacity << '\n'
     << "burst_block = " << c.burst_block << '\n'
     << "rounds = " << c.rounds << '\n'
     << "distance = " << format_double(c.distance) << '\n'
     << "duration = " << format_double(c.duration) << '\n'
     << "classification = " << to_string(c.classification) << '\n'
     << "\n[crossover]\n"
     << "bracket_lo = " << format_double(c.bracket_lo) << '\n'
     << "bracket_hi = " << format_double(c.bracket_hi) << '\n'
     << "factor = " << format_double(c.factor) << '\n'
     << "\n[run]\n"
     << "seed = " << c.seed << '\n'
     << "format = " << to_string(c.format) << '\n';
  if (!c.out.empty()) os << "out = " << c.out << '\n';
  return os.str();
}

inline SessionConfig session_config(const RunConfig& c) {
  SessionConfig s;
  s.protocol = c.protocol;
  s.params = c.params;
  s.distance_km = c.distance;
  s.mode = c.mode == TimingModeKind::Gated
               ? TimingMode::gated()
               : TimingMode::buffered(c.buffer_capacity, c.burst_block);
  s.classification = c.classification;
  s.temperature_scale = c.temperature_scale;
  return s;
}

}  // namespace hqk
