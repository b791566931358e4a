#pragma once

// Serialization of sweep results and session reports.
//
// CSV: comma separated, '.' decimal point, every value in %.16e (17
// significant digits, round-trip exact), header row first.
// Records: one JSON object per line.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqk/rates.hpp"
#include "hqk/session.hpp"

namespace hqk {

inline constexpr const char* kRateColumns[] = {
    "distance_km", "q_mu",  "e_mu",  "gamma", "r_bb84", "r_p1",       "r_p23",
    "r_kljn",      "f_sys", "t_bb84", "t_p1", "t_p23",  "t_burst_p1", "t_burst_p2"};

inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

inline std::vector<double> rate_values(const RatePoint& p) {
  return {p.distance_km, p.q_mu, p.e_mu,  p.gamma, p.r_bb84, p.r_p1,       p.r_p23,
          p.r_kljn,      p.f_sys, p.t_bb84, p.t_p1, p.t_p23,  p.t_burst_p1, p.t_burst_p2};
}

inline void write_rates_csv(std::ostream& os, const std::vector<RatePoint>& points) {
  bool first = true;
  for (const char* c : kRateColumns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  for (const auto& p : points) {
    first = true;
    for (double v : rate_values(p)) {
      os << (first ? "" : ",") << csv_number(v);
      first = false;
    }
    os << '\n';
  }
}

inline nlohmann::ordered_json to_json(const RatePoint& p) {
  nlohmann::ordered_json j;
  const auto values = rate_values(p);
  for (std::size_t i = 0; i < values.size(); ++i) j[kRateColumns[i]] = values[i];
  return j;
}

inline void write_rates_records(std::ostream& os, const std::vector<RatePoint>& points) {
  for (const auto& p : points) os << to_json(p).dump() << '\n';
}

struct SimulationReport {
  SessionStats stats;
  double per_pulse_yield = 0.0;
  double analytic_yield = 0.0;  // normalized rate of the protocol
  double yield_sigma = 0.0;     // standard error of per_pulse_yield
  double deviation_sigma = 0.0;
  double analytic_throughput_bps = 0.0;  // closed-form gated value
  double throughput_relative_error = 0.0;
  double analytic_burst_throughput_bps = 0.0;  // buffered only
};

inline SimulationReport make_report(const SessionStats& stats, const SystemParams& params) {
  SimulationReport r;
  r.stats = stats;
  const LinkBudget b = link_budget(params.optical, stats.distance_km);
  const YieldMoments m = yield_moments(stats.protocol, b);
  const double n = static_cast<double>(stats.rounds_executed);
  r.per_pulse_yield = stats.rounds_executed ? estimate_per_pulse_yield(stats, stats.rounds_executed) : 0.0;
  r.analytic_yield = analytic_rate(stats.protocol, b);
  r.yield_sigma = n > 0 ? std::sqrt(m.variance / n) : 0.0;
  r.deviation_sigma =
      r.yield_sigma > 0 ? (r.per_pulse_yield - r.analytic_yield) / r.yield_sigma : 0.0;
  r.analytic_throughput_bps =
      r.analytic_yield * gated_pulse_rate(stats.protocol, params, stats.distance_km);
  r.throughput_relative_error =
      (stats.effective_throughput_bps - r.analytic_throughput_bps) / r.analytic_throughput_bps;
  if (stats.mode == TimingModeKind::Buffered) {
    r.analytic_burst_throughput_bps = r.analytic_yield * params.optical.f_qkd;
  }
  return r;
}

inline nlohmann::ordered_json to_json(const SimulationReport& r) {
  const SessionStats& s = r.stats;
  nlohmann::ordered_json j;
  j["protocol"] = std::string(to_string(s.protocol));
  j["mode"] = s.mode == TimingModeKind::Gated ? "gated" : "buffered";
  j["distance_km"] = s.distance_km;
  j["gamma"] = s.gamma;
  j["rounds_executed"] = s.rounds_executed;
  j["qkd_bits"] = s.qkd_bits;
  j["kljn_bits"] = s.kljn_bits;
  j["discarded_rounds"] = s.discarded_rounds;
  j["flagged_rounds"] = s.flagged_rounds;
  j["wall_time_s"] = s.wall_time_s;
  j["secure_bits"] = s.secure_bits;
  j["effective_throughput_bps"] = s.effective_throughput_bps;
  j["per_pulse_yield"] = r.per_pulse_yield;
  j["analytic_yield"] = r.analytic_yield;
  j["yield_sigma"] = r.yield_sigma;
  j["deviation_sigma"] = r.deviation_sigma;
  j["analytic_throughput_bps"] = r.analytic_throughput_bps;
  j["throughput_relative_error"] = r.throughput_relative_error;
  if (s.mode == TimingModeKind::Buffered) {
    j["cycles"] = s.cycles;
    j["burst_time_s"] = s.burst_time_s;
    j["burst_pulse_rate_hz"] = s.burst_pulse_rate_hz;
    j["burst_throughput_bps"] = s.burst_throughput_bps;
    j["analytic_burst_throughput_bps"] = r.analytic_burst_throughput_bps;
    j["kljn_bits_produced"] = s.kljn_bits_produced;
    j["kljn_bits_consumed"] = s.kljn_bits_consumed;
    j["min_buffer_occupancy"] = s.min_buffer_occupancy;
    if (s.buffer_occupancy_trace) {
      auto& t = j["buffer_occupancy_trace"] = nlohmann::ordered_json::array();
      for (const auto& p : *s.buffer_occupancy_trace) t.push_back({p.time_s, p.occupancy});
    }
  }
  return j;
}

inline void write_report_csv(std::ostream& os, const SimulationReport& r) {
  os << "key,value\n";
  const auto j = to_json(r);
  for (const auto& [k, v] : j.items()) {
    if (v.is_array()) continue;
    os << k << ',';
    if (v.is_number_float()) {
      os << csv_number(v.get<double>());
    } else if (v.is_string()) {
      os << v.get<std::string>();
    } else {
      os << v.dump();
    }
    os << '\n';
  }
}

}  // namespace hqk
