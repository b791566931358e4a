#pragma once

// Monte Carlo sessions in the two timing modes.
//
// Gated: one KLJN decision per optical pulse, so pulses run at
// f_sys = min(f_QKD, R_KLJN) (BB84 runs unthrottled at f_QKD).
//
// Buffered (Protocols I and II only): the KLJN line runs continuously at
// R_KLJN and fills a basis buffer. Once burst_block bits are buffered the
// optical link fires burst_block pulses at f_QKD, each consuming one
// buffered bit. Protocol II credits its basis-derived key bit when the
// buffered bit is consumed.
//
// The post-processing penalty gamma is applied as an expectation: each QKD
// bit counts for (1 - gamma) secure bits, each KLJN bit for one.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hqk/error.hpp"
#include "hqk/physics.hpp"
#include "hqk/protocol.hpp"
#include "hqk/rates.hpp"

namespace hqk {

enum class TimingModeKind : std::uint8_t { Gated, Buffered };

struct TimingMode {
  TimingModeKind kind = TimingModeKind::Gated;
  std::uint64_t buffer_capacity = 100'000;  // bits, Buffered only
  std::uint64_t burst_block = 10'000;       // bits, Buffered only

  static TimingMode gated() { return {}; }
  static TimingMode buffered(std::uint64_t capacity = 100'000, std::uint64_t block = 10'000) {
    return {TimingModeKind::Buffered, capacity, block};
  }
};

struct SessionConfig {
  Protocol protocol = Protocol::II;
  SystemParams params{};
  double distance_km = 1.0;
  TimingMode mode{};
  Classification classification = Classification::Ideal;
  double temperature_scale = 1.0;
  bool record_trace = false;
};

struct BufferSample {
  double time_s;
  double occupancy;
};

struct SessionStats {
  Protocol protocol = Protocol::Bb84;
  TimingModeKind mode = TimingModeKind::Gated;
  double distance_km = 0.0;
  double gamma = 0.0;

  std::uint64_t rounds_executed = 0;  // optical pulses fired
  std::uint64_t qkd_bits = 0;
  std::uint64_t kljn_bits = 0;
  std::uint64_t discarded_rounds = 0;  // rounds contributing no key bit
  std::uint64_t flagged_rounds = 0;

  double wall_time_s = 0.0;
  double secure_bits = 0.0;  // qkd_bits (1 - gamma) + kljn_bits
  double effective_throughput_bps = 0.0;

  // Buffered mode only.
  std::uint64_t cycles = 0;  // completed fill/drain cycles
  double burst_time_s = 0.0;
  double burst_secure_bits = 0.0;
  double burst_pulse_rate_hz = 0.0;
  double burst_throughput_bps = 0.0;
  double kljn_bits_produced = 0.0;
  std::uint64_t kljn_bits_consumed = 0;
  double min_buffer_occupancy = 0.0;
  std::optional<std::vector<BufferSample>> buffer_occupancy_trace;
};

/// Expected secure bits per optical pulse from Monte Carlo counts.
inline double estimate_per_pulse_yield(const SessionStats& stats, std::uint64_t n_rounds) {
  if (n_rounds == 0) throw UsageError("estimate_per_pulse_yield: n_rounds must be > 0");
  return (static_cast<double>(stats.qkd_bits) * (1.0 - stats.gamma) +
          static_cast<double>(stats.kljn_bits)) /
         static_cast<double>(n_rounds);
}

struct YieldMoments {
  double mean;      // secure bits per pulse
  double variance;  // of a single pulse's secure yield
};

/// Moments of one pulse's secure yield under ideal classification, with
/// detection probability Q_mu and uniform independent bases.
inline YieldMoments yield_moments(Protocol protocol, const LinkBudget& b) {
  const double q = b.q_mu;
  const double k = 1.0 - b.gamma;  // value of one QKD bit
  double m1 = 0.0;
  double m2 = 0.0;
  switch (protocol) {
    case Protocol::Bb84:
    case Protocol::I:
      m1 = 0.5 * q * k;
      m2 = 0.5 * q * k * k;
      break;
    case Protocol::II:
      // matched: KLJN bit always, plus a QKD bit if detected
      m1 = 0.5 * ((1.0 - q) * 1.0 + q * (1.0 + k));
      m2 = 0.5 * ((1.0 - q) * 1.0 + q * (1.0 + k) * (1.0 + k));
      break;
    case Protocol::III:
      // mismatched: KLJN bit; matched: QKD bit if detected
      m1 = 0.5 * 1.0 + 0.5 * q * k;
      m2 = 0.5 * 1.0 + 0.5 * q * k * k;
      break;
  }
  return {m1, m2 - m1 * m1};
}

inline double analytic_rate(Protocol protocol, const LinkBudget& b) {
  const auto r = normalized_rates(b);
  return (protocol == Protocol::II || protocol == Protocol::III) ? r.r_p23 : r.r_bb84_p1;
}

/// Pulse rate the protocol runs at in gated mode.
inline double gated_pulse_rate(Protocol protocol, const SystemParams& params,
                               double distance_km) {
  if (protocol == Protocol::Bb84) return params.optical.f_qkd;
  return system_frequency(params, distance_km);
}

class Session {
 public:
  explicit Session(SessionConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_.params);
    if (!(cfg_.distance_km > 0.0) || !std::isfinite(cfg_.distance_km)) {
      throw DomainError("session distance must be > 0 km");
    }
    if (cfg_.mode.kind == TimingModeKind::Buffered) {
      if (cfg_.protocol == Protocol::III) {
        throw ConfigError("Protocol III reveals the common basis and must run in gated mode");
      }
      if (cfg_.protocol == Protocol::Bb84) {
        throw ConfigError("buffered mode applies to KLJN-assisted Protocols I and II");
      }
      if (cfg_.mode.burst_block == 0 || cfg_.mode.burst_block > cfg_.mode.buffer_capacity) {
        throw ConfigError("need 0 < burst_block <= buffer_capacity");
      }
    }
    budget_ = link_budget(cfg_.params.optical, cfg_.distance_km);
    channel_.detection_probability = std::min(1.0, budget_.q_mu);
    channel_.flip_probability = cfg_.params.optical.e_opt;
    channel_.line = cfg_.params.line;
    channel_.temperature_scale = cfg_.temperature_scale;
    channel_.classification = cfg_.classification;
  }

  const SessionConfig& config() const noexcept { return cfg_; }
  const LinkBudget& budget() const noexcept { return budget_; }

  SessionStats run_gated(std::uint64_t n_rounds, Seed seed) const {
    if (n_rounds == 0) throw UsageError("n_rounds must be >= 1");
    if (cfg_.mode.kind != TimingModeKind::Gated) {
      throw ConfigError("session is configured for buffered mode");
    }
    SessionStats s = blank(TimingModeKind::Gated);
    for (std::uint64_t i = 0; i < n_rounds; ++i) pulse(s, seed, i);
    s.wall_time_s =
        static_cast<double>(n_rounds) / gated_pulse_rate(cfg_.protocol, cfg_.params, cfg_.distance_km);
    finish(s);
    return s;
  }

  SessionStats run_buffered(double duration_s, Seed seed) const {
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
      throw UsageError("duration must be > 0 s");
    }
    if (cfg_.mode.kind != TimingModeKind::Buffered) {
      throw ConfigError("session is configured for gated mode");
    }
    SessionStats s = blank(TimingModeKind::Buffered);
    const double fill_rate = kljn_bit_rate(cfg_.params.line, cfg_.distance_km);
    const double fire_rate = cfg_.params.optical.f_qkd;
    const double block = static_cast<double>(cfg_.mode.burst_block);
    const double capacity = static_cast<double>(cfg_.mode.buffer_capacity);

    std::vector<BufferSample> trace;
    auto mark = [&](double t, double b) {
      if (cfg_.record_trace) trace.push_back({t, b});
    };

    double t = 0.0;
    double buffer = 0.0;
    std::uint64_t index = 0;
    mark(t, buffer);
    while (t < duration_s) {
      // Accumulate until a full block is buffered.
      const double t_fill = std::max(0.0, (block - buffer) / fill_rate);
      if (t + t_fill >= duration_s) {
        const double dt = duration_s - t;
        s.kljn_bits_produced += fill_rate * dt;
        buffer = std::min(capacity, buffer + fill_rate * dt);
        t = duration_s;
        mark(t, buffer);
        break;
      }
      t += t_fill;
      s.kljn_bits_produced += fill_rate * t_fill;
      buffer = std::max(buffer, block);
      mark(t, buffer);

      // Burst at the native laser rate; the line keeps refilling.
      const double t_burst_full = block / fire_rate;
      std::uint64_t pulses = cfg_.mode.burst_block;
      double t_burst = t_burst_full;
      if (t + t_burst_full > duration_s) {
        pulses = static_cast<std::uint64_t>(std::floor((duration_s - t) * fire_rate));
        t_burst = static_cast<double>(pulses) / fire_rate;
      }
      const double secure_before = secure(s);
      for (std::uint64_t p = 0; p < pulses; ++p) pulse(s, seed, index++);
      s.kljn_bits_consumed += pulses;
      s.min_buffer_occupancy =
          std::min(s.min_buffer_occupancy, buffer - static_cast<double>(pulses));
      s.burst_secure_bits += secure(s) - secure_before;
      s.kljn_bits_produced += fill_rate * t_burst;
      buffer = std::min(capacity, buffer - static_cast<double>(pulses) + fill_rate * t_burst);
      t += t_burst;
      mark(t, buffer);
      if (pulses == cfg_.mode.burst_block) ++s.cycles;
      if (pulses < cfg_.mode.burst_block) {
        // Truncated final burst; idle until the end of the window.
        const double dt = duration_s - t;
        s.kljn_bits_produced += fill_rate * dt;
        buffer = std::min(capacity, buffer + fill_rate * dt);
        t = duration_s;
        mark(t, buffer);
      }
    }

    s.wall_time_s = duration_s;
    s.burst_time_s = static_cast<double>(s.rounds_executed) / fire_rate;
    if (s.burst_time_s > 0.0) {
      s.burst_pulse_rate_hz = static_cast<double>(s.rounds_executed) / s.burst_time_s;
      s.burst_throughput_bps = s.burst_secure_bits / s.burst_time_s;
    }
    if (cfg_.record_trace) s.buffer_occupancy_trace = std::move(trace);
    finish(s);
    return s;
  }

 private:
  SessionStats blank(TimingModeKind mode) const {
    SessionStats s;
    s.protocol = cfg_.protocol;
    s.mode = mode;
    s.distance_km = cfg_.distance_km;
    s.gamma = budget_.gamma;
    return s;
  }

  double secure(const SessionStats& s) const {
    return static_cast<double>(s.qkd_bits) * (1.0 - s.gamma) + static_cast<double>(s.kljn_bits);
  }

  // Pulse `index` of the session; its inputs and randomness depend only on
  // (seed, index).
  void pulse(SessionStats& s, Seed seed, std::uint64_t index) const {
    const Seed round_seed = derive_seed(seed, index);
    Rng input_rng(derive_seed(round_seed, 3));
    const RoundInputs in = random_inputs(input_rng);
    const ProtocolRound r = run_round(cfg_.protocol, in, channel_, round_seed);
    ++s.rounds_executed;
    if (r.flagged) ++s.flagged_rounds;
    if (r.qkd_key_bit) ++s.qkd_bits;
    if (r.kljn_key_bit) ++s.kljn_bits;
    if (!r.qkd_key_bit && !r.kljn_key_bit) ++s.discarded_rounds;
  }

  void finish(SessionStats& s) const {
    s.secure_bits = secure(s);
    s.effective_throughput_bps = s.secure_bits / s.wall_time_s;
  }

  SessionConfig cfg_;
  LinkBudget budget_{};
  RoundChannel channel_{};
};

inline SessionStats run_gated_session(Protocol protocol, const SystemParams& params,
                                      double distance_km, std::uint64_t n_rounds, Seed seed,
                                      Classification classification = Classification::Ideal) {
  SessionConfig cfg;
  cfg.protocol = protocol;
  cfg.params = params;
  cfg.distance_km = distance_km;
  cfg.classification = classification;
  return Session(cfg).run_gated(n_rounds, seed);
}

inline SessionStats run_buffered_session(Protocol protocol, const SystemParams& params,
                                         double distance_km, double duration_s, Seed seed,
                                         TimingMode mode = TimingMode::buffered(),
                                         bool record_trace = false) {
  SessionConfig cfg;
  cfg.protocol = protocol;
  cfg.params = params;
  cfg.distance_km = distance_km;
  cfg.mode = mode;
  cfg.record_trace = record_trace;
  return Session(cfg).run_buffered(duration_s, seed);
}

}  // namespace hqk
