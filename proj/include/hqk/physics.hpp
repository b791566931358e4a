#pragma once

// Closed-form models of the weak-coherent-pulse optical link and the KLJN
// copper line. Units: distances in km, velocity in km/s, frequencies and
// rates in Hz / bps.

#include <algorithm>
#include <cmath>
#include <string>

#include "hqk/error.hpp"

namespace hqk {

struct OpticalParams {
  double alpha = 0.2;     // fiber attenuation, dB/km
  double mu = 0.1;        // mean photon number per pulse
  double eta_d = 0.1;     // detector efficiency
  double p_d = 1e-5;      // dark count probability per pulse
  double e_opt = 0.015;   // optical misalignment error
  double f_ec = 1.15;     // error-correction inefficiency
  double f_qkd = 10e6;    // laser repetition rate, Hz

  bool operator==(const OpticalParams&) const = default;
};

struct KljnLineParams {
  double v = 2e5;         // signal velocity in copper, km/s
  int n_pairs = 1000;     // parallel wire pairs
  int n_samples = 50;     // noise samples per decision bit
  double r_low = 10e3;    // ohm
  double r_high = 100e3;  // ohm

  bool operator==(const KljnLineParams&) const = default;
};

struct SystemParams {
  OpticalParams optical;
  KljnLineParams line;

  bool operator==(const SystemParams&) const = default;
};

struct LinkBudget {
  double distance_km = 0.0;
  double eta_sys = 0.0;
  double q_mu = 0.0;
  double e_mu = 0.0;
  double gamma = 0.0;
};

inline void validate(const OpticalParams& p) {
  auto fail = [](const std::string& what) {
    throw DomainError("optical parameters: " + what);
  };
  if (!(p.alpha >= 0.0)) fail("alpha must be >= 0");
  if (!(p.mu > 0.0)) fail("mu must be > 0");
  if (!(p.eta_d > 0.0 && p.eta_d <= 1.0)) fail("eta_d must be in (0, 1]");
  if (!(p.p_d >= 0.0 && p.p_d < 1.0)) fail("p_d must be in [0, 1)");
  if (!(p.e_opt >= 0.0 && p.e_opt < 0.5)) fail("e_opt must be in [0, 0.5)");
  if (!(p.f_ec >= 1.0)) fail("f_ec must be >= 1");
  if (!(p.f_qkd > 0.0)) fail("f_qkd must be > 0");
}

inline void validate(const KljnLineParams& l) {
  auto fail = [](const std::string& what) {
    throw DomainError("KLJN line parameters: " + what);
  };
  if (!(l.v > 0.0)) fail("v must be > 0");
  if (l.n_pairs < 1) fail("n_pairs must be >= 1");
  if (l.n_samples < 1) fail("n_samples must be >= 1");
  if (!(l.r_low > 0.0 && l.r_low < l.r_high)) fail("need 0 < r_low < r_high");
}

inline void validate(const SystemParams& s) {
  validate(s.optical);
  validate(s.line);
}

namespace detail {

inline void require_distance(double distance_km, bool allow_zero) {
  if (!std::isfinite(distance_km) || distance_km < 0.0 ||
      (!allow_zero && distance_km == 0.0)) {
    throw DomainError("distance must be " +
                      std::string(allow_zero ? ">= 0" : "> 0") + " km, got " +
                      std::to_string(distance_km));
  }
}

}  // namespace detail

/// eta_D * 10^(-alpha L / 10).
inline double system_transmittance(const OpticalParams& p, double distance_km) {
  detail::require_distance(distance_km, true);
  return p.eta_d * std::pow(10.0, -p.alpha * distance_km / 10.0);
}

struct GainQber {
  double q_mu;
  double e_mu;
};

/// Overall gain Q_mu and QBER E_mu of a WCP link without decoy states.
inline GainQber gain_and_qber(const OpticalParams& p, double distance_km) {
  const double eta = system_transmittance(p, distance_km);
  // expm1 keeps 1 - e^{-x} accurate for tiny mu * eta.
  const double signal = -std::expm1(-p.mu * eta);
  const double q = signal + p.p_d;
  if (!(q > 0.0)) {
    throw DomainError("gain is zero (no signal and no dark counts); QBER undefined");
  }
  const double e = (p.e_opt * signal + 0.5 * p.p_d) / q;
  return {q, e};
}

/// Binary entropy in bits; h(0) = h(1) = 0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("binary entropy argument outside [0, 1]: " + std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// min(1, (f + 1) h(E_mu)): fraction of raw optical key lost to
/// error correction plus privacy amplification.
inline double post_processing_penalty(const OpticalParams& p, double e_mu) {
  return std::min(1.0, (p.f_ec + 1.0) * binary_entropy(e_mu));
}

inline LinkBudget link_budget(const OpticalParams& p, double distance_km) {
  LinkBudget b;
  b.distance_km = distance_km;
  b.eta_sys = system_transmittance(p, distance_km);
  const auto [q, e] = gain_and_qber(p, distance_km);
  b.q_mu = q;
  b.e_mu = e;
  b.gamma = post_processing_penalty(p, e);
  return b;
}

/// Lowest standing-wave frequency of the line, v / (2L).
inline double first_standing_wave(const KljnLineParams& line, double distance_km) {
  detail::require_distance(distance_km, false);
  return line.v / (2.0 * distance_km);
}

/// Quasi-static noise bandwidth bound: one tenth of the first standing-wave
/// frequency, v / (20L).
inline double wave_limit_bandwidth(const KljnLineParams& line, double distance_km) {
  detail::require_distance(distance_km, false);
  return line.v / (20.0 * distance_km);
}

/// Nyquist sampling rate at the wave limit.
inline double sampling_frequency(const KljnLineParams& line, double distance_km) {
  return 2.0 * wave_limit_bandwidth(line, distance_km);
}

/// Aggregate KLJN decision-bit rate over all wire pairs, N_pairs f_s / N.
inline double kljn_bit_rate(const KljnLineParams& line, double distance_km) {
  return static_cast<double>(line.n_pairs) * sampling_frequency(line, distance_km) /
         static_cast<double>(line.n_samples);
}

/// Gated trigger frequency min(f_QKD, R_KLJN).
inline double system_frequency(const SystemParams& s, double distance_km) {
  return std::min(s.optical.f_qkd, kljn_bit_rate(s.line, distance_km));
}

}  // namespace hqk
