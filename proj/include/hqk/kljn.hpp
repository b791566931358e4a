#pragma once

// Sample-level model of the KLJN wire. Each party connects a low or high
// resistor; the line carries zero-mean Gaussian noise whose variance is
// proportional to the parallel resistance of the two choices. Boltzmann's
// constant, absolute temperature and the noise bandwidth are folded into a
// single `temperature_scale`.

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "hqk/physics.hpp"
#include "hqk/rng.hpp"

namespace hqk {

enum class ResistorChoice : std::uint8_t { Low, High };

enum class NoiseLevel : std::uint8_t { Low, Intermediate, High };

constexpr std::string_view to_string(ResistorChoice r) noexcept {
  return r == ResistorChoice::Low ? "L" : "H";
}

constexpr std::string_view to_string(NoiseLevel n) noexcept {
  switch (n) {
    case NoiseLevel::Low: return "Low";
    case NoiseLevel::Intermediate: return "Intermediate";
    case NoiseLevel::High: return "High";
  }
  return "?";
}

constexpr NoiseLevel ground_truth_level(ResistorChoice a, ResistorChoice b) noexcept {
  if (a != b) return NoiseLevel::Intermediate;
  return a == ResistorChoice::Low ? NoiseLevel::Low : NoiseLevel::High;
}

struct LineObservation {
  std::vector<double> samples;
  double estimated_variance = 0.0;
  NoiseLevel classified_level = NoiseLevel::Low;
  NoiseLevel ground_truth_level = NoiseLevel::Low;
};

inline double resistance(const KljnLineParams& line, ResistorChoice r) noexcept {
  return r == ResistorChoice::Low ? line.r_low : line.r_high;
}

/// Mean-square line voltage in normalized units: scale * Ra Rb / (Ra + Rb).
inline double line_variance(const KljnLineParams& line, ResistorChoice a,
                            ResistorChoice b, double temperature_scale = 1.0) {
  if (!(temperature_scale > 0.0)) {
    throw DomainError("temperature_scale must be > 0");
  }
  const double ra = resistance(line, a);
  const double rb = resistance(line, b);
  return temperature_scale * ra * rb / (ra + rb);
}

struct LevelThresholds {
  double low_intermediate;
  double intermediate_high;
};

// Geometric means of adjacent analytic variances.
inline LevelThresholds level_thresholds(const KljnLineParams& line,
                                        double temperature_scale = 1.0) {
  using R = ResistorChoice;
  const double ll = line_variance(line, R::Low, R::Low, temperature_scale);
  const double lh = line_variance(line, R::Low, R::High, temperature_scale);
  const double hh = line_variance(line, R::High, R::High, temperature_scale);
  return {std::sqrt(ll * lh), std::sqrt(lh * hh)};
}

inline NoiseLevel classify_level(double estimated_variance, const KljnLineParams& line,
                                 double temperature_scale = 1.0) {
  const auto t = level_thresholds(line, temperature_scale);
  if (estimated_variance < t.low_intermediate) return NoiseLevel::Low;
  if (estimated_variance < t.intermediate_high) return NoiseLevel::Intermediate;
  return NoiseLevel::High;
}

/// Draws n_samples voltages for the (a, b) connection and classifies them.
/// The variance estimate is the mean of squares (the mean is known to be 0).
inline LineObservation sample_line(const KljnLineParams& line, ResistorChoice a,
                                   ResistorChoice b, Seed seed,
                                   double temperature_scale = 1.0) {
  const double sigma = std::sqrt(line_variance(line, a, b, temperature_scale));
  Rng rng(seed);
  LineObservation obs;
  obs.samples.resize(static_cast<std::size_t>(line.n_samples));
  double sum_sq = 0.0;
  for (auto& s : obs.samples) {
    s = rng.gaussian(0.0, sigma);
    sum_sq += s * s;
  }
  obs.estimated_variance = sum_sq / static_cast<double>(obs.samples.size());
  obs.classified_level = classify_level(obs.estimated_variance, line, temperature_scale);
  obs.ground_truth_level = ground_truth_level(a, b);
  return obs;
}

// What a passive probe on the wire records. Carries no resistor choice,
// basis or ground-truth level.
struct EveView {
  std::vector<double> samples;
  double estimated_variance;
  NoiseLevel level;
};

inline EveView wiretap(const LineObservation& obs) {
  return {obs.samples, obs.estimated_variance, obs.classified_level};
}

/// Eve's decision: the noise level and nothing else.
inline NoiseLevel eve_observe(const LineObservation& obs) noexcept {
  return obs.classified_level;
}

}  // namespace hqk
