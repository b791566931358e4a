#pragma once

// Normalized key rates (secure bits per optical pulse) and absolute
// throughputs (bps) versus distance, plus the root finders used for the
// hybrid-vs-BB84 crossover.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hqk/error.hpp"
#include "hqk/physics.hpp"

namespace hqk {

struct NormalizedRates {
  double r_bb84_p1;  // BB84 and Protocol I
  double r_p23;      // Protocols II and III
};

/// 0.5 Q (1 - gamma) for sifted optical bits; Protocols II/III add 0.5
/// KLJN bits per pulse on top.
inline NormalizedRates normalized_rates(const LinkBudget& b) {
  const double p23 = 0.5 + 0.5 * b.q_mu * (1.0 - b.gamma);
  // p23 lies in [0.5, 1], so this subtraction is exact and the offset
  // between the two rates is 0.5 to the bit.
  return {p23 - 0.5, p23};
}

struct RatePoint {
  double distance_km = 0.0;
  double q_mu = 0.0;
  double e_mu = 0.0;
  double gamma = 0.0;
  double r_bb84 = 0.0;
  double r_p1 = 0.0;
  double r_p23 = 0.0;
  double r_kljn = 0.0;  // bps
  double f_sys = 0.0;   // Hz
  double t_bb84 = 0.0;
  double t_p1 = 0.0;
  double t_p23 = 0.0;
  double t_burst_p1 = 0.0;
  double t_burst_p2 = 0.0;

  bool operator==(const RatePoint&) const = default;
};

inline RatePoint throughputs(const SystemParams& params, double distance_km) {
  const LinkBudget b = link_budget(params.optical, distance_km);
  const NormalizedRates r = normalized_rates(b);
  const double f_qkd = params.optical.f_qkd;

  RatePoint p;
  p.distance_km = distance_km;
  p.q_mu = b.q_mu;
  p.e_mu = b.e_mu;
  p.gamma = b.gamma;
  p.r_bb84 = r.r_bb84_p1;
  p.r_p1 = r.r_bb84_p1;
  p.r_p23 = r.r_p23;
  p.r_kljn = kljn_bit_rate(params.line, distance_km);
  p.f_sys = std::min(f_qkd, p.r_kljn);
  p.t_bb84 = p.r_bb84 * f_qkd;
  p.t_p1 = p.r_p1 * p.f_sys;
  p.t_p23 = p.r_p23 * p.f_sys;
  p.t_burst_p1 = p.r_p1 * f_qkd;
  p.t_burst_p2 = p.r_p23 * f_qkd;
  return p;
}

enum class Spacing { Linear, Log };

inline std::vector<double> distance_grid(double l_min, double l_max, int n_points,
                                         Spacing spacing) {
  if (!(l_min > 0.0) || !(l_max > l_min) || !std::isfinite(l_max)) {
    throw UsageError("sweep range must satisfy 0 < l_min < l_max");
  }
  if (n_points < 2) throw UsageError("sweep needs at least 2 points");
  std::vector<double> d(static_cast<std::size_t>(n_points));
  const double last = static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / last;
    d[static_cast<std::size_t>(i)] =
        spacing == Spacing::Linear ? l_min + t * (l_max - l_min)
                                   : l_min * std::pow(l_max / l_min, t);
  }
  d.front() = l_min;
  d.back() = l_max;
  return d;
}

inline std::vector<RatePoint> sweep(const SystemParams& params, double l_min, double l_max,
                                    int n_points, Spacing spacing = Spacing::Log) {
  validate(params);
  std::vector<RatePoint> out;
  for (double d : distance_grid(l_min, l_max, n_points, spacing)) {
    out.push_back(throughputs(params, d));
  }
  return out;
}

struct Bracket {
  double lo = 0.1;
  double hi = 10.0;
};

inline constexpr double kRootTolerance = 1e-4;  // km

/// Bisection for a sign change of f on [lo, hi]; returns the midpoint of
/// the final interval once its width is below `tol`.
inline double bisect(const std::function<double(double)>& f, Bracket br,
                     double tol = kRootTolerance) {
  if (!(br.lo > 0.0) || !(br.hi > br.lo)) {
    throw UsageError("bracket must satisfy 0 < lo < hi");
  }
  double lo = br.lo;
  double hi = br.hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw SolverError("no sign change in bracket [" + std::to_string(br.lo) + ", " +
                      std::to_string(br.hi) + "] km");
  }
  // Bisect down to the tolerance, then keep going until the interval stops
  // shrinking so the residual at the returned point is tiny as well.
  while (hi - lo > 0.0) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo < tol * 1e-6) break;
  }
  return 0.5 * (lo + hi);
}

/// Largest distance in the bracket where T_{II,III} >= factor * T_BB84.
inline double short_haul_supremacy_bound(const SystemParams& params, double factor = 2.0,
                                         Bracket br = {}) {
  validate(params);
  if (!(factor > 0.0)) throw UsageError("factor must be > 0");
  return bisect(
      [&](double d) {
        const RatePoint p = throughputs(params, d);
        return p.t_p23 - factor * p.t_bb84;
      },
      br);
}

/// Distance where the gated hybrid throughput meets unthrottled BB84.
inline double crossover_distance(const SystemParams& params, Bracket br = {}) {
  return short_haul_supremacy_bound(params, 1.0, br);
}

}  // namespace hqk
