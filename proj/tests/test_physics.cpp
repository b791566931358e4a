#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hqk/physics.hpp"
#include "oracles.hpp"

using namespace hqk;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kRel = 1e-12;
}

TEST_CASE("system transmittance", "[physics]") {
  OpticalParams p;  // eta_D 0.1, alpha 0.2
  CHECK(system_transmittance(p, 0.0) == 0.1);
  CHECK_THAT(system_transmittance(p, 10.0), WithinRel(0.0630957344480193, kRel));

  OpticalParams ideal;
  ideal.eta_d = 1.0;
  ideal.alpha = 0.0;
  CHECK(system_transmittance(ideal, 50.0) == 1.0);

  CHECK_THROWS_AS(system_transmittance(p, -1.0), DomainError);
  CHECK_THROWS_AS(system_transmittance(p, std::nan("")), DomainError);
}

TEST_CASE("gain and QBER match frozen closed-form values", "[physics][oracle]") {
  const OpticalParams p;
  for (const auto& f : oracle::kFrozen) {
    INFO("L = " << f.distance_km);
    CHECK_THAT(system_transmittance(p, f.distance_km), WithinRel(f.eta_sys, kRel));
    const auto [q, e] = gain_and_qber(p, f.distance_km);
    CHECK_THAT(q, WithinRel(f.q_mu, kRel));
    CHECK_THAT(e, WithinRel(f.e_mu, kRel));
    CHECK_THAT(link_budget(p, f.distance_km).gamma, WithinRel(f.gamma, kRel));
  }
}

TEST_CASE("gain and QBER limits", "[physics]") {
  OpticalParams clean;
  clean.p_d = 0.0;
  clean.e_opt = 0.0;
  CHECK(gain_and_qber(clean, 3.0).e_mu == 0.0);

  // Only dark counts remain: the QBER is that of random clicks.
  OpticalParams p;
  p.alpha = 10.0;
  const auto far = gain_and_qber(p, 30.0);  // 300 dB
  CHECK_THAT(far.q_mu, WithinAbs(p.p_d, 1e-9));
  CHECK_THAT(far.e_mu, WithinAbs(0.5, 1e-9));

  // p_d -> 0 leaves the misalignment error.
  OpticalParams tiny_dark;
  tiny_dark.p_d = 1e-15;
  CHECK_THAT(gain_and_qber(tiny_dark, 1.0).e_mu, WithinAbs(tiny_dark.e_opt, 1e-9));

  OpticalParams dead;
  dead.p_d = 0.0;
  dead.alpha = 1000.0;
  CHECK_THROWS_AS(gain_and_qber(dead, 10.0), DomainError);
}

TEST_CASE("binary entropy", "[physics]") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK_THAT(binary_entropy(0.11), WithinRel(oracle::kEntropyAt011, 1e-12));
  CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.01), DomainError);

  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen);
    const double h = binary_entropy(x);
    REQUIRE(h >= 0.0);
    REQUIRE(h <= 1.0);
    REQUIRE_THAT(h, WithinAbs(binary_entropy(1.0 - x), 1e-12));
    REQUIRE_THAT(h, WithinAbs(oracle::entropy(x), 1e-12));
  }
}

TEST_CASE("post-processing penalty", "[physics]") {
  const OpticalParams p;  // f = 1.15
  CHECK(post_processing_penalty(p, 0.0) == 0.0);
  CHECK(post_processing_penalty(p, 0.5) == 1.0);
  CHECK_THAT(post_processing_penalty(p, oracle::kFrozen[0].e_mu),
             WithinRel(oracle::kFrozen[0].gamma, 1e-12));

  // Every e with (f+1) h(e) >= 1 clamps to exactly 1.
  for (double e = 0.0; e <= 1.0; e += 0.001) {
    if ((p.f_ec + 1.0) * oracle::entropy(e) >= 1.0 + 1e-12) {
      REQUIRE(post_processing_penalty(p, e) == 1.0);
    }
  }
}

TEST_CASE("wave-limit bandwidth and KLJN bit rate", "[physics]") {
  KljnLineParams line;  // v 2e5 km/s, 1000 pairs, N 50
  CHECK(wave_limit_bandwidth(line, 1.0) == 1.0e4);
  CHECK(wave_limit_bandwidth(line, 10.0) == 1.0e3);
  CHECK(wave_limit_bandwidth(line, 1.0) / first_standing_wave(line, 1.0) == 0.1);

  CHECK(kljn_bit_rate(line, 1.0) == 4.0e5);
  CHECK(kljn_bit_rate(line, 10.0) == 4.0e4);

  KljnLineParams single = line;
  single.n_pairs = 1;
  single.n_samples = 1;
  CHECK(kljn_bit_rate(single, 10.0) == sampling_frequency(single, 10.0));
  CHECK(kljn_bit_rate(single, 10.0) == 2.0e3);

  CHECK_THROWS_AS(wave_limit_bandwidth(line, 0.0), DomainError);
  CHECK_THROWS_AS(kljn_bit_rate(line, 0.0), DomainError);
  CHECK_THROWS_AS(kljn_bit_rate(line, -2.0), DomainError);
}

TEST_CASE("KLJN bit rate scales exactly with pairs and samples", "[physics][property]") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> pairs(1, 5000);
  std::uniform_int_distribution<int> samples(1, 500);
  std::uniform_real_distribution<double> dist(0.01, 100.0);
  for (int i = 0; i < 200; ++i) {
    KljnLineParams l;
    l.n_pairs = pairs(gen);
    l.n_samples = samples(gen);
    const double d = dist(gen);
    KljnLineParams doubled_pairs = l;
    doubled_pairs.n_pairs *= 2;
    KljnLineParams doubled_samples = l;
    doubled_samples.n_samples *= 2;
    REQUIRE(kljn_bit_rate(doubled_pairs, d) == 2.0 * kljn_bit_rate(l, d));
    REQUIRE(kljn_bit_rate(doubled_samples, d) == 0.5 * kljn_bit_rate(l, d));
  }
}

TEST_CASE("monotonicity in distance", "[physics][property]") {
  const OpticalParams p;
  const KljnLineParams l;
  double prev_q = INFINITY;
  double prev_eta = INFINITY;
  double prev_e = -INFINITY;
  double prev_r = INFINITY;
  for (double d = 0.05; d <= 200.0; d *= 1.07) {
    const auto b = link_budget(p, d);
    REQUIRE(b.q_mu <= prev_q);
    REQUIRE(b.eta_sys <= prev_eta);
    REQUIRE(b.e_mu >= prev_e);
    const double r = kljn_bit_rate(l, d);
    REQUIRE(r < prev_r);
    prev_q = b.q_mu;
    prev_eta = b.eta_sys;
    prev_e = b.e_mu;
    prev_r = r;
  }
}

TEST_CASE("parameter validation", "[physics]") {
  CHECK_NOTHROW(validate(SystemParams{}));
  OpticalParams p;
  p.e_opt = 0.5;
  CHECK_THROWS_AS(validate(p), DomainError);
  p = {};
  p.eta_d = 0.0;
  CHECK_THROWS_AS(validate(p), DomainError);
  p = {};
  p.f_ec = 0.9;
  CHECK_THROWS_AS(validate(p), DomainError);

  KljnLineParams l;
  l.r_high = l.r_low;
  CHECK_THROWS_AS(validate(l), DomainError);
  l = {};
  l.n_pairs = 0;
  CHECK_THROWS_AS(validate(l), DomainError);
}
