#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "hqk/rng.hpp"
#include "hqk/stats.hpp"

using namespace hqk;
using Catch::Matchers::WithinAbs;

TEST_CASE("streams are reproducible", "[rng]") {
  Rng a(123);
  Rng b(123);
  Rng c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform01();
    REQUIRE(x == b.uniform01());
    differs |= x != c.uniform01();
  }
  CHECK(differs);
}

TEST_CASE("derived seeds are distinct", "[rng]") {
  std::set<Seed> seen;
  for (Seed parent : {0ULL, 1ULL, 2ULL}) {
    for (std::uint64_t i = 0; i < 10'000; ++i) seen.insert(derive_seed(parent, i));
  }
  CHECK(seen.size() == 30'000);
  static_assert(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("uniform and gaussian moments", "[rng]") {
  Rng r(9);
  constexpr int n = 200'000;
  double su = 0.0;
  double sg = 0.0;
  double sg2 = 0.0;
  int heads = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double g = r.gaussian();
    sg += g;
    sg2 += g * g;
    heads += r.coin();
  }
  CHECK_THAT(su / n, WithinAbs(0.5, 4.0 * std::sqrt(1.0 / 12 / n)));
  CHECK_THAT(sg / n, WithinAbs(0.0, 4.0 / std::sqrt(n)));
  CHECK_THAT(sg2 / n, WithinAbs(1.0, 4.0 * std::sqrt(2.0 / n)));
  CHECK_THAT(static_cast<double>(heads) / n, WithinAbs(0.5, 4.0 * 0.5 / std::sqrt(n)));
  CHECK_FALSE(r.bernoulli(0.0));
  CHECK(r.bernoulli(1.0));
}

TEST_CASE("Kolmogorov tail", "[stats]") {
  CHECK(stats::kolmogorov_q(0.0) == 1.0);
  CHECK_THAT(stats::kolmogorov_q(1.36), WithinAbs(0.0494, 5e-4));
  CHECK_THAT(stats::kolmogorov_q(1.63), WithinAbs(0.0098, 3e-4));
  CHECK(stats::kolmogorov_q(5.0) < 1e-15);
}

TEST_CASE("two-sample KS", "[stats]") {
  Rng r(17);
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> shifted;
  for (int i = 0; i < 5000; ++i) {
    a.push_back(r.gaussian());
    b.push_back(r.gaussian());
    shifted.push_back(r.gaussian(0.2));
  }
  const auto same = stats::ks_two_sample(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK(stats::ks_two_sample(a, b).p_value > 0.01);
  CHECK(stats::ks_two_sample(a, shifted).p_value < 1e-6);
  CHECK_THROWS(stats::ks_two_sample(a, std::vector<double>{}));
}
