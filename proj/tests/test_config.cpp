#include <catch_amalgamated.hpp>

#include <sstream>

#include "hqk/config.hpp"

using namespace hqk;

TEST_CASE("defaults", "[config]") {
  const RunConfig c;
  const auto& o = c.params.optical;
  CHECK(o.alpha == 0.2);
  CHECK(o.mu == 0.1);
  CHECK(o.eta_d == 0.1);
  CHECK(o.p_d == 1e-5);
  CHECK(o.e_opt == 0.015);
  CHECK(o.f_ec == 1.15);
  CHECK(o.f_qkd == 1e7);
  const auto& l = c.params.line;
  CHECK(l.v == 2e5);
  CHECK(l.n_pairs == 1000);
  CHECK(l.n_samples == 50);
  CHECK(c.sweep.points == 200);
}

TEST_CASE("dump and parse round-trip", "[config]") {
  RunConfig c;
  c.params.optical.alpha = 0.1 + 0.2;  // not exactly representable in short form
  c.params.line.n_samples = 150;
  c.protocol = Protocol::III;
  c.mode = TimingModeKind::Buffered;
  c.sweep.spacing = Spacing::Linear;
  c.classification = Classification::Sampled;
  c.seed = 987654321;
  c.format = OutputFormat::Records;
  c.out = "rates.jsonl";
  std::istringstream in(dump_config(c));
  CHECK(parse_config(in) == c);

  std::istringstream defaults(dump_config(RunConfig{}));
  CHECK(parse_config(defaults) == RunConfig{});
}

TEST_CASE("partial files overlay the base", "[config]") {
  std::istringstream in("[optical]\nalpha = 0.25\n[run]\nseed = 5\n");
  const auto c = parse_config(in);
  CHECK(c.params.optical.alpha == 0.25);
  CHECK(c.seed == 5);
  CHECK(c.params.optical.mu == 0.1);
}

TEST_CASE("bad input", "[config]") {
  std::istringstream unknown("[optical]\nbeta = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream bad_number("[optical]\nalpha = fast\n");
  CHECK_THROWS_AS(parse_config(bad_number), ConfigError);
  std::istringstream bad_enum("[session]\nprotocol = IV\n");
  CHECK_THROWS_AS(parse_config(bad_enum), ConfigError);
  std::istringstream no_section("alpha = 1\n");
  CHECK_THROWS_AS(parse_config(no_section), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/hqk.ini"), IoError);
}

TEST_CASE("session config carries the run settings", "[config]") {
  RunConfig c;
  c.mode = TimingModeKind::Buffered;
  c.burst_block = 500;
  c.buffer_capacity = 1000;
  c.distance = 3.5;
  const auto s = session_config(c);
  CHECK(s.mode.kind == TimingModeKind::Buffered);
  CHECK(s.mode.burst_block == 500);
  CHECK(s.mode.buffer_capacity == 1000);
  CHECK(s.distance_km == 3.5);
  CHECK(s.params == c.params);
}

TEST_CASE("shipped example config equals the defaults", "[config]") {
  CHECK(load_config(std::string(HQK_TEST_DATA) + "/../../configs/default.ini") == RunConfig{});
}
