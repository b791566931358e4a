#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "hqk/reference_rounds.hpp"
#include "hqk/trace.hpp"

using namespace hqk;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(HQK_TEST_DATA) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string reference_trace(Protocol p) {
  const auto inputs = parse_fixture(std::string(kReferenceFixture));
  const auto rounds = replay(p, inputs, 0);
  return render_trace(rounds);
}

}  // namespace

TEST_CASE("fixture file matches the built-in reference rounds", "[trace]") {
  CHECK(slurp("reference.fixture") == std::string(kReferenceFixture));
  const auto inputs = parse_fixture(std::string(kReferenceFixture));
  REQUIRE(inputs.size() == 14);
  CHECK(parse_fixture(render_fixture(inputs)).size() == 14);
  CHECK(render_fixture(parse_fixture(render_fixture(inputs))) == render_fixture(inputs));
}

TEST_CASE("golden traces", "[trace][golden]") {
  CHECK(reference_trace(Protocol::Bb84) == slurp("reference_bb84.golden"));
  CHECK(reference_trace(Protocol::I) == slurp("reference_p1.golden"));
  CHECK(reference_trace(Protocol::II) == slurp("reference_p2.golden"));
  CHECK(reference_trace(Protocol::III) == slurp("reference_p3.golden"));
}

TEST_CASE("trace layout", "[trace]") {
  const std::string t = reference_trace(Protocol::II);
  CHECK(t.rfind("# hqk round trace v1\n", 0) == 0);
  CHECK(t.find("# bits: 18 (qkd 9, kljn 9)") != std::string::npos);
  std::istringstream lines(t);
  std::string line;
  while (std::getline(lines, line)) {
    REQUIRE_FALSE(line.empty());
    REQUIRE(line.back() != ' ');
  }
}

TEST_CASE("fixture parse errors carry a position", "[trace]") {
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_fixture(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("+ 1 + 1\n+ 0 q 1\n").rfind("line 2, column 5", 0) == 0);
  CHECK(message("# comment\n+ 1 +\n").rfind("line 2", 0) == 0);
  CHECK(message("+ 2 + 1\n").rfind("line 1, column 3", 0) == 0);
  CHECK_THROWS_AS(parse_fixture(std::string("x 1 + 1 extra\n")), ParseError);
  CHECK(parse_fixture(std::string("# only comments\n\n")).empty());
}

TEST_CASE("random Bob bits are reproducible", "[trace]") {
  const auto inputs = parse_fixture(std::string("+ 1 x ?\nx 0 + ?\n+ 1 + ?\n"));
  REQUIRE(inputs.size() == 3);
  CHECK_FALSE(inputs[0].bob_outcome.has_value());
  const auto a = render_trace(replay(Protocol::I, inputs, 42));
  const auto b = render_trace(replay(Protocol::I, inputs, 42));
  CHECK(a == b);
}
