#pragma once

// The 14-round reference example (bases, Alice bits, Bob's recorded
// outcomes) shipped with the trace command. Mirrors tests/data/reference.fixture.

namespace hqk {

inline constexpr const char* kReferenceFixture =
    "# alice_basis alice_bit bob_basis bob_bit\n"
    "+ 1 + 1\n"
    "+ 0 x 1\n"
    "x 1 + 0\n"
    "+ 1 + 1\n"
    "x 0 x 0\n"
    "x 0 x 0\n"
    "x 1 + 1\n"
    "+ 1 + 1\n"
    "x 0 x 0\n"
    "+ 0 + 0\n"
    "+ 1 x 1\n"
    "x 1 x 1\n"
    "x 1 + 0\n"
    "+ 0 + 0\n"
    ;

}  // namespace hqk
