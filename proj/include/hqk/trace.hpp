#pragma once

// Line-oriented round traces.
//
// Fixture (input), one round per line, '#' starts a comment:
//     <alice_basis> <alice_bit> <bob_basis> <bob_bit>
// bases are '+' or 'x', bits '0' or '1'; bob_bit may be '?' to let the
// seed decide Bob's measurement.
//
// Trace (output): a header block followed by one aligned row per round
// with the columns listed in kTraceColumns, then the extracted key.

#include <array>
#include <cctype>
#include <iomanip>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hqk/error.hpp"
#include "hqk/protocol.hpp"

namespace hqk {

inline constexpr std::array<std::string_view, 13> kTraceColumns = {
    "round",   "a_basis", "a_bit", "a_pol", "b_basis", "b_pol", "b_bit",
    "a_res",   "b_res",   "level", "det",   "qkd",   "kljn"};

inline std::vector<RoundInputs> parse_fixture(std::istream& in) {
  std::vector<RoundInputs> rounds;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = raw.substr(0, hash);

    std::vector<std::pair<std::string, int>> tokens;  // token, 1-based column
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 4) {
      const int col = tokens.size() > 4 ? tokens[4].second : static_cast<int>(line.size()) + 1;
      throw ParseError("expected 4 fields (alice_basis alice_bit bob_basis bob_bit), got " +
                           std::to_string(tokens.size()),
                       line_no, col);
    }

    auto basis = [&](const std::pair<std::string, int>& t) {
      if (t.first == "+") return Basis::Rectilinear;
      if (t.first == "x" || t.first == "X") return Basis::Diagonal;
      throw ParseError("bad basis '" + t.first + "' (want + or x)", line_no, t.second);
    };
    auto bit = [&](const std::pair<std::string, int>& t) -> Bit {
      if (t.first == "0") return 0;
      if (t.first == "1") return 1;
      throw ParseError("bad bit '" + t.first + "' (want 0 or 1)", line_no, t.second);
    };

    RoundInputs r;
    r.alice_basis = basis(tokens[0]);
    r.alice_bit = bit(tokens[1]);
    r.bob_basis = basis(tokens[2]);
    if (tokens[3].first != "?") r.bob_outcome = bit(tokens[3]);
    rounds.push_back(r);
  }
  return rounds;
}

inline std::vector<RoundInputs> parse_fixture(const std::string& text) {
  std::istringstream in(text);
  return parse_fixture(in);
}

inline std::string render_fixture(std::span<const RoundInputs> rounds) {
  std::ostringstream os;
  os << "# alice_basis alice_bit bob_basis bob_bit\n";
  for (const auto& r : rounds) {
    os << to_string(r.alice_basis) << ' ' << int(r.alice_bit) << ' ' << to_string(r.bob_basis)
       << ' ' << (r.bob_outcome ? std::to_string(*r.bob_outcome) : std::string("?")) << '\n';
  }
  return os.str();
}

inline std::string render_trace(std::span<const ProtocolRound> rounds) {
  std::ostringstream os;
  const Protocol protocol = rounds.empty() ? Protocol::Bb84 : rounds.front().protocol;
  os << "# hqk round trace v1\n";
  os << "# protocol: " << to_string(protocol) << '\n';
  os << "# rounds: " << rounds.size() << '\n';

  constexpr std::array<int, 13> width = {5, 7, 5, 5, 7, 5, 5, 5, 5, 12, 3, 3, 4};
  auto cell = [&](std::size_t i, std::string_view s) {
    if (i + 1 == width.size()) {
      os << s << '\n';
    } else {
      os << std::left << std::setw(width[i]) << s << ' ';
    }
  };
  auto opt_bit = [](const std::optional<Bit>& b) {
    return b ? std::to_string(*b) : std::string("-");
  };

  os << "#";
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    os << ' ' << kTraceColumns[i];
  }
  os << '\n';

  int index = 1;
  for (const auto& r : rounds) {
    const auto bob_pol = r.bob_polarization();
    cell(0, std::to_string(index++));
    cell(1, to_string(r.alice_basis));
    cell(2, std::to_string(r.alice_bit));
    cell(3, to_string(r.alice_polarization()));
    cell(4, to_string(r.bob_basis));
    cell(5, bob_pol ? to_string(*bob_pol) : "-");
    cell(6, opt_bit(r.bob_bit));
    cell(7, r.kljn ? to_string(r.kljn->alice_resistor) : "-");
    cell(8, r.kljn ? to_string(r.kljn->bob_resistor) : "-");
    cell(9, r.kljn ? to_string(r.kljn->noise_level) : "-");
    cell(10, r.optical_detected ? "1" : "0");
    cell(11, opt_bit(r.qkd_key_bit));
    cell(12, r.flagged ? "F" : opt_bit(r.kljn_key_bit));
  }

  const KeyStream ks = extract_key(rounds);
  os << "# key:";
  for (auto b : ks.bits) os << ' ' << int(b);
  os << "\n# origin:";
  for (auto o : ks.origins) os << ' ' << to_string(o);
  os << "\n# bits: " << ks.size() << " (qkd " << ks.count(KeyOrigin::Qkd) << ", kljn "
     << ks.count(KeyOrigin::Kljn) << ")\n";
  return os.str();
}

/// Replays fixture rounds through `protocol` on an ideal channel: every
/// pulse is detected, no flips, classification equals ground truth.
inline std::vector<ProtocolRound> replay(Protocol protocol, std::span<const RoundInputs> inputs,
                                         Seed seed) {
  RoundChannel channel;
  std::vector<ProtocolRound> out;
  out.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out.push_back(run_round(protocol, inputs[i], channel, derive_seed(seed, i)));
  }
  return out;
}

}  // namespace hqk
