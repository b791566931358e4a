#pragma once

// Round engines for baseline BB84 and the three KLJN-assisted variants.
//
// Protocols I and II use the cross mapping (Alice +/x -> R_L/R_H, Bob
// +/x -> R_H/R_L), so matched bases show up as the Intermediate noise level
// and Eve cannot tell (+,+) from (x,x). Protocol III uses the same mapping
// for both parties: matched bases give Low/High (revealing the common basis)
// and mismatched bases give Intermediate, whose resistor order is a key bit.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hqk/error.hpp"
#include "hqk/kljn.hpp"
#include "hqk/rng.hpp"

namespace hqk {

using Bit = std::uint8_t;

enum class Basis : std::uint8_t { Rectilinear, Diagonal };

enum class Polarization : std::uint8_t { Vertical, Horizontal, Diag45, DiagMinus45 };

enum class Protocol : std::uint8_t { Bb84, I, II, III };

enum class Party : std::uint8_t { Alice, Bob };

enum class KeyOrigin : std::uint8_t { Qkd, Kljn };

constexpr std::string_view to_string(Basis b) noexcept {
  return b == Basis::Rectilinear ? "+" : "x";
}

constexpr std::string_view to_string(Polarization p) noexcept {
  switch (p) {
    case Polarization::Vertical: return "V";
    case Polarization::Horizontal: return "H";
    case Polarization::Diag45: return "+45";
    case Polarization::DiagMinus45: return "-45";
  }
  return "?";
}

constexpr std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::Bb84: return "bb84";
    case Protocol::I: return "I";
    case Protocol::II: return "II";
    case Protocol::III: return "III";
  }
  return "?";
}

constexpr std::string_view to_string(KeyOrigin o) noexcept {
  return o == KeyOrigin::Qkd ? "qkd" : "kljn";
}

/// Vertical and +45 carry bit 1.
constexpr Polarization encode(Basis basis, Bit bit) noexcept {
  if (basis == Basis::Rectilinear) {
    return bit ? Polarization::Vertical : Polarization::Horizontal;
  }
  return bit ? Polarization::Diag45 : Polarization::DiagMinus45;
}

constexpr Basis basis_of(Polarization p) noexcept {
  return (p == Polarization::Vertical || p == Polarization::Horizontal)
             ? Basis::Rectilinear
             : Basis::Diagonal;
}

constexpr Bit bit_of(Polarization p) noexcept {
  return (p == Polarization::Vertical || p == Polarization::Diag45) ? 1 : 0;
}

constexpr ResistorChoice map_basis_to_resistor_cross(Party party, Basis basis) noexcept {
  const bool rect = basis == Basis::Rectilinear;
  if (party == Party::Alice) return rect ? ResistorChoice::Low : ResistorChoice::High;
  return rect ? ResistorChoice::High : ResistorChoice::Low;
}

constexpr ResistorChoice map_basis_to_resistor_same(Basis basis) noexcept {
  return basis == Basis::Rectilinear ? ResistorChoice::Low : ResistorChoice::High;
}

constexpr ResistorChoice opposite(ResistorChoice r) noexcept {
  return r == ResistorChoice::Low ? ResistorChoice::High : ResistorChoice::Low;
}

/// Bob's measurement of Alice's photon. Matched bases reproduce Alice's bit
/// up to a flip with `flip_probability`; mismatched bases give a fair coin.
inline std::optional<Bit> measure_photon(Bit alice_bit, Basis alice_basis, Basis bob_basis,
                                         bool detected, Seed seed,
                                         double flip_probability = 0.0) {
  if (!detected) return std::nullopt;
  Rng rng(seed);
  if (alice_basis == bob_basis) {
    return static_cast<Bit>(alice_bit ^ (rng.bernoulli(flip_probability) ? 1 : 0));
  }
  return static_cast<Bit>(rng.coin() ? 1 : 0);
}

struct RoundInputs {
  Basis alice_basis = Basis::Rectilinear;
  Bit alice_bit = 0;
  Basis bob_basis = Basis::Rectilinear;
  // Forces Bob's measurement result (golden traces); ignored if not detected.
  std::optional<Bit> bob_outcome;
};

inline RoundInputs random_inputs(Rng& rng) {
  RoundInputs in;
  in.alice_basis = rng.coin() ? Basis::Diagonal : Basis::Rectilinear;
  in.alice_bit = rng.coin() ? 1 : 0;
  in.bob_basis = rng.coin() ? Basis::Diagonal : Basis::Rectilinear;
  return in;
}

enum class Classification : std::uint8_t {
  Ideal,    // level is the ground truth; no samples are drawn
  Sampled,  // level is classified from n_samples Gaussian samples
};

struct RoundChannel {
  double detection_probability = 1.0;
  double flip_probability = 0.0;
  KljnLineParams line{};
  double temperature_scale = 1.0;
  Classification classification = Classification::Ideal;
};

struct KljnExchange {
  ResistorChoice alice_resistor;
  ResistorChoice bob_resistor;
  NoiseLevel noise_level;   // as classified; drives protocol logic
  NoiseLevel ground_truth;
  std::optional<LineObservation> observation;  // Sampled only
};

struct ProtocolRound {
  Protocol protocol = Protocol::Bb84;
  Basis alice_basis = Basis::Rectilinear;
  Bit alice_bit = 0;
  Basis bob_basis = Basis::Rectilinear;
  std::optional<KljnExchange> kljn;  // absent for BB84
  bool optical_detected = false;
  std::optional<Bit> bob_bit;
  // Alice's key contribution; Bob's follows from party_key().
  std::optional<Bit> qkd_key_bit;
  std::optional<Bit> kljn_key_bit;
  // Classified level contradicts a party's own resistor; round discarded.
  bool flagged = false;

  Polarization alice_polarization() const noexcept { return encode(alice_basis, alice_bit); }
  std::optional<Polarization> bob_polarization() const noexcept {
    if (!bob_bit) return std::nullopt;
    return encode(bob_basis, *bob_bit);
  }
};

struct RoundKey {
  std::optional<Bit> qkd;
  std::optional<Bit> kljn;
  bool flagged = false;
};

namespace detail {

constexpr bool level_consistent(NoiseLevel level, ResistorChoice own) noexcept {
  if (level == NoiseLevel::Low) return own == ResistorChoice::Low;
  if (level == NoiseLevel::High) return own == ResistorChoice::High;
  return true;
}

// Resistor order bit for an Intermediate level: 1 iff Alice holds R_H.
// A party knows its own resistor; the partner's is the opposite one.
constexpr Bit order_bit(Party party, ResistorChoice own) noexcept {
  const ResistorChoice alice = party == Party::Alice ? own : opposite(own);
  return alice == ResistorChoice::High ? 1 : 0;
}

}  // namespace detail

/// Key bits as derived locally by `party` from what it legitimately knows:
/// its own basis, resistor and bit (or measurement), plus the classified
/// line level. BB84 sifting assumes the public basis announcement.
inline RoundKey party_key(const ProtocolRound& r, Party party) {
  RoundKey key;
  const std::optional<Bit> own_qkd_bit =
      party == Party::Alice ? std::optional<Bit>(r.alice_bit) : r.bob_bit;
  const bool detected = r.optical_detected;

  if (r.protocol == Protocol::Bb84) {
    if (r.alice_basis == r.bob_basis && detected) key.qkd = own_qkd_bit;
    return key;
  }
  if (!r.kljn) throw UsageError("KLJN-assisted round without a KLJN exchange");

  const ResistorChoice own =
      party == Party::Alice ? r.kljn->alice_resistor : r.kljn->bob_resistor;
  const NoiseLevel level = r.kljn->noise_level;
  if (!detail::level_consistent(level, own)) {
    key.flagged = true;
    return key;
  }

  switch (r.protocol) {
    case Protocol::I:
    case Protocol::II:
      if (level != NoiseLevel::Intermediate) return key;  // bases differ
      if (detected) key.qkd = own_qkd_bit;
      if (r.protocol == Protocol::II) key.kljn = detail::order_bit(party, own);
      return key;
    case Protocol::III:
      if (level == NoiseLevel::Intermediate) {
        key.kljn = detail::order_bit(party, own);
      } else if (detected) {
        key.qkd = own_qkd_bit;
      }
      return key;
    case Protocol::Bb84:
      break;
  }
  return key;
}

/// Runs one transmission interval. Random draws are split into independent
/// sub-streams of `seed`: 0 detection, 1 measurement, 2 line noise.
inline ProtocolRound run_round(Protocol protocol, const RoundInputs& in,
                               const RoundChannel& channel, Seed seed) {
  ProtocolRound r;
  r.protocol = protocol;
  r.alice_basis = in.alice_basis;
  r.alice_bit = in.alice_bit;
  r.bob_basis = in.bob_basis;

  Rng detection(derive_seed(seed, 0));
  r.optical_detected = detection.bernoulli(channel.detection_probability);
  if (r.optical_detected && in.bob_outcome) {
    r.bob_bit = *in.bob_outcome;
  } else {
    r.bob_bit = measure_photon(in.alice_bit, in.alice_basis, in.bob_basis, r.optical_detected,
                               derive_seed(seed, 1), channel.flip_probability);
  }

  if (protocol != Protocol::Bb84) {
    KljnExchange k;
    if (protocol == Protocol::III) {
      k.alice_resistor = map_basis_to_resistor_same(in.alice_basis);
      k.bob_resistor = map_basis_to_resistor_same(in.bob_basis);
    } else {
      k.alice_resistor = map_basis_to_resistor_cross(Party::Alice, in.alice_basis);
      k.bob_resistor = map_basis_to_resistor_cross(Party::Bob, in.bob_basis);
    }
    k.ground_truth = ground_truth_level(k.alice_resistor, k.bob_resistor);
    if (channel.classification == Classification::Sampled) {
      k.observation = sample_line(channel.line, k.alice_resistor, k.bob_resistor,
                                  derive_seed(seed, 2), channel.temperature_scale);
      k.noise_level = k.observation->classified_level;
    } else {
      k.noise_level = k.ground_truth;
    }
    r.kljn = std::move(k);
  }

  const RoundKey alice = party_key(r, Party::Alice);
  const RoundKey bob = party_key(r, Party::Bob);
  r.flagged = alice.flagged || bob.flagged;
  if (!r.flagged) {
    r.qkd_key_bit = alice.qkd;
    r.kljn_key_bit = alice.kljn;
  }
  return r;
}

inline ProtocolRound run_round_bb84(const RoundInputs& in, const RoundChannel& ch, Seed seed) {
  return run_round(Protocol::Bb84, in, ch, seed);
}
inline ProtocolRound run_round_protocol1(const RoundInputs& in, const RoundChannel& ch,
                                         Seed seed) {
  return run_round(Protocol::I, in, ch, seed);
}
inline ProtocolRound run_round_protocol2(const RoundInputs& in, const RoundChannel& ch,
                                         Seed seed) {
  return run_round(Protocol::II, in, ch, seed);
}
inline ProtocolRound run_round_protocol3(const RoundInputs& in, const RoundChannel& ch,
                                         Seed seed) {
  return run_round(Protocol::III, in, ch, seed);
}

struct KeyStream {
  std::vector<Bit> bits;
  std::vector<KeyOrigin> origins;

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t count(KeyOrigin o) const noexcept {
    std::size_t n = 0;
    for (auto x : origins) n += (x == o);
    return n;
  }
  bool operator==(const KeyStream&) const = default;
};

/// Concatenates key bits in round order, QKD before KLJN within a round.
/// Alice's view by default; Bob's is rebuilt from his own knowledge.
inline KeyStream extract_key(std::span<const ProtocolRound> rounds, Party party = Party::Alice) {
  KeyStream ks;
  if (rounds.empty()) return ks;
  const Protocol protocol = rounds.front().protocol;
  for (const auto& r : rounds) {
    if (r.protocol != protocol) {
      throw UsageError("extract_key: rounds from different protocols");
    }
    if (r.flagged) continue;
    const RoundKey k = party == Party::Alice ? RoundKey{r.qkd_key_bit, r.kljn_key_bit, false}
                                             : party_key(r, party);
    if (k.qkd) {
      ks.bits.push_back(*k.qkd);
      ks.origins.push_back(KeyOrigin::Qkd);
    }
    if (k.kljn) {
      ks.bits.push_back(*k.kljn);
      ks.origins.push_back(KeyOrigin::Kljn);
    }
  }
  return ks;
}

// Everything a passive eavesdropper gets from one round: the line level
// and, when the line was sampled, the raw wire record.
struct EveRoundView {
  NoiseLevel level;
  std::optional<EveView> wire;
};

inline EveRoundView eve_view(const ProtocolRound& r) {
  if (!r.kljn) throw UsageError("eve_view: BB84 rounds have no KLJN line");
  EveRoundView v{r.kljn->noise_level, std::nullopt};
  if (r.kljn->observation) v.wire = wiretap(*r.kljn->observation);
  return v;
}

}  // namespace hqk
