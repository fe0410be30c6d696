#include "causal/presets.hpp"

#include <array>
#include <functional>
#include <stdexcept>

namespace causal::presets {

namespace {

using Bits3 = std::array<std::size_t, 3>;

std::vector<PartySpec> three_bit_parties() { return {{"R", 2, 2}, {"S", 2, 2}, {"T", 2, 2}}; }

// Builds a three-party bit process from P(i | o).
ClassicalProcess three_party(const std::function<Rational(const Bits3& i, const Bits3& o)>& p) {
  RationalMatrix t(8, 8);
  for (std::size_t ii = 0; ii < 8; ++ii) {
    for (std::size_t oo = 0; oo < 8; ++oo) {
      const Bits3 i{ii >> 2 & 1, ii >> 1 & 1, ii & 1};
      const Bits3 o{oo >> 2 & 1, oo >> 1 & 1, oo & 1};
      t.at(ii, oo) = p(i, o);
    }
  }
  return ClassicalProcess(three_bit_parties(), std::move(t));
}

bool is_cycle(const Bits3& i, const Bits3& o, std::size_t flip) {
  return i[0] == (o[2] ^ flip) && i[1] == (o[0] ^ flip) && i[2] == (o[1] ^ flip);
}

ConditionalDistribution two_party_bits(const std::function<Rational(std::size_t x, std::size_t y, std::size_t a,
                                                                    std::size_t b)>& p) {
  RationalMatrix t(4, 4);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) t.at(x * 2 + y, a * 2 + b) = p(x, y, a, b);
  return ConditionalDistribution({2, 2}, {2, 2}, std::move(t));
}

}  // namespace

ClassicalProcess circular_mixture() {
  return three_party([](const Bits3& i, const Bits3& o) {
    Rational p;
    if (is_cycle(i, o, 0)) p += Rational(1, 2);
    if (is_cycle(i, o, 1)) p += Rational(1, 2);
    return p;
  });
}

ClassicalProcess majority() {
  return three_party([](const Bits3& i, const Bits3& o) {
    const bool maj = o[0] + o[1] + o[2] >= 2;
    if (!maj) return Rational(is_cycle(i, o, 0) ? 1 : 0);
    const bool hit = i[0] == (o[1] ^ 1) && i[1] == (o[2] ^ 1) && i[2] == (o[0] ^ 1);
    return Rational(hit ? 1 : 0);
  });
}

ClassicalProcess identity_chain() {
  return three_party([](const Bits3& i, const Bits3& o) {
    return Rational(i[0] == 0 && i[1] == o[0] && i[2] == o[1] ? 1 : 0);
  });
}

ClassicalProcess cyclic_identity() {
  return three_party([](const Bits3& i, const Bits3& o) { return Rational(is_cycle(i, o, 0) ? 1 : 0); });
}

ClassicalProcess cyclic_flip() {
  return three_party([](const Bits3& i, const Bits3& o) { return Rational(is_cycle(i, o, 1) ? 1 : 0); });
}

ClassicalProcess perturbed_mixture() {
  return three_party([](const Bits3& i, const Bits3& o) {
    Rational p;
    if (is_cycle(i, o, 0)) p += Rational(51, 100);
    if (is_cycle(i, o, 1)) p += Rational(49, 100);
    return p;
  });
}

ClassicalProcess two_channel() {
  RationalMatrix t(4, 4);
  // i_R = o_S and i_S = o_R.
  for (std::size_t oR = 0; oR < 2; ++oR)
    for (std::size_t oS = 0; oS < 2; ++oS) t.at(oS * 2 + oR, oR * 2 + oS) = 1;
  return ClassicalProcess({{"R", 2, 2}, {"S", 2, 2}}, std::move(t));
}

ClassicalProcess identity_loop() { return ClassicalProcess({{"R", 2, 2}}, RationalMatrix::identity(2)); }

ConditionalDistribution one_way_signaling() {
  return two_party_bits([](std::size_t x, std::size_t, std::size_t, std::size_t b) {
    return x == b ? Rational(1, 2) : Rational(0);
  });
}

ConditionalDistribution two_way_signaling() {
  return two_party_bits([](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    return Rational(x == b && y == a ? 1 : 0);
  });
}

ConditionalDistribution uniform_noise() {
  return two_party_bits([](std::size_t, std::size_t, std::size_t, std::size_t) { return Rational(1, 4); });
}

std::vector<std::string> process_names() {
  return {"circular-mixture", "majority",          "identity-chain", "cyclic-identity",
          "cyclic-flip",      "perturbed-mixture", "two-channel",    "identity-loop"};
}

std::vector<std::string> distribution_names() { return {"one-way-signaling", "two-way-signaling", "uniform-noise"}; }

ClassicalProcess process(std::string_view name) {
  if (name == "circular-mixture") return circular_mixture();
  if (name == "majority") return majority();
  if (name == "identity-chain") return identity_chain();
  if (name == "cyclic-identity") return cyclic_identity();
  if (name == "cyclic-flip") return cyclic_flip();
  if (name == "perturbed-mixture") return perturbed_mixture();
  if (name == "two-channel") return two_channel();
  if (name == "identity-loop") return identity_loop();
  throw std::invalid_argument("unknown process preset '" + std::string(name) + "'");
}

ConditionalDistribution distribution(std::string_view name) {
  if (name == "one-way-signaling") return one_way_signaling();
  if (name == "two-way-signaling") return two_way_signaling();
  if (name == "uniform-noise") return uniform_noise();
  throw std::invalid_argument("unknown distribution preset '" + std::string(name) + "'");
}

}  // namespace causal::presets
