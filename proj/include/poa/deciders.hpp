#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poa/nfa.hpp"

namespace poa {

struct Decision {
  bool holds = false;
  std::optional<Word> witness;  // shortest counterexample when !holds
};

// Caps on distinct macro-states (or state pairs) created during exploration.
struct ExploreLimits {
  std::size_t max_macrostates = std::size_t(1) << 20;
};

// L(a) = Sigma*? Witness: shortest rejected word.
Decision universal(const Nfa& a, const ExploreLimits& limits = {});

// L(a) subset of L(b)? Explores pairs (state of a, macro-state of b), i.e.
// the product of a with the determinized complement of b built on the fly.
// Witness: shortest word accepted by a and rejected by b. Alphabets must be
// equal as sets (pad_alphabet reconciles benign mismatches beforehand).
Decision includes(const Nfa& a, const Nfa& b, const ExploreLimits& limits = {});

// L(a) = L(b)? Witness from the failing inclusion.
Decision equivalent(const Nfa& a, const Nfa& b,
                    const ExploreLimits& limits = {});

// Nonnegative integer of arbitrary size, held as little-endian bits.
struct BigCount {
  std::vector<bool> bits;  // bits[i] = coefficient of 2^i; empty means 0
  static BigCount from_uint(std::uint64_t v);
  // Decimal digit strings only; anything else is an InputError.
  static BigCount from_decimal(const std::string& s);
};

// Set of states reachable from the initial states by exactly k letters of a
// unary automaton, via boolean-matrix squaring. Requires |alphabet| = 1.
MacroState unary_power_image(const Nfa& a, const BigCount& k);
MacroState unary_power_image(const Nfa& a, std::uint64_t k);

// Macro-state trajectory of a unary automaton: acceptance of a^0, a^1, ... is
// eventually periodic; profile covers indices 0 .. preperiod + period - 1.
struct EventualBehavior {
  std::size_t preperiod = 0;
  std::size_t period = 1;
  std::vector<char> accepting;
};
EventualBehavior unary_eventual_behavior(const Nfa& a,
                                         const ExploreLimits& limits = {});

}  // namespace poa
