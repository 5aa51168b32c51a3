#pragma once

#include <cstdint>

#include "poa/nfa.hpp"

namespace poa {

// Seeded generator for test corpora. Same options + same seed = same
// automaton, so any failure replays from the logged seed.
struct RandomAutomatonOptions {
  int states = 4;
  int symbols = 2;
  double density = 0.35;  // chance of each possible transition
  bool partially_ordered = false;   // targets never precede the source
  bool self_loop_deterministic = false;
  bool complete = false;            // every (state, symbol) gets a target
  bool deterministic = false;       // at most one target, single initial
  double accepting_density = 0.5;
  bool nonempty_language = false;   // re-roll acceptance until L != {}
};

Nfa random_automaton(const RandomAutomatonOptions& opt, std::uint64_t seed);

// Complete rpoNFA resampled until confluent (desk-scale sizes only).
Nfa random_ptnfa(const RandomAutomatonOptions& opt, std::uint64_t seed);

}  // namespace poa
