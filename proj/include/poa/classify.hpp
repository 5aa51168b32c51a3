#pragma once

#include <json.hpp>

#include <optional>
#include <vector>

#include "poa/nfa.hpp"

namespace poa {

// |I| = 1 and at most one target per (state, symbol).
bool is_deterministic(const Nfa& a);
// At least one target for every (state, symbol).
bool is_complete(const Nfa& a);
// Every cycle is a self-loop.
bool is_partially_ordered(const Nfa& a);
// A self-loop at (q, a) forces delta(q, a) = {q}.
bool is_self_loop_deterministic(const Nfa& a);
// Every divergence delta(q,a) x delta(q,b) can be rejoined by a word
// over {a, b}.
bool is_confluent(const Nfa& a);
// Each state is the unique maximal state of its weakly connected component
// in the subgraph restricted to the state's self-loop alphabet. Requires a
// partially ordered automaton.
bool is_ums(const Nfa& a);

// Self-loop alphabet Sigma(q): symbols a with q in delta(q, a), per state.
std::vector<std::vector<int>> self_loop_alphabets(const Nfa& a);

struct ClassificationReport {
  bool deterministic = false;
  bool complete = false;
  bool partially_ordered = false;
  bool self_loop_deterministic = false;
  bool confluent = false;
  bool ptnfa = false;
  std::optional<bool> ums;   // present iff partially ordered
  std::optional<int> depth;  // present iff partially ordered
};

// Computes every predicate; the two ptNFA characterizations (complete + po +
// self-loop-deterministic + confluent vs complete + po + unique-maximal-state)
// are both evaluated and must agree, otherwise a logic error is thrown.
ClassificationReport classify(const Nfa& a);

nlohmann::ordered_json report_to_json(const ClassificationReport& r);

}  // namespace poa
