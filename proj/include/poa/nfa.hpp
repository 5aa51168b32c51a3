#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace poa {

// A word is a sequence of symbol names.
using Word = std::vector<std::string>;

// A macro-state is a sorted, duplicate-free vector of state indices.
using MacroState = std::vector<int>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input or violated precondition. CLI exit code 2.
struct InputError : Error {
  using Error::Error;
};

// Exploration or construction size budget exceeded. CLI exit code 3.
struct BudgetError : Error {
  using Error::Error;
};

// Nondeterministic finite automaton over named states and symbols.
// States and symbols are interned: the string vectors fix declaration order,
// all other fields hold indices into them.
struct Nfa {
  std::string name;
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::vector<int> initial;    // sorted state indices
  std::vector<int> accepting;  // sorted state indices
  // delta[q][a] = sorted vector of target state indices.
  std::vector<std::vector<std::vector<int>>> delta;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_symbols() const { return static_cast<int>(alphabet.size()); }
  bool is_initial(int q) const;
  bool is_accepting(int q) const;
  const std::vector<int>& targets(int q, int a) const { return delta[q][a]; }
};

// Symbol names must be nonempty and contain no whitespace or double quotes.
void validate_symbol_name(const std::string& s);
// State names must be nonempty and contain no double quotes.
void validate_state_name(const std::string& s);

// Builders. add_state/add_symbol reject duplicates; add_transition is
// idempotent and keeps target lists sorted.
int add_state(Nfa& a, const std::string& name);
int add_symbol(Nfa& a, const std::string& name);
void add_transition(Nfa& a, int src, int sym, int dst);
void mark_initial(Nfa& a, int q);
void mark_accepting(Nfa& a, int q);

// Lookup; returns -1 when absent.
int state_index(const Nfa& a, const std::string& name);
int symbol_index(const Nfa& a, const std::string& name);

// Translates a word to symbol indices; throws InputError on unknown symbols.
std::vector<int> word_symbols(const Nfa& a, const Word& w);

// One synchronous step of the subset construction.
MacroState step_macro(const Nfa& a, const MacroState& s, int sym);

// Set of states reachable from macro-state s under word w.
MacroState post_image(const Nfa& a, const MacroState& s, const Word& w);
// Name-level convenience: unknown state names throw InputError.
std::vector<std::string> post_image_names(const Nfa& a,
                                          const std::vector<std::string>& s,
                                          const Word& w);

bool accepts(const Nfa& a, const Word& w);

// Subset construction restricted to reachable macro-states. Output states are
// named "{q1,q2}" with member names in declaration order; the empty macro is
// "{}". Output is deterministic and complete over the same alphabet.
Nfa determinize(const Nfa& a);

// Moore partition refinement on the reachable part. Requires a deterministic,
// complete input; output states are named m0, m1, ... in breadth-first order.
Nfa minimize(const Nfa& d);

// Flips acceptance. Requires a deterministic, complete input.
Nfa complement(const Nfa& d);

// Synchronous product recognizing the intersection. Requires equal alphabet
// sets; pair states are named "(p,q)" and only reachable pairs are kept.
Nfa product_intersection(const Nfa& a, const Nfa& b);

struct Emptiness {
  bool empty = true;
  std::optional<Word> witness;  // shortest accepted word when nonempty
};
Emptiness is_empty(const Nfa& a);

// Number of transitions on a longest simple path from an initial state,
// ignoring self-loops. Requires a partially ordered automaton.
int depth(const Nfa& a);

// Copy of a with the listed symbols appended to the alphabet (those already
// present are kept in place); no transitions are added.
Nfa pad_alphabet(const Nfa& a, const std::vector<std::string>& symbols);

// Names of the states in a macro-state, in index order.
std::vector<std::string> macro_names(const Nfa& a, const MacroState& s);
MacroState macro_of(const Nfa& a, const std::vector<std::string>& names);

}  // namespace poa
