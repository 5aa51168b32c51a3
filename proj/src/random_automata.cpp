#include "poa/random_automata.hpp"

#include <random>

#include "poa/classify.hpp"

namespace poa {

namespace {

Nfa generate(const RandomAutomatonOptions& opt, std::mt19937_64& rng) {
  Nfa a;
  for (int i = 0; i < opt.symbols; ++i) add_symbol(a, "a" + std::to_string(i));
  for (int i = 0; i < opt.states; ++i) add_state(a, "s" + std::to_string(i));
  std::bernoulli_distribution pick(opt.density);
  std::bernoulli_distribution acc(opt.accepting_density);

  for (int q = 0; q < opt.states; ++q) {
    for (int sym = 0; sym < opt.symbols; ++sym) {
      int lo = opt.partially_ordered ? q : 0;
      std::vector<int> targets;
      for (int r = lo; r < opt.states; ++r)
        if (pick(rng)) targets.push_back(r);
      if (targets.empty() && opt.complete) {
        std::uniform_int_distribution<int> any(lo, opt.states - 1);
        targets.push_back(any(rng));
      }
      if (opt.deterministic && targets.size() > 1) {
        std::uniform_int_distribution<size_t> one(0, targets.size() - 1);
        targets = {targets[one(rng)]};
      }
      if (opt.self_loop_deterministic) {
        // A chosen self-loop suppresses the other targets.
        bool self = false;
        for (int r : targets) self = self || r == q;
        if (self) targets = {q};
      }
      for (int r : targets) add_transition(a, q, sym, r);
    }
  }

  if (opt.deterministic) {
    std::uniform_int_distribution<int> any(0, opt.states - 1);
    mark_initial(a, opt.partially_ordered ? 0 : any(rng));
  } else {
    for (int q = 0; q < opt.states; ++q)
      if (pick(rng)) mark_initial(a, q);
    if (a.initial.empty()) {
      std::uniform_int_distribution<int> any(
          0, opt.partially_ordered ? 0 : opt.states - 1);
      mark_initial(a, any(rng));
    }
  }
  for (int q = 0; q < opt.states; ++q)
    if (acc(rng)) mark_accepting(a, q);
  return a;
}

}  // namespace

Nfa random_automaton(const RandomAutomatonOptions& opt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Nfa a = generate(opt, rng);
    if (opt.nonempty_language && is_empty(a).empty) continue;
    return a;
  }
  throw InputError("random_automaton: options admit no nonempty language");
}

Nfa random_ptnfa(const RandomAutomatonOptions& base, std::uint64_t seed) {
  RandomAutomatonOptions opt = base;
  opt.partially_ordered = true;
  opt.self_loop_deterministic = true;
  opt.complete = true;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Nfa a = generate(opt, rng);
    if (opt.nonempty_language && is_empty(a).empty) continue;
    if (is_confluent(a)) return a;
  }
  throw InputError("random_ptnfa: no confluent sample found");
}

}  // namespace poa
