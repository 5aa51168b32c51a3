#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poa/deciders.hpp"
#include "poa/nfa.hpp"

namespace poa {

// Is u a (scattered) subword of v?
bool is_subword(const Word& u, const Word& v);

// Downward-closed set of subwords of length <= k, canonically represented by
// its antichain of maximal elements in length-lexicographic order.
struct SubwordSet {
  int k = 0;
  std::vector<Word> antichain;
};

SubwordSet subwords_k(const Word& w, int k);
// Full downward closure, length-lexicographically sorted.
std::vector<Word> downward_closure(const SubwordSet& s);
// Simon's congruence: u ~_k v iff they have the same subwords of length <= k.
bool sim_k(const Word& u, const Word& v, int k);

// Deterministic transition structure whose states are the reachable
// SubwordSet values; states are created on demand. Internally words are
// packed into 64-bit keys, which bounds the alphabet and k at 15 (far beyond
// desk scale; exceeding either raises BudgetError).
class KAbstraction {
 public:
  KAbstraction(std::vector<std::string> alphabet, int k);

  int k_bound() const { return k_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int initial() const { return 0; }  // the set {epsilon}
  int step(int state, int sym);
  SubwordSet set_of(int state) const;
  std::size_t size() const { return states_.size(); }

 private:
  struct State {
    std::vector<std::uint64_t> full;  // downward closure, sorted
    std::vector<int> succ;            // per symbol, -1 until computed
  };
  int intern(std::vector<std::uint64_t> full);

  std::vector<std::string> alphabet_;
  int k_;
  std::vector<State> states_;
  std::map<std::vector<std::uint64_t>, int> index_;  // keyed by antichain
};

// Witness pair for non-k-piecewise-testability: u ~_k v with exactly one of
// them accepted.
struct KptWitness {
  Word u;
  Word v;
  int k = 0;
};

struct PtResult {
  bool holds = false;
  Nfa min_dfa;
  // Valid when the minimal DFA is partially ordered; unique-maximal-state and
  // confluence coincide on DFAs and both are checked.
  bool min_dfa_partially_ordered = false;
  bool min_dfa_ums = false;
  bool min_dfa_confluent = false;
};

// Piecewise testability of L(a): the minimal DFA must be partially ordered
// and have the unique-maximal-state property.
PtResult is_pt(const Nfa& a);

struct KptResult {
  bool holds = false;
  std::optional<KptWitness> witness;
};

// k-piecewise testability via breadth-first product of the k-abstraction
// with the minimal DFA: a subword set reached with both an accepting and a
// rejecting DFA state refutes, and the first words reaching each side form
// the witness. The limit caps distinct product pairs.
KptResult is_kpt(const Nfa& a, int k, const ExploreLimits& limits = {});

// Smallest k such that L(a) is k-piecewise testable; nullopt when L(a) is not
// piecewise testable at all. Bounded by the depth of the minimal DFA.
std::optional<int> min_k(const Nfa& a, const ExploreLimits& limits = {});

// Unary k-piecewise testability: over a one-letter alphabet, L is k-PT iff
// acceptance is constant on all words of length >= k. Witnesses are single
// words w, |w| > k, whose acceptance differs from that of a^k (its implied
// partner; huge witnesses beyond 10^6 letters are reported as nullopt).
Decision unary_kpt_dfa(const Nfa& d, std::uint64_t k);
Decision unary_kpt_ponfa(const Nfa& a, std::uint64_t k,
                         const ExploreLimits& limits = {});
Decision unary_kpt_nfa(const Nfa& a, std::uint64_t k,
                       const ExploreLimits& limits = {});

}  // namespace poa
