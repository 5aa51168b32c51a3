#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "poa/nfa.hpp"

namespace poa {

// W(k,1) = a1^k, W(1,n) = a1..an, W(k,n) = W(k,n-1) a_n W(k-1,n); the empty
// word when k*n = 0. |W(k,n)| = C(k+n,n) - 1 and a_n occurs exactly k times.
Word w_word(int k, int n);

// Complete ptNFA with n(2k+1)+1 states over {a1..an} rejecting exactly
// w_word(k,n). States are named "(i;m)" (0 <= i <= 2k, 1 <= m <= n) and
// "max"; initial {(0;m)}, accepting {(i;m) : i < k} and max.
Nfa a_kn(int k, int n);

// Drops the unreachable middle rows (k+1..2k per column) of an a_kn output;
// the result is an rpoNFA with the same language, incomplete whenever the
// alphabet has at least two letters. Inputs that do not have the a_kn shape
// are rejected.
Nfa strip_redundant(const Nfa& a);

struct Dag {
  int n = 0;  // nodes 0..n-1
  std::vector<std::pair<int, int>> edges;
  int s = 0;
  int t = 0;
};
Dag dag_from_json(const nlohmann::json& j);

// Unary ptNFA that is universal iff t is reachable from s; otherwise the
// shortest rejected word is a^(longest path from s + 1) and a^(n-1) is
// rejected. Requires t to be a sink (its self-loop must be the only cycle).
Nfa dag_gadget(const Dag& g);

// Disjunction of conjunctions over variables 1..n; literals are signed
// indices, DIMACS style.
struct DnfFormula {
  int vars = 0;
  std::vector<std::vector<int>> conjuncts;
};
DnfFormula dnf_from_json(const nlohmann::json& j);
bool dnf_eval(const DnfFormula& f, std::uint64_t assignment);

struct Cnf3Formula {
  int vars = 0;
  std::vector<std::vector<int>> clauses;  // 1..3 literals, distinct variables
};
Cnf3Formula cnf3_from_json(const nlohmann::json& j);
bool cnf3_eval(const Cnf3Formula& f, std::uint64_t assignment);

// ptNFA over {0,1} accepting L(f) union {w : |w| != vars}; universal iff f
// is valid (a tautology).
Nfa dnf_to_ptnfa(const DnfFormula& f);

// One complete po DFA per conjunct, accepting the complement of the
// conjunct's cube; the family's intersection meets {0,1}^vars iff f is not
// valid.
std::vector<Nfa> dnf_to_podfa_family(const DnfFormula& f);

// Self-loop-deterministic poNFA over {0,1} accepting L(f){0,1}* union
// {w : |w| < vars}; piecewise testable iff f is valid.
Nfa dnf_to_rponfa(const DnfFormula& f);

// Prefixes m with per-initial-state chains of length |alphabet|*k:
// L(result) = Sigma^[k, |alphabet|k - 1] union Sigma^(|alphabet|k) L(m).
// Preserves po, self-loop determinism, completeness, determinism and the
// ptNFA property. Requires k >= 1 and L(m) nonempty.
Nfa mk_gadget(const Nfa& m, int k);

// Unary NFA (symbol "0") built on the first vars primes: residue components
// catch invalid variable encodings, chain+cycle components catch falsified
// clauses. Universal iff f is unsatisfiable; piecewise testable iff
// universal. Requires at least one clause.
Nfa cnf3_to_unary_nfa(const Cnf3Formula& f);

// Adds two fresh letters and an accepting/rejecting sink pair to a
// self-loop-deterministic poNFA with at least one initial state; the result
// is piecewise testable iff the input is universal.
Nfa pt_hardness_gadget(const Nfa& a);

struct TmSpec {
  std::vector<std::string> states;
  std::vector<std::string> tape;
  std::vector<std::string> input;  // subset of tape
  std::string blank;
  std::string q0;
  std::string qf;
  // (state, read) -> (state', write, move), move in {'L','R','S'}.
  std::map<std::pair<std::string, std::string>,
           std::tuple<std::string, std::string, char>>
      delta;
  std::uint64_t space = 0;  // usable cells 1..space
};
TmSpec tm_from_json(const nlohmann::json& j);

struct TmGadgetLimits {
  std::size_t max_states = 50000;
  std::size_t max_symbols = 512;
};

// Word-length parameter of the reduction: least n with |w_word(n,n)| >=
// 1 + |Delta|^space * (space + 1).
int tm_word_parameter(const TmSpec& m);

// Complete ptNFA over the product alphabet that rejects exactly the encoding
// of an accepting space-bounded run on x (and nothing, i.e. is universal,
// when the machine does not accept x). Deterministic machines only; the
// machine must keep its head inside cells 1..space and accept by looping in
// qf at cell 1.
Nfa tm_to_ptnfa(const TmSpec& m, const Word& x,
                const TmGadgetLimits& limits = {});

// The unique word rejected by tm_to_ptnfa(m, x) when the machine accepts x;
// raises InputError when it does not. n must be tm_word_parameter(m).
Word encode_run(const TmSpec& m, const Word& x, int n);

// Weakly connected components of the transition graph; used to check the
// reduction's component-count formula (2 * space + 9).
int weak_component_count(const Nfa& a);

}  // namespace poa
