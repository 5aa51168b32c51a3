#include "poa/piecewise.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

#include "poa/classify.hpp"

namespace poa {

bool is_subword(const Word& u, const Word& v) {
  size_t i = 0;
  for (size_t j = 0; j < v.size() && i < u.size(); ++j)
    if (u[i] == v[j]) ++i;
  return i == u.size();
}

namespace {

// Length-lexicographic word order.
bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Full subword closure as a sorted set of words.
std::set<Word> closure_of(const Word& w, int k) {
  std::set<Word> full{{}};
  for (const auto& letter : w) {
    std::vector<Word> grown;
    for (const auto& u : full) {
      if (static_cast<int>(u.size()) < k) {
        Word v = u;
        v.push_back(letter);
        grown.push_back(std::move(v));
      }
    }
    full.insert(grown.begin(), grown.end());
  }
  return full;
}

std::vector<Word> maximal_words(const std::set<Word>& full) {
  // In a downward-closed set, a word is maximal iff no single-insertion
  // superword is present, i.e. it is no single-deletion subword of a member.
  std::set<Word> dominated;
  for (const auto& v : full) {
    for (size_t i = 0; i < v.size(); ++i) {
      Word u;
      u.reserve(v.size() - 1);
      for (size_t j = 0; j < v.size(); ++j)
        if (j != i) u.push_back(v[j]);
      dominated.insert(std::move(u));
    }
  }
  std::vector<Word> out;
  for (const auto& u : full)
    if (!dominated.count(u)) out.push_back(u);
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

}  // namespace

SubwordSet subwords_k(const Word& w, int k) {
  if (k < 0) throw InputError("subwords_k: k must be nonnegative");
  return SubwordSet{k, maximal_words(closure_of(w, k))};
}

std::vector<Word> downward_closure(const SubwordSet& s) {
  std::set<Word> full;
  for (const auto& m : s.antichain) {
    // All scattered subwords of m, by subset enumeration on short words and
    // incremental closure on long ones.
    std::set<Word> sub{{}};
    for (const auto& letter : m) {
      std::vector<Word> grown;
      for (const auto& u : sub) {
        Word v = u;
        v.push_back(letter);
        grown.push_back(std::move(v));
      }
      sub.insert(grown.begin(), grown.end());
    }
    full.insert(sub.begin(), sub.end());
  }
  if (full.empty()) full.insert(Word{});
  std::vector<Word> out(full.begin(), full.end());
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

bool sim_k(const Word& u, const Word& v, int k) {
  return closure_of(u, k) == closure_of(v, k);
}

// --- packed-word machinery for the k-abstraction -------------------------
//
// A word of length l <= 15 over an alphabet of at most 15 symbols is packed
// into a uint64: bits 0..3 hold l, bits 4+4i..7+4i hold letter i.

namespace {

constexpr int kPackLimit = 15;

inline int packed_len(std::uint64_t w) { return static_cast<int>(w & 15); }

inline int packed_at(std::uint64_t w, int i) {
  return static_cast<int>(w >> (4 + 4 * i) & 15);
}

inline std::uint64_t packed_append(std::uint64_t w, int sym) {
  int l = packed_len(w);
  return (w & ~std::uint64_t(15)) |
         (static_cast<std::uint64_t>(sym) << (4 + 4 * l)) |
         static_cast<std::uint64_t>(l + 1);
}

Word unpack(std::uint64_t w, const std::vector<std::string>& alphabet) {
  Word out;
  for (int i = 0; i < packed_len(w); ++i) out.push_back(alphabet[packed_at(w, i)]);
  return out;
}

// Antichain of maximal elements of a sorted downward-closed packed set.
std::vector<std::uint64_t> packed_antichain(
    const std::vector<std::uint64_t>& full) {
  std::vector<char> dominated(full.size(), 0);
  for (std::uint64_t v : full) {
    int l = packed_len(v);
    for (int i = 0; i < l; ++i) {
      std::uint64_t u = static_cast<std::uint64_t>(l - 1);
      int pos = 0;
      for (int j = 0; j < l; ++j) {
        if (j == i) continue;
        u |= static_cast<std::uint64_t>(packed_at(v, j)) << (4 + 4 * pos);
        ++pos;
      }
      auto it = std::lower_bound(full.begin(), full.end(), u);
      if (it != full.end() && *it == u) dominated[it - full.begin()] = 1;
    }
  }
  std::vector<std::uint64_t> out;
  for (size_t i = 0; i < full.size(); ++i)
    if (!dominated[i]) out.push_back(full[i]);
  return out;
}

}  // namespace

KAbstraction::KAbstraction(std::vector<std::string> alphabet, int k)
    : alphabet_(std::move(alphabet)), k_(k) {
  if (k < 0) throw InputError("k-abstraction: k must be nonnegative");
  if (k > kPackLimit)
    throw BudgetError("k-abstraction: k beyond the packed-word limit");
  if (static_cast<int>(alphabet_.size()) > kPackLimit)
    throw BudgetError("k-abstraction: alphabet beyond the packed-word limit");
  intern({std::uint64_t(0)});  // the set {epsilon}
}

int KAbstraction::intern(std::vector<std::uint64_t> full) {
  auto key = packed_antichain(full);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(states_.size());
  index_.emplace(std::move(key), id);
  states_.push_back(State{std::move(full),
                          std::vector<int>(alphabet_.size(), -1)});
  return id;
}

int KAbstraction::step(int state, int sym) {
  State& st = states_.at(state);
  if (st.succ.at(sym) >= 0) return st.succ[sym];
  std::vector<std::uint64_t> next = st.full;
  for (std::uint64_t u : st.full)
    if (packed_len(u) < k_) next.push_back(packed_append(u, sym));
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  int id = intern(std::move(next));
  // intern() may reallocate states_.
  states_[state].succ[sym] = id;
  return id;
}

SubwordSet KAbstraction::set_of(int state) const {
  SubwordSet out;
  out.k = k_;
  for (std::uint64_t u : packed_antichain(states_.at(state).full))
    out.antichain.push_back(unpack(u, alphabet_));
  std::sort(out.antichain.begin(), out.antichain.end(), word_less);
  return out;
}

// --- piecewise testability -------------------------------------------------

PtResult is_pt(const Nfa& a) {
  PtResult r;
  r.min_dfa = minimize(determinize(a));
  r.min_dfa_partially_ordered = is_partially_ordered(r.min_dfa);
  if (!r.min_dfa_partially_ordered) return r;
  r.min_dfa_ums = is_ums(r.min_dfa);
  r.min_dfa_confluent = is_confluent(r.min_dfa);
  if (r.min_dfa_ums != r.min_dfa_confluent)
    throw std::logic_error(
        "is_pt: unique-maximal-state and confluence disagree on a DFA");
  r.holds = r.min_dfa_ums;
  return r;
}

namespace {

KptResult kpt_on_dfa(const Nfa& dfa, int k, const ExploreLimits& limits) {
  KAbstraction ka(dfa.alphabet, k);

  struct Pair {
    int ks, qs;
    int parent, sym;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<int, int>> seen;
  // Per k-abstraction state: pair index first seen accepting / rejecting.
  std::map<int, int> first_acc, first_rej;
  std::deque<int> queue;

  auto word_of = [&](int idx) {
    Word w;
    for (int i = idx; pairs[i].parent >= 0; i = pairs[i].parent)
      w.push_back(dfa.alphabet[pairs[i].sym]);
    std::reverse(w.begin(), w.end());
    return w;
  };

  std::optional<KptWitness> witness;
  auto visit = [&](int ks, int qs, int parent, int sym) {
    if (witness) return;
    if (!seen.emplace(ks, qs).second) return;
    if (pairs.size() >= limits.max_macrostates)
      throw BudgetError("is_kpt: product budget exceeded");
    int idx = static_cast<int>(pairs.size());
    pairs.push_back({ks, qs, parent, sym});
    queue.push_back(idx);
    bool acc = dfa.is_accepting(qs);
    auto& mine = acc ? first_acc : first_rej;
    auto& other = acc ? first_rej : first_acc;
    if (!mine.count(ks)) mine.emplace(ks, idx);
    auto it = other.find(ks);
    if (it != other.end()) {
      // Same subword set, opposite acceptance: witness pair found.
      Word u = word_of(it->second);
      Word v = word_of(idx);
      witness = KptWitness{std::move(u), std::move(v), k};
    }
  };

  visit(ka.initial(), dfa.initial.at(0), -1, -1);
  while (!queue.empty() && !witness) {
    int cur = queue.front();
    queue.pop_front();
    for (int sym = 0; sym < dfa.num_symbols(); ++sym) {
      int ks = ka.step(pairs[cur].ks, sym);
      int qs = dfa.delta[pairs[cur].qs][sym].at(0);
      visit(ks, qs, cur, sym);
      if (witness) break;
    }
  }
  if (!witness) return {true, std::nullopt};
  return {false, std::move(witness)};
}

}  // namespace

KptResult is_kpt(const Nfa& a, int k, const ExploreLimits& limits) {
  Nfa dfa = minimize(determinize(a));
  KptResult r = kpt_on_dfa(dfa, k, limits);
  if (!r.holds) {
    // Witness sanity: congruent words with differing acceptance.
    const auto& w = *r.witness;
    if (accepts(a, w.u) == accepts(a, w.v) || !sim_k(w.u, w.v, k))
      throw std::logic_error("is_kpt: invalid witness");
  }
  return r;
}

std::optional<int> min_k(const Nfa& a, const ExploreLimits& limits) {
  PtResult pt = is_pt(a);
  if (!pt.holds) return std::nullopt;
  int bound = depth(pt.min_dfa);
  for (int k = 0; k <= bound; ++k)
    if (kpt_on_dfa(pt.min_dfa, k, limits).holds) return k;
  throw std::logic_error("min_k: no k up to the minimal DFA depth worked");
}

// --- unary deciders ---------------------------------------------------------

namespace {

constexpr std::uint64_t kWitnessCap = 1000000;

void require_unary(const Nfa& a, const char* op) {
  if (a.num_symbols() != 1)
    throw InputError(std::string(op) + ": alphabet is not unary");
}

Word unary_word(const Nfa& a, std::uint64_t len) {
  return Word(len, a.alphabet.at(0));
}

Decision unary_report(const Nfa& a, std::uint64_t k, std::uint64_t bad) {
  // a^bad differs from a^k; both have length >= k, hence the same subword
  // sets up to k.
  if (bad > kWitnessCap) return {false, std::nullopt};
  Word w = unary_word(a, bad);
  Word base = unary_word(a, k);
  if (accepts(a, w) == accepts(a, base))
    throw std::logic_error("unary k-PT decider produced an invalid witness");
  return {false, w};
}

}  // namespace

Decision unary_kpt_dfa(const Nfa& d, std::uint64_t k) {
  require_unary(d, "unary_kpt_dfa");
  if (d.initial.size() != 1)
    throw InputError("unary_kpt_dfa: not-deterministic");
  for (const auto& row : d.delta)
    if (row[0].size() > 1) throw InputError("unary_kpt_dfa: not-deterministic");

  // Acceptance must be constant on a^k .. a^(k+n); beyond k+n the (partial)
  // DFA revisits one of those states.
  std::uint64_t n = static_cast<std::uint64_t>(d.num_states());
  MacroState cur = unary_power_image(d, k);
  bool base = false;
  for (int q : cur) base = base || d.is_accepting(q);
  for (std::uint64_t i = 1; i <= n; ++i) {
    cur = step_macro(d, cur, 0);
    bool acc = false;
    for (int q : cur) acc = acc || d.is_accepting(q);
    if (acc != base) return unary_report(d, k, k + i);
  }
  return {true, std::nullopt};
}

namespace {

// Index of the first profile entry from which the profile stays constant.
std::uint64_t settle_point(const std::vector<char>& profile, size_t cycle_lo) {
  size_t d = cycle_lo;
  while (d > 0 && profile[d - 1] == profile[cycle_lo]) --d;
  return d;
}

}  // namespace

Decision unary_kpt_ponfa(const Nfa& a, std::uint64_t k,
                         const ExploreLimits& limits) {
  require_unary(a, "unary_kpt_ponfa");
  if (!is_partially_ordered(a))
    throw InputError("unary_kpt_ponfa: not-partially-ordered");

  // A unary po automaton's macro-state sequence is constant from step n on:
  // walks longer than a simple path repeat a self-loop and pump either way.
  EventualBehavior ev = unary_eventual_behavior(a, limits);
  if (ev.period != 1)
    throw std::logic_error("unary po automaton with a nontrivial period");
  std::uint64_t d = settle_point(ev.accepting, ev.preperiod);
  if (k >= d) return {true, std::nullopt};
  // Some index in (k, d] flips acceptance; find the first one.
  bool base = ev.accepting[k];
  for (std::uint64_t i = k + 1; i <= d; ++i)
    if (ev.accepting[i] != base) return unary_report(a, k, i);
  throw std::logic_error("unary_kpt_ponfa: settle point inconsistent");
}

Decision unary_kpt_nfa(const Nfa& a, std::uint64_t k,
                       const ExploreLimits& limits) {
  require_unary(a, "unary_kpt_nfa");
  EventualBehavior ev = unary_eventual_behavior(a, limits);
  std::uint64_t rho = ev.preperiod, pi = ev.period;

  auto status = [&](std::uint64_t i) -> bool {
    if (i < rho + pi) return ev.accepting[i];
    return ev.accepting[rho + (i - rho) % pi];
  };

  bool base;
  if (k >= rho + pi) {
    // Exercise the matrix path for far-out exponents and cross-check the
    // profile arithmetic.
    MacroState img = unary_power_image(a, k);
    base = false;
    for (int q : img) base = base || a.is_accepting(q);
    if (base != status(k))
      throw std::logic_error("unary_kpt_nfa: power image disagrees");
  } else {
    base = status(k);
  }

  // Every residue of the cycle occurs at some index >= k, plus any indices
  // in [k, rho) before the cycle.
  std::uint64_t hi = std::max(k, rho) + pi;
  for (std::uint64_t i = k + 1; i <= hi; ++i)
    if (status(i) != base) return unary_report(a, k, i);
  return {true, std::nullopt};
}

}  // namespace poa
