#include "poa/deciders.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace poa {

namespace {

void check_witness(const Nfa& a, const Word& w, bool expect) {
  if (accepts(a, w) != expect)
    throw std::logic_error("decider produced an invalid witness");
}

bool macro_accepting(const Nfa& a, const MacroState& s) {
  for (int q : s)
    if (a.is_accepting(q)) return true;
  return false;
}

}  // namespace

Decision universal(const Nfa& a, const ExploreLimits& limits) {
  // BFS over macro-states; the first non-accepting macro gives the shortest
  // rejected word.
  std::map<MacroState, int> id;
  std::vector<std::pair<int, int>> parent;  // (predecessor id, symbol)
  std::vector<MacroState> macros;
  std::deque<int> queue;

  auto intern = [&](const MacroState& s, int from, int sym) {
    auto it = id.find(s);
    if (it != id.end()) return it->second;
    if (macros.size() >= limits.max_macrostates)
      throw BudgetError("universal: macro-state budget exceeded");
    int q = static_cast<int>(macros.size());
    id.emplace(s, q);
    macros.push_back(s);
    parent.emplace_back(from, sym);
    queue.push_back(q);
    return q;
  };

  intern(a.initial, -1, -1);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    if (!macro_accepting(a, macros[cur])) {
      Word w;
      for (int i = cur; parent[i].first >= 0; i = parent[i].first)
        w.push_back(a.alphabet[parent[i].second]);
      std::reverse(w.begin(), w.end());
      check_witness(a, w, false);
      return {false, w};
    }
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      intern(step_macro(a, macros[cur], sym), cur, sym);
  }
  return {true, std::nullopt};
}

Decision includes(const Nfa& a, const Nfa& b, const ExploreLimits& limits) {
  std::vector<int> b_sym(a.num_symbols(), -1);
  if (a.num_symbols() != b.num_symbols())
    throw InputError("includes: alphabets differ");
  for (int i = 0; i < a.num_symbols(); ++i) {
    b_sym[i] = symbol_index(b, a.alphabet[i]);
    if (b_sym[i] < 0) throw InputError("includes: alphabets differ");
  }

  // Pairs (state of a, macro-state of b); a failing pair has an accepting
  // a-state and a b-macro disjoint from b's accepting states.
  std::map<MacroState, int> macro_id;
  std::vector<MacroState> macros;
  std::vector<char> macro_acc;
  auto intern_macro = [&](const MacroState& s) {
    auto it = macro_id.find(s);
    if (it != macro_id.end()) return it->second;
    int q = static_cast<int>(macros.size());
    macro_id.emplace(s, q);
    macros.push_back(s);
    macro_acc.push_back(macro_accepting(b, s) ? 1 : 0);
    return q;
  };

  std::map<std::pair<int, int>, int> pair_id;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<int, int>> parent;
  std::deque<int> queue;
  auto intern_pair = [&](int qa, int mb, int from, int sym) {
    auto key = std::make_pair(qa, mb);
    auto it = pair_id.find(key);
    if (it != pair_id.end()) return it->second;
    if (pairs.size() >= limits.max_macrostates)
      throw BudgetError("includes: pair budget exceeded");
    int q = static_cast<int>(pairs.size());
    pair_id.emplace(key, q);
    pairs.push_back(key);
    parent.emplace_back(from, sym);
    queue.push_back(q);
    return q;
  };

  int m0 = intern_macro(b.initial);
  for (int qa : a.initial) intern_pair(qa, m0, -1, -1);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    auto [qa, mb] = pairs[cur];
    if (a.is_accepting(qa) && !macro_acc[mb]) {
      Word w;
      for (int i = cur; parent[i].first >= 0; i = parent[i].first)
        w.push_back(a.alphabet[parent[i].second]);
      std::reverse(w.begin(), w.end());
      check_witness(a, w, true);
      check_witness(b, w, false);
      return {false, w};
    }
    for (int sym = 0; sym < a.num_symbols(); ++sym) {
      int nb = intern_macro(step_macro(b, macros[mb], b_sym[sym]));
      for (int ta : a.delta[qa][sym]) intern_pair(ta, nb, cur, sym);
    }
  }
  return {true, std::nullopt};
}

Decision equivalent(const Nfa& a, const Nfa& b, const ExploreLimits& limits) {
  Decision ab = includes(a, b, limits);
  if (!ab.holds) return ab;
  return includes(b, a, limits);
}

BigCount BigCount::from_uint(std::uint64_t v) {
  BigCount c;
  while (v) {
    c.bits.push_back(v & 1);
    v >>= 1;
  }
  return c;
}

BigCount BigCount::from_decimal(const std::string& s) {
  if (s.empty()) throw InputError("empty exponent");
  std::vector<int> digits;
  for (char ch : s) {
    if (ch < '0' || ch > '9')
      throw InputError("exponent '" + s + "' is not a decimal number");
    digits.push_back(ch - '0');
  }
  BigCount c;
  // Repeated halving of the decimal string emits bits little-endian.
  while (!(digits.size() == 1 && digits[0] == 0)) {
    c.bits.push_back(digits.back() % 2);
    int carry = 0;
    for (size_t i = 0; i < digits.size(); ++i) {
      int v = carry * 10 + digits[i];
      digits[i] = v / 2;
      carry = v % 2;
    }
    size_t lead = 0;
    while (lead + 1 < digits.size() && digits[lead] == 0) ++lead;
    digits.erase(digits.begin(), digits.begin() + lead);
  }
  return c;
}

namespace {

// Square boolean matrix over bitset rows.
struct BoolMatrix {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> rows;

  explicit BoolMatrix(int n)
      : n(n), words((n + 63) / 64),
        rows(static_cast<size_t>(n) * words, 0) {}
  void set(int i, int j) {
    rows[static_cast<size_t>(i) * words + j / 64] |= std::uint64_t(1)
                                                     << (j % 64);
  }
  bool get(int i, int j) const {
    return rows[static_cast<size_t>(i) * words + j / 64] >> (j % 64) & 1;
  }
  static BoolMatrix identity(int n) {
    BoolMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  BoolMatrix operator*(const BoolMatrix& o) const {
    BoolMatrix r(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (!get(i, k)) continue;
        const std::uint64_t* src = &o.rows[static_cast<size_t>(k) * words];
        std::uint64_t* dst = &r.rows[static_cast<size_t>(i) * words];
        for (int w = 0; w < words; ++w) dst[w] |= src[w];
      }
    }
    return r;
  }
};

}  // namespace

MacroState unary_power_image(const Nfa& a, const BigCount& k) {
  if (a.num_symbols() != 1)
    throw InputError("unary_power_image: alphabet is not unary");
  int n = a.num_states();
  BoolMatrix step(n);
  for (int q = 0; q < n; ++q)
    for (int r : a.delta[q][0]) step.set(q, r);

  BoolMatrix power = BoolMatrix::identity(n);
  BoolMatrix sq = step;
  for (size_t i = 0; i < k.bits.size(); ++i) {
    if (k.bits[i]) power = power * sq;
    if (i + 1 < k.bits.size()) sq = sq * sq;
  }

  std::vector<char> seen(n, 0);
  for (int q : a.initial)
    for (int r = 0; r < n; ++r)
      if (power.get(q, r)) seen[r] = 1;
  MacroState out;
  for (int r = 0; r < n; ++r)
    if (seen[r]) out.push_back(r);
  return out;
}

MacroState unary_power_image(const Nfa& a, std::uint64_t k) {
  return unary_power_image(a, BigCount::from_uint(k));
}

EventualBehavior unary_eventual_behavior(const Nfa& a,
                                         const ExploreLimits& limits) {
  if (a.num_symbols() != 1)
    throw InputError("unary_eventual_behavior: alphabet is not unary");
  std::map<MacroState, size_t> seen_at;
  std::vector<char> profile;
  MacroState cur = a.initial;
  for (size_t i = 0;; ++i) {
    auto it = seen_at.find(cur);
    if (it != seen_at.end()) {
      EventualBehavior out;
      out.preperiod = it->second;
      out.period = i - it->second;
      out.accepting = std::move(profile);
      return out;
    }
    if (i >= limits.max_macrostates)
      throw BudgetError("unary_eventual_behavior: macro-state budget exceeded");
    seen_at.emplace(cur, i);
    profile.push_back(macro_accepting(a, cur) ? 1 : 0);
    cur = step_macro(a, cur, 0);
  }
}

}  // namespace poa
