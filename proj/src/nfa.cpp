#include "poa/nfa.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>

namespace poa {

namespace {

bool contains_sorted(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

void insert_sorted(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

}  // namespace

bool Nfa::is_initial(int q) const { return contains_sorted(initial, q); }
bool Nfa::is_accepting(int q) const { return contains_sorted(accepting, q); }

void validate_symbol_name(const std::string& s) {
  if (s.empty()) throw InputError("symbol name must be nonempty");
  for (char c : s) {
    if (c == '"' || std::isspace(static_cast<unsigned char>(c)))
      throw InputError("symbol name '" + s +
                       "' contains whitespace or a quote");
  }
}

void validate_state_name(const std::string& s) {
  if (s.empty()) throw InputError("state name must be nonempty");
  if (s.find('"') != std::string::npos)
    throw InputError("state name '" + s + "' contains a quote");
}

int add_state(Nfa& a, const std::string& name) {
  validate_state_name(name);
  if (state_index(a, name) >= 0)
    throw InputError("duplicate state '" + name + "'");
  a.states.push_back(name);
  a.delta.emplace_back(a.alphabet.size());
  return a.num_states() - 1;
}

int add_symbol(Nfa& a, const std::string& name) {
  validate_symbol_name(name);
  if (symbol_index(a, name) >= 0)
    throw InputError("duplicate symbol '" + name + "'");
  a.alphabet.push_back(name);
  for (auto& row : a.delta) row.emplace_back();
  return a.num_symbols() - 1;
}

void add_transition(Nfa& a, int src, int sym, int dst) {
  if (dst < 0 || dst >= a.num_states())
    throw InputError("transition target out of range");
  insert_sorted(a.delta.at(src).at(sym), dst);
}

void mark_initial(Nfa& a, int q) { insert_sorted(a.initial, q); }
void mark_accepting(Nfa& a, int q) { insert_sorted(a.accepting, q); }

int state_index(const Nfa& a, const std::string& name) {
  auto it = std::find(a.states.begin(), a.states.end(), name);
  return it == a.states.end() ? -1
                              : static_cast<int>(it - a.states.begin());
}

int symbol_index(const Nfa& a, const std::string& name) {
  auto it = std::find(a.alphabet.begin(), a.alphabet.end(), name);
  return it == a.alphabet.end() ? -1
                                : static_cast<int>(it - a.alphabet.begin());
}

std::vector<int> word_symbols(const Nfa& a, const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& s : w) {
    int i = symbol_index(a, s);
    if (i < 0) throw InputError("symbol '" + s + "' not in alphabet");
    out.push_back(i);
  }
  return out;
}

MacroState step_macro(const Nfa& a, const MacroState& s, int sym) {
  std::vector<char> seen(a.num_states(), 0);
  for (int q : s)
    for (int r : a.delta[q][sym]) seen[r] = 1;
  MacroState out;
  for (int q = 0; q < a.num_states(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

MacroState post_image(const Nfa& a, const MacroState& s, const Word& w) {
  MacroState cur = s;
  for (int sym : word_symbols(a, w)) cur = step_macro(a, cur, sym);
  return cur;
}

std::vector<std::string> post_image_names(const Nfa& a,
                                          const std::vector<std::string>& s,
                                          const Word& w) {
  return macro_names(a, post_image(a, macro_of(a, s), w));
}

bool accepts(const Nfa& a, const Word& w) {
  MacroState cur = post_image(a, a.initial, w);
  for (int q : cur)
    if (a.is_accepting(q)) return true;
  return false;
}

std::vector<std::string> macro_names(const Nfa& a, const MacroState& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (int q : s) out.push_back(a.states.at(q));
  return out;
}

MacroState macro_of(const Nfa& a, const std::vector<std::string>& names) {
  MacroState s;
  for (const auto& n : names) {
    int q = state_index(a, n);
    if (q < 0) throw InputError("state '" + n + "' not in automaton");
    insert_sorted(s, q);
  }
  return s;
}

namespace {

std::string macro_display_name(const Nfa& a, const MacroState& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += a.states[s[i]];
  }
  out += "}";
  return out;
}

}  // namespace

Nfa determinize(const Nfa& a) {
  Nfa d;
  d.name = a.name.empty() ? std::string() : a.name + "-det";
  for (const auto& s : a.alphabet) add_symbol(d, s);

  std::map<MacroState, int> id;
  std::deque<MacroState> queue;
  auto intern = [&](const MacroState& s) {
    auto it = id.find(s);
    if (it != id.end()) return it->second;
    int q = add_state(d, macro_display_name(a, s));
    bool acc = false;
    for (int m : s) acc = acc || a.is_accepting(m);
    if (acc) mark_accepting(d, q);
    id.emplace(s, q);
    queue.push_back(s);
    return q;
  };

  mark_initial(d, intern(a.initial));
  while (!queue.empty()) {
    MacroState s = queue.front();
    queue.pop_front();
    int src = id[s];
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      add_transition(d, src, sym, intern(step_macro(a, s, sym)));
  }
  return d;
}

namespace {

void require_deterministic(const Nfa& d, const char* op) {
  if (d.initial.size() != 1)
    throw InputError(std::string(op) + ": not-deterministic");
  for (const auto& row : d.delta)
    for (const auto& ts : row)
      if (ts.size() > 1)
        throw InputError(std::string(op) + ": not-deterministic");
}

void require_complete(const Nfa& d, const char* op) {
  if (d.num_states() == 0) throw InputError(std::string(op) + ": not-complete");
  for (const auto& row : d.delta)
    for (const auto& ts : row)
      if (ts.empty()) throw InputError(std::string(op) + ": not-complete");
}

}  // namespace

Nfa minimize(const Nfa& d) {
  require_deterministic(d, "minimize");
  require_complete(d, "minimize");

  // Reachable part, breadth first so block naming is deterministic.
  int n = d.num_states();
  std::vector<int> order;
  std::vector<char> reach(n, 0);
  std::deque<int> bfs{d.initial[0]};
  reach[d.initial[0]] = 1;
  while (!bfs.empty()) {
    int q = bfs.front();
    bfs.pop_front();
    order.push_back(q);
    for (int sym = 0; sym < d.num_symbols(); ++sym) {
      int r = d.delta[q][sym][0];
      if (!reach[r]) {
        reach[r] = 1;
        bfs.push_back(r);
      }
    }
  }

  // Moore refinement over the reachable states.
  std::vector<int> block(n, -1);
  for (int q : order) block[q] = d.is_accepting(q) ? 1 : 0;
  int blocks = 2;
  for (;;) {
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> next(n, -1);
    int next_blocks = 0;
    for (int q : order) {
      std::vector<int> sig{block[q]};
      for (int sym = 0; sym < d.num_symbols(); ++sym)
        sig.push_back(block[d.delta[q][sym][0]]);
      auto it = sig_to_block.find(sig);
      if (it == sig_to_block.end())
        it = sig_to_block.emplace(sig, next_blocks++).first;
      next[q] = it->second;
    }
    bool changed = next_blocks != blocks;
    if (!changed)
      for (int q : order) changed = changed || next[q] != block[q];
    block = std::move(next);
    blocks = next_blocks;
    if (!changed) break;
  }

  // Quotient automaton, blocks renamed in BFS order from the initial block.
  Nfa m;
  m.name = d.name.empty() ? std::string() : d.name + "-min";
  for (const auto& s : d.alphabet) add_symbol(m, s);
  std::vector<int> block_state(blocks, -1);
  std::vector<int> rep(blocks, -1);
  auto intern = [&](int b, int repr) {
    if (block_state[b] >= 0) return block_state[b];
    int q = add_state(m, "m" + std::to_string(m.num_states()));
    block_state[b] = q;
    rep[b] = repr;
    return q;
  };
  std::deque<int> bq{block[d.initial[0]]};
  intern(block[d.initial[0]], d.initial[0]);
  std::vector<char> visited(blocks, 0);
  visited[block[d.initial[0]]] = 1;
  while (!bq.empty()) {
    int b = bq.front();
    bq.pop_front();
    int src = block_state[b];
    if (d.is_accepting(rep[b])) mark_accepting(m, src);
    for (int sym = 0; sym < d.num_symbols(); ++sym) {
      int tb = block[d.delta[rep[b]][sym][0]];
      if (!visited[tb]) {
        visited[tb] = 1;
        intern(tb, d.delta[rep[b]][sym][0]);
        bq.push_back(tb);
      }
      add_transition(m, src, sym, block_state[tb]);
    }
  }
  mark_initial(m, block_state[block[d.initial[0]]]);
  return m;
}

Nfa complement(const Nfa& d) {
  require_deterministic(d, "complement");
  require_complete(d, "complement");
  Nfa c = d;
  c.name = d.name.empty() ? std::string() : d.name + "-comp";
  c.accepting.clear();
  for (int q = 0; q < d.num_states(); ++q)
    if (!d.is_accepting(q)) c.accepting.push_back(q);
  return c;
}

Nfa product_intersection(const Nfa& a, const Nfa& b) {
  std::vector<int> b_sym(a.num_symbols(), -1);
  if (a.num_symbols() != b.num_symbols())
    throw InputError("product: alphabets differ");
  for (int i = 0; i < a.num_symbols(); ++i) {
    b_sym[i] = symbol_index(b, a.alphabet[i]);
    if (b_sym[i] < 0) throw InputError("product: alphabets differ");
  }

  Nfa p;
  for (const auto& s : a.alphabet) add_symbol(p, s);
  std::map<std::pair<int, int>, int> id;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int qa, int qb) {
    auto key = std::make_pair(qa, qb);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    int q = add_state(p, "(" + a.states[qa] + "," + b.states[qb] + ")");
    if (a.is_accepting(qa) && b.is_accepting(qb)) mark_accepting(p, q);
    id.emplace(key, q);
    queue.push_back(key);
    return q;
  };
  for (int qa : a.initial)
    for (int qb : b.initial) mark_initial(p, intern(qa, qb));
  while (!queue.empty()) {
    auto [qa, qb] = queue.front();
    queue.pop_front();
    int src = id[{qa, qb}];
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      for (int ta : a.delta[qa][sym])
        for (int tb : b.delta[qb][b_sym[sym]])
          add_transition(p, src, sym, intern(ta, tb));
  }
  return p;
}

Emptiness is_empty(const Nfa& a) {
  // BFS over single states; parent pointers rebuild the shortest witness.
  int n = a.num_states();
  std::vector<int> par_state(n, -1), par_sym(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<int> queue;
  for (int q : a.initial) {
    seen[q] = 1;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (a.is_accepting(q)) {
      Word w;
      for (int cur = q; par_state[cur] >= 0; cur = par_state[cur])
        w.push_back(a.alphabet[par_sym[cur]]);
      std::reverse(w.begin(), w.end());
      return {false, w};
    }
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      for (int r : a.delta[q][sym])
        if (!seen[r]) {
          seen[r] = 1;
          par_state[r] = q;
          par_sym[r] = sym;
          queue.push_back(r);
        }
  }
  return {true, std::nullopt};
}

namespace {

// Topological order of the non-self-loop transition graph; empty optional
// when a cycle (other than a self-loop) exists.
std::optional<std::vector<int>> topo_order(const Nfa& a) {
  int n = a.num_states();
  std::vector<int> indeg(n, 0);
  for (int q = 0; q < n; ++q)
    for (const auto& ts : a.delta[q])
      for (int r : ts)
        if (r != q) ++indeg[r];
  std::deque<int> queue;
  for (int q = 0; q < n; ++q)
    if (indeg[q] == 0) queue.push_back(q);
  std::vector<int> order;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (const auto& ts : a.delta[q])
      for (int r : ts)
        if (r != q && --indeg[r] == 0) queue.push_back(r);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

}  // namespace

int depth(const Nfa& a) {
  auto order = topo_order(a);
  if (!order) throw InputError("depth: not-partially-ordered");
  int n = a.num_states();
  std::vector<int> dist(n, -1);
  for (int q : a.initial) dist[q] = 0;
  int best = 0;
  for (int q : *order) {
    if (dist[q] < 0) continue;
    best = std::max(best, dist[q]);
    for (const auto& ts : a.delta[q])
      for (int r : ts)
        if (r != q) dist[r] = std::max(dist[r], dist[q] + 1);
  }
  return best;
}

Nfa pad_alphabet(const Nfa& a, const std::vector<std::string>& symbols) {
  Nfa out = a;
  for (const auto& s : symbols)
    if (symbol_index(out, s) < 0) add_symbol(out, s);
  return out;
}

}  // namespace poa
