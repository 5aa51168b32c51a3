#include "poa/constructions.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "poa/classify.hpp"

namespace poa {

namespace {

using nlohmann::json;

constexpr std::uint64_t kWordBudget = 4000000;

// Saturating binomial coefficient.
std::uint64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) {
    std::uint64_t factor = static_cast<std::uint64_t>(a - b + i);
    if (r > UINT64_MAX / factor) return UINT64_MAX;
    r = r * factor / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::string sym_a(int i) { return "a" + std::to_string(i); }

void w_append(int k, int n, Word& out) {
  if (k <= 0 || n <= 0) return;
  if (n == 1) {
    out.insert(out.end(), static_cast<std::size_t>(k), sym_a(1));
    return;
  }
  if (k == 1) {
    for (int m = 1; m <= n; ++m) out.push_back(sym_a(m));
    return;
  }
  w_append(k, n - 1, out);
  out.push_back(sym_a(n));
  w_append(k - 1, n, out);
}

// Emits every transition of a_kn(k, n) as (i1, m1, letter j, i2, m2);
// column 0 stands for the max state.
template <class F>
void for_each_akn_edge(int k, int n, F&& emit) {
  for (int m = 1; m <= n; ++m) {
    for (int i = 0; i <= 2 * k; ++i)
      for (int j = 1; j < m; ++j) emit(i, m, j, i, m);  // self-loops
    for (int i = 0; i < 2 * k; ++i)
      if (i != k) emit(i, m, m, i + 1, m);  // column climb
    emit(k, m, m, 0, 0);
    emit(2 * k, m, m, 0, 0);
    for (int i = 0; i < k; ++i)  // climb forks into every older column
      for (int mp = 1; mp < m; ++mp) emit(i, m, m, i + 1, mp);
    for (int mp = 1; mp < m; ++mp)  // older columns on the new letter
      for (int i = 0; i <= 2 * k; ++i) {
        if (i < k)
          emit(i, mp, m, 0, 0);
        else
          emit(i, mp, m, k + 1, m);
      }
  }
  for (int j = 1; j <= n; ++j) emit(0, 0, j, 0, 0);  // max absorbs
}

std::string akn_state_name(int i, int m) {
  if (m == 0) return "max";
  return "(" + std::to_string(i) + ";" + std::to_string(m) + ")";
}

void check_fields(const json& j, const std::set<std::string>& allowed,
                  const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw InputError(what + ": unknown field '" + it.key() + "'");
  for (const auto& key : allowed)
    if (!j.contains(key)) throw InputError(what + ": missing field '" + key + "'");
}

long long int_field(const json& j, const std::string& key,
                    const std::string& what) {
  if (!j.at(key).is_number_integer())
    throw InputError(what + ": field '" + key + "' must be an integer");
  return j.at(key).get<long long>();
}

std::string string_field(const json& j, const std::string& key,
                         const std::string& what) {
  if (!j.at(key).is_string())
    throw InputError(what + ": field '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

std::vector<std::vector<int>> literal_lists(const json& j,
                                            const std::string& key, int vars,
                                            const std::string& what) {
  if (!j.at(key).is_array())
    throw InputError(what + ": field '" + key + "' must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& row : j.at(key)) {
    if (!row.is_array())
      throw InputError(what + ": each entry of '" + key + "' must be an array");
    std::vector<int> lits;
    std::set<int> seen_vars;
    for (const auto& lit : row) {
      if (!lit.is_number_integer())
        throw InputError(what + ": literals must be nonzero integers");
      long long v = lit.get<long long>();
      if (v == 0) throw InputError(what + ": literal 0 is not allowed");
      long long var = v < 0 ? -v : v;
      if (var > vars)
        throw InputError(what + ": literal " + std::to_string(v) +
                         " is out of range for " + std::to_string(vars) +
                         " variables");
      if (!seen_vars.insert(static_cast<int>(var)).second)
        throw InputError(what + ": a variable occurs twice in one " +
                         (key == "clauses" ? "clause" : "conjunct"));
      lits.push_back(static_cast<int>(v));
    }
    out.push_back(std::move(lits));
  }
  return out;
}

std::vector<int> first_primes(int n) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < n; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace

Word w_word(int k, int n) {
  if (k < 0 || n < 0) throw InputError("w_word: k and n must be nonnegative");
  if (k == 0 || n == 0) return {};
  std::uint64_t len = binomial(k + n, n) - 1;
  if (len > kWordBudget)
    throw BudgetError("w_word: word length " + std::to_string(len) +
                      " exceeds the budget of " + std::to_string(kWordBudget));
  Word out;
  out.reserve(len);
  w_append(k, n, out);
  return out;
}

Nfa a_kn(int k, int n) {
  if (k < 1 || n < 1) throw InputError("a_kn: k and n must be at least 1");
  std::uint64_t num_states =
      static_cast<std::uint64_t>(n) * (2 * static_cast<std::uint64_t>(k) + 1) + 1;
  if (num_states > 1000000)
    throw BudgetError("a_kn: state budget exceeded");
  Nfa a;
  a.name = "akn(" + std::to_string(k) + "," + std::to_string(n) + ")";
  for (int j = 1; j <= n; ++j) add_symbol(a, sym_a(j));
  for (int m = 1; m <= n; ++m)
    for (int i = 0; i <= 2 * k; ++i) add_state(a, akn_state_name(i, m));
  int max_id = add_state(a, "max");
  auto id = [&](int i, int m) {
    return m == 0 ? max_id : (m - 1) * (2 * k + 1) + i;
  };
  for_each_akn_edge(k, n, [&](int i1, int m1, int j, int i2, int m2) {
    add_transition(a, id(i1, m1), j - 1, id(i2, m2));
  });
  for (int m = 1; m <= n; ++m) {
    mark_initial(a, id(0, m));
    for (int i = 0; i < k; ++i) mark_accepting(a, id(i, m));
  }
  mark_accepting(a, max_id);
  return a;
}

Nfa strip_redundant(const Nfa& a) {
  int n = a.num_symbols();
  int total = a.num_states();
  if (n < 1 || total < 2 || (total - 1) % n != 0)
    throw InputError("strip_redundant: input does not have the column shape");
  int rows = (total - 1) / n;
  if (rows < 3 || rows % 2 == 0)
    throw InputError("strip_redundant: input does not have the column shape");
  int k = (rows - 1) / 2;
  Nfa ref = a_kn(k, n);
  if (a.alphabet != ref.alphabet || a.states != ref.states ||
      a.initial != ref.initial || a.accepting != ref.accepting ||
      a.delta != ref.delta)
    throw InputError("strip_redundant: input is not an unmodified a_kn output");
  Nfa out;
  out.name = a.name.empty() ? "stripped" : a.name + "-stripped";
  out.alphabet = a.alphabet;
  std::vector<int> kept(total, -1);
  for (int q = 0; q < total; ++q) {
    const std::string& name = a.states[q];
    if (name != "max") {
      int row = (q % (2 * k + 1));
      if (row > k) continue;
    }
    kept[q] = add_state(out, name);
  }
  for (int q = 0; q < total; ++q) {
    if (kept[q] < 0) continue;
    for (int s = 0; s < n; ++s)
      for (int r : a.delta[q][s])
        if (kept[r] >= 0) add_transition(out, kept[q], s, kept[r]);
  }
  for (int q : a.initial)
    if (kept[q] >= 0) mark_initial(out, kept[q]);
  for (int q : a.accepting)
    if (kept[q] >= 0) mark_accepting(out, kept[q]);
  return out;
}

Dag dag_from_json(const json& j) {
  check_fields(j, {"n", "edges", "s", "t"}, "dag");
  Dag g;
  long long n = int_field(j, "n", "dag");
  if (n < 1) throw InputError("dag: n must be at least 1");
  g.n = static_cast<int>(n);
  g.s = static_cast<int>(int_field(j, "s", "dag"));
  g.t = static_cast<int>(int_field(j, "t", "dag"));
  if (g.s < 0 || g.s >= g.n || g.t < 0 || g.t >= g.n)
    throw InputError("dag: s and t must be node indices in [0, n)");
  if (!j.at("edges").is_array())
    throw InputError("dag: field 'edges' must be an array");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw InputError("dag: each edge must be a pair of node indices");
    int u = e[0].get<int>();
    int v = e[1].get<int>();
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
      throw InputError("dag: edge endpoint out of range");
    if (seen.insert({u, v}).second) g.edges.push_back({u, v});
  }
  return g;
}

Nfa dag_gadget(const Dag& g) {
  // Acyclicity via Kahn; a self-edge counts as a cycle here.
  std::vector<int> indeg(g.n, 0);
  std::vector<std::vector<int>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    ++indeg[v];
  }
  std::vector<int> queue;
  for (int v = 0; v < g.n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  int removed = 0;
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    ++removed;
    for (int v : adj[u])
      if (--indeg[v] == 0) queue.push_back(v);
  }
  if (removed != g.n) throw InputError("dag_gadget: the graph has a cycle");
  if (!adj[g.t].empty()) throw InputError("dag_gadget: t must be a sink");

  Nfa a;
  a.name = "dag-gadget";
  add_symbol(a, "a");
  for (int v = 0; v < g.n; ++v) add_state(a, "v" + std::to_string(v));
  for (int i = 1; i < g.n; ++i) add_state(a, "f" + std::to_string(i));
  auto fid = [&](int i) { return g.n - 1 + i; };
  for (auto [u, v] : g.edges) add_transition(a, u, 0, v);
  add_transition(a, g.t, 0, g.t);
  for (int v = 0; v < g.n; ++v)
    if (v != g.t) add_transition(a, v, 0, fid(1));
  for (int i = 1; i + 1 < g.n; ++i) add_transition(a, fid(i), 0, fid(i + 1));
  if (g.n >= 2) add_transition(a, fid(g.n - 1), 0, g.t);
  mark_initial(a, g.s);
  for (int v = 0; v < g.n; ++v) mark_accepting(a, v);
  return a;
}

DnfFormula dnf_from_json(const json& j) {
  check_fields(j, {"vars", "conjuncts"}, "dnf");
  DnfFormula f;
  long long vars = int_field(j, "vars", "dnf");
  if (vars < 0 || vars > 62) throw InputError("dnf: vars must be in [0, 62]");
  f.vars = static_cast<int>(vars);
  f.conjuncts = literal_lists(j, "conjuncts", f.vars, "dnf");
  return f;
}

bool dnf_eval(const DnfFormula& f, std::uint64_t assignment) {
  for (const auto& conjunct : f.conjuncts) {
    bool ok = true;
    for (int lit : conjunct) {
      int var = lit < 0 ? -lit : lit;
      bool value = (assignment >> (var - 1)) & 1;
      if (value != (lit > 0)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

Cnf3Formula cnf3_from_json(const json& j) {
  check_fields(j, {"vars", "clauses"}, "cnf3");
  Cnf3Formula f;
  long long vars = int_field(j, "vars", "cnf3");
  if (vars < 1 || vars > 62) throw InputError("cnf3: vars must be in [1, 62]");
  f.vars = static_cast<int>(vars);
  f.clauses = literal_lists(j, "clauses", f.vars, "cnf3");
  if (f.clauses.empty())
    throw InputError("cnf3: the formula needs at least one clause");
  for (const auto& clause : f.clauses)
    if (clause.empty() || clause.size() > 3)
      throw InputError("cnf3: clauses must have 1 to 3 literals");
  return f;
}

bool cnf3_eval(const Cnf3Formula& f, std::uint64_t assignment) {
  for (const auto& clause : f.clauses) {
    bool ok = false;
    for (int lit : clause) {
      int var = lit < 0 ? -lit : lit;
      bool value = (assignment >> (var - 1)) & 1;
      if (value == (lit > 0)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

namespace {

// Letter demanded at chain level l (1-based) by a conjunct, or -1 when free.
int conjunct_letter(const std::vector<int>& conjunct, int l) {
  for (int lit : conjunct) {
    if (lit == l) return 1;
    if (lit == -l) return 0;
  }
  return -1;
}

void require_conjuncts(const DnfFormula& f, const std::string& what) {
  if (f.conjuncts.empty())
    throw InputError(what + ": the formula needs at least one conjunct");
}

}  // namespace

Nfa dnf_to_ptnfa(const DnfFormula& f) {
  require_conjuncts(f, "dnf_to_ptnfa");
  int n = f.vars;
  int m = static_cast<int>(f.conjuncts.size());
  Nfa a;
  a.name = "dnf-ptnfa";
  add_symbol(a, "0");
  add_symbol(a, "1");
  int start = add_state(a, "0");
  std::vector<std::vector<int>> q(m);
  for (int i = 0; i < m; ++i)
    for (int l = 1; l <= n; ++l)
      q[i].push_back(
          add_state(a, "q" + std::to_string(i + 1) + "_" + std::to_string(l)));
  std::vector<int> alpha;
  for (int l = 1; l <= n + 1; ++l)
    alpha.push_back(add_state(a, "alpha" + std::to_string(l)));
  auto alpha_at = [&](int l) { return alpha[l - 1]; };
  // Length track: alpha_l after l letters, looping at alpha_{n+1}.
  for (int c = 0; c < 2; ++c) {
    add_transition(a, start, c, alpha_at(1));
    for (int l = 1; l <= n; ++l) add_transition(a, alpha_at(l), c, alpha_at(l + 1));
    add_transition(a, alpha_at(n + 1), c, alpha_at(n + 1));
  }
  // Conjunct tracks: matching letters advance, mismatches fall back to the
  // length track so every state stays complete.
  for (int i = 0; i < m; ++i) {
    for (int l = 1; l <= n; ++l) {
      int src = l == 1 ? start : q[i][l - 2];
      int want = conjunct_letter(f.conjuncts[i], l);
      for (int c = 0; c < 2; ++c) {
        if (want == -1 || want == c)
          add_transition(a, src, c, q[i][l - 1]);
        else if (src != start)
          add_transition(a, src, c, alpha_at(l));
      }
    }
    if (n >= 1)
      for (int c = 0; c < 2; ++c)
        add_transition(a, q[i][n - 1], c, alpha_at(n + 1));
  }
  mark_initial(a, start);
  mark_accepting(a, start);
  if (n >= 1)
    for (int i = 0; i < m; ++i) mark_accepting(a, q[i][n - 1]);
  for (int l = 1; l <= n + 1; ++l)
    if (l != n) mark_accepting(a, alpha_at(l));
  return a;
}

std::vector<Nfa> dnf_to_podfa_family(const DnfFormula& f) {
  require_conjuncts(f, "dnf_to_podfa_family");
  int n = f.vars;
  std::vector<Nfa> family;
  for (std::size_t i = 0; i < f.conjuncts.size(); ++i) {
    Nfa a;
    a.name = "conjunct" + std::to_string(i + 1) + "-complement";
    add_symbol(a, "0");
    add_symbol(a, "1");
    std::vector<int> p;
    for (int l = 0; l <= n; ++l)
      p.push_back(add_state(a, "p" + std::to_string(l)));
    int dead = add_state(a, "dead");
    for (int l = 1; l <= n; ++l) {
      int want = conjunct_letter(f.conjuncts[i], l);
      for (int c = 0; c < 2; ++c)
        add_transition(a, p[l - 1], c, (want == -1 || want == c) ? p[l] : dead);
    }
    for (int c = 0; c < 2; ++c) {
      add_transition(a, p[n], c, dead);
      add_transition(a, dead, c, dead);
    }
    mark_initial(a, p[0]);
    for (int l = 0; l < n; ++l) mark_accepting(a, p[l]);
    mark_accepting(a, dead);
    family.push_back(std::move(a));
  }
  return family;
}

Nfa dnf_to_rponfa(const DnfFormula& f) {
  require_conjuncts(f, "dnf_to_rponfa");
  int n = f.vars;
  int m = static_cast<int>(f.conjuncts.size());
  Nfa a;
  a.name = "dnf-rponfa";
  add_symbol(a, "0");
  add_symbol(a, "1");
  int start = add_state(a, "0");
  mark_initial(a, start);
  mark_accepting(a, start);
  if (n == 0) {
    for (int c = 0; c < 2; ++c) add_transition(a, start, c, start);
    return a;
  }
  for (int i = 0; i < m; ++i) {
    std::vector<int> q;
    for (int l = 1; l <= n; ++l)
      q.push_back(
          add_state(a, "q" + std::to_string(i + 1) + "_" + std::to_string(l)));
    for (int l = 1; l <= n; ++l) {
      int src = l == 1 ? start : q[l - 2];
      int want = conjunct_letter(f.conjuncts[i], l);
      for (int c = 0; c < 2; ++c)
        if (want == -1 || want == c) add_transition(a, src, c, q[l - 1]);
    }
    for (int c = 0; c < 2; ++c) add_transition(a, q[n - 1], c, q[n - 1]);
    mark_accepting(a, q[n - 1]);
  }
  for (int l = 1; l < n; ++l) {
    int prev = l == 1 ? start : state_index(a, "alpha" + std::to_string(l - 1));
    int cur = add_state(a, "alpha" + std::to_string(l));
    for (int c = 0; c < 2; ++c) add_transition(a, prev, c, cur);
    mark_accepting(a, cur);
  }
  return a;
}

Nfa mk_gadget(const Nfa& m, int k) {
  if (k < 1) throw InputError("mk_gadget: k must be at least 1");
  if (m.num_symbols() < 1)
    throw InputError("mk_gadget: the base automaton needs a nonempty alphabet");
  if (is_empty(m).empty)
    throw InputError("mk_gadget: the base automaton accepts the empty language");
  Nfa a = m;
  a.name = (m.name.empty() ? "m" : m.name) + "-delay" + std::to_string(k);
  int chain_len = m.num_symbols() * k;
  std::vector<int> old_initial = a.initial;
  a.initial.clear();
  int j = 0;
  for (int init : old_initial) {
    ++j;
    std::vector<int> chain;
    for (int l = 1; l <= chain_len; ++l) {
      std::string name = "c" + std::to_string(j) + "_" + std::to_string(l);
      while (state_index(a, name) != -1) name += "_";
      chain.push_back(add_state(a, name));
    }
    for (int l = 0; l < chain_len; ++l) {
      int dst = l + 1 < chain_len ? chain[l + 1] : init;
      for (int s = 0; s < a.num_symbols(); ++s)
        add_transition(a, chain[l], s, dst);
    }
    mark_initial(a, chain[0]);
    for (int l = k; l < chain_len; ++l) mark_accepting(a, chain[l]);
  }
  return a;
}

Nfa cnf3_to_unary_nfa(const Cnf3Formula& f) {
  std::vector<int> primes = first_primes(f.vars);
  Nfa a;
  a.name = "cnf3-gadget";
  add_symbol(a, "a");
  // Residue components: accept counts whose residue encodes neither 0 nor 1.
  for (int v = 1; v <= f.vars; ++v) {
    int p = primes[v - 1];
    if (p < 3) continue;
    std::vector<int> cyc;
    for (int i = 0; i < p; ++i)
      cyc.push_back(add_state(a, "x" + std::to_string(v) + "_" + std::to_string(i)));
    for (int i = 0; i < p; ++i) add_transition(a, cyc[i], 0, cyc[(i + 1) % p]);
    mark_initial(a, cyc[0]);
    for (int i = 2; i < p; ++i) mark_accepting(a, cyc[i]);
  }
  // Clause components: accept counts congruent to the falsifying residues.
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& clause = f.clauses[c];
    long long period = 1;
    for (int lit : clause) period *= primes[(lit < 0 ? -lit : lit) - 1];
    long long target = -1;
    for (long long z = 0; z < period; ++z) {
      bool ok = true;
      for (int lit : clause) {
        int var = lit < 0 ? -lit : lit;
        int want = lit > 0 ? 0 : 1;  // value that falsifies the literal
        if (z % primes[var - 1] != want) {
          ok = false;
          break;
        }
      }
      if (ok) {
        target = z;
        break;
      }
    }
    if (target < 0)
      throw InputError("cnf3_to_unary_nfa: no falsifying residue exists");
    std::string base = "c" + std::to_string(c + 1) + "_";
    std::vector<int> cyc;
    for (long long i = 0; i < period; ++i)
      cyc.push_back(add_state(a, base + "r" + std::to_string(i)));
    for (long long i = 0; i < period; ++i)
      add_transition(a, cyc[i], 0, cyc[(i + 1) % period]);
    mark_accepting(a, cyc[0]);
    if (target == 0) {
      mark_initial(a, cyc[0]);
    } else {
      int prev = -1;
      for (long long i = 0; i < target; ++i) {
        int s = add_state(a, base + "s" + std::to_string(i));
        if (i == 0)
          mark_initial(a, s);
        else
          add_transition(a, prev, 0, s);
        prev = s;
      }
      add_transition(a, prev, 0, cyc[0]);
    }
  }
  return a;
}

Nfa pt_hardness_gadget(const Nfa& a) {
  if (!is_partially_ordered(a) || !is_self_loop_deterministic(a))
    throw InputError(
        "pt_hardness_gadget: input must be a self-loop-deterministic "
        "partially ordered NFA");
  if (a.initial.empty())
    throw InputError("pt_hardness_gadget: input needs an initial state");
  Nfa b = a;
  b.name = (a.name.empty() ? "a" : a.name) + "-gadget";
  std::string x = "a";
  std::string y = "b";
  for (int i = 0; symbol_index(b, x) != -1 || symbol_index(b, y) != -1; ++i) {
    x = "a" + std::to_string(i);
    y = "b" + std::to_string(i);
  }
  int sx = add_symbol(b, x);
  int sy = add_symbol(b, y);
  std::string n1 = "1";
  std::string n2 = "2";
  while (state_index(b, n1) != -1) n1 += "_";
  while (state_index(b, n2) != -1) n2 += "_";
  int acc_sink = add_state(b, n1);
  int rej_sink = add_state(b, n2);
  int old_states = a.num_states();
  for (int q = 0; q < old_states; ++q) {
    add_transition(b, q, sx, acc_sink);
    add_transition(b, q, sy, a.is_accepting(q) ? acc_sink : rej_sink);
  }
  for (int s = 0; s < b.num_symbols(); ++s) {
    add_transition(b, acc_sink, s, acc_sink);
    add_transition(b, rej_sink, s, rej_sink);
  }
  b.accepting.clear();
  mark_accepting(b, acc_sink);
  return b;
}

TmSpec tm_from_json(const json& j) {
  check_fields(j, {"states", "tape", "input", "blank", "q0", "qf", "delta", "space"},
               "tm");
  TmSpec m;
  auto read_names = [&](const char* key) {
    if (!j.at(key).is_array())
      throw InputError(std::string("tm: field '") + key + "' must be an array");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& e : j.at(key)) {
      if (!e.is_string())
        throw InputError(std::string("tm: entries of '") + key +
                         "' must be strings");
      std::string name = e.get<std::string>();
      validate_symbol_name(name);
      if (name.find(',') != std::string::npos ||
          name.find('|') != std::string::npos)
        throw InputError("tm: state and tape names must not contain ',' or '|'");
      if (!seen.insert(name).second)
        throw InputError(std::string("tm: duplicate entry in '") + key + "'");
      out.push_back(name);
    }
    if (out.empty())
      throw InputError(std::string("tm: field '") + key + "' must be nonempty");
    return out;
  };
  m.states = read_names("states");
  m.tape = read_names("tape");
  m.input = read_names("input");
  m.blank = string_field(j, "blank", "tm");
  m.q0 = string_field(j, "q0", "tm");
  m.qf = string_field(j, "qf", "tm");
  auto in_list = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  if (!in_list(m.tape, m.blank)) throw InputError("tm: blank must be a tape symbol");
  for (const auto& s : m.input)
    if (!in_list(m.tape, s))
      throw InputError("tm: input symbols must be tape symbols");
  if (!in_list(m.states, m.q0) || !in_list(m.states, m.qf))
    throw InputError("tm: q0 and qf must be states");
  if (!j.at("delta").is_array())
    throw InputError("tm: field 'delta' must be an array");
  for (const auto& e : j.at("delta")) {
    if (!e.is_array() || e.size() != 5)
      throw InputError("tm: each delta entry must be [state, read, state', write, move]");
    for (int i = 0; i < 5; ++i)
      if (!e[i].is_string()) throw InputError("tm: delta entries must be strings");
    std::string q = e[0].get<std::string>();
    std::string t = e[1].get<std::string>();
    std::string q2 = e[2].get<std::string>();
    std::string t2 = e[3].get<std::string>();
    std::string mv = e[4].get<std::string>();
    if (!in_list(m.states, q) || !in_list(m.states, q2))
      throw InputError("tm: delta uses an unknown state");
    if (!in_list(m.tape, t) || !in_list(m.tape, t2))
      throw InputError("tm: delta uses an unknown tape symbol");
    if (mv != "L" && mv != "R" && mv != "S")
      throw InputError("tm: moves must be L, R or S");
    if (!m.delta.emplace(std::make_pair(q, t), std::make_tuple(q2, t2, mv[0])).second)
      throw InputError("tm: duplicate delta entry for (" + q + ", " + t + ")");
  }
  if (!j.at("space").is_number_integer() || j.at("space").get<long long>() < 1)
    throw InputError("tm: space must be a positive integer");
  m.space = j.at("space").get<std::uint64_t>();
  return m;
}

namespace {

// Dense view of a TmSpec with qf treated as a stationary fixpoint.
struct TmTable {
  int num_states;
  int num_tape;
  int q0, qf, blank;
  std::vector<int> input;                       // tape indices
  std::vector<std::vector<int>> next, write;    // [state][tape]
  std::vector<std::vector<char>> move;
};

TmTable tm_table(const TmSpec& m) {
  TmTable t;
  t.num_states = static_cast<int>(m.states.size());
  t.num_tape = static_cast<int>(m.tape.size());
  auto state_id = [&](const std::string& s) {
    return static_cast<int>(std::find(m.states.begin(), m.states.end(), s) -
                            m.states.begin());
  };
  auto tape_id = [&](const std::string& s) {
    return static_cast<int>(std::find(m.tape.begin(), m.tape.end(), s) -
                            m.tape.begin());
  };
  t.q0 = state_id(m.q0);
  t.qf = state_id(m.qf);
  t.blank = tape_id(m.blank);
  for (const auto& s : m.input) t.input.push_back(tape_id(s));
  t.next.assign(t.num_states, std::vector<int>(t.num_tape, -1));
  t.write.assign(t.num_states, std::vector<int>(t.num_tape, -1));
  t.move.assign(t.num_states, std::vector<char>(t.num_tape, 'S'));
  for (const auto& [key, val] : m.delta) {
    int q = state_id(key.first);
    int tp = tape_id(key.second);
    t.next[q][tp] = state_id(std::get<0>(val));
    t.write[q][tp] = tape_id(std::get<1>(val));
    t.move[q][tp] = std::get<2>(val);
  }
  for (int tp = 0; tp < t.num_tape; ++tp) {
    if (t.next[t.qf][tp] == -1) {
      t.next[t.qf][tp] = t.qf;
      t.write[t.qf][tp] = tp;
      t.move[t.qf][tp] = 'S';
    } else if (t.next[t.qf][tp] != t.qf || t.write[t.qf][tp] != tp ||
               t.move[t.qf][tp] != 'S') {
      throw InputError("tm: qf must loop in place");
    }
  }
  for (int q = 0; q < t.num_states; ++q)
    for (int tp = 0; tp < t.num_tape; ++tp)
      if (t.next[q][tp] == -1)
        throw InputError("tm: the transition function must be total outside qf");
  return t;
}

// Cell indices: 0 = '#', 1 = '$', then (tape, marker) pairs where marker 0
// means no head and marker s+1 means the head in state s.
struct CellCoder {
  int num_states;
  int num_tape;
  int count() const { return 2 + num_tape * (num_states + 1); }
  int sep() const { return 0; }
  int dollar() const { return 1; }
  int cell(int tape, int marker) const {
    return 2 + tape * (num_states + 1) + marker;
  }
  bool is_cell(int c) const { return c >= 2; }
  int tape_of(int c) const { return (c - 2) / (num_states + 1); }
  int marker_of(int c) const { return (c - 2) % (num_states + 1); }
  std::string name(const TmSpec& m, int c) const {
    if (c == 0) return "#";
    if (c == 1) return "$";
    int tp = tape_of(c);
    int mk = marker_of(c);
    return m.tape[tp] + "," + (mk == 0 ? "." : m.states[mk - 1]);
  }
};

// Cell of the next configuration at the position of c2, given the window
// (c1, c2, c3) of the current one. The '$' boundary is handled by the caller.
int window_successor(const TmTable& t, const CellCoder& cc, int c1, int c2,
                     int c3) {
  if (!cc.is_cell(c2)) return c2;  // separators and dollars propagate
  int tape = cc.tape_of(c2);
  int marker = cc.marker_of(c2);
  if (marker != 0) {
    int q = marker - 1;
    int q2 = t.next[q][tape];
    int w = t.write[q][tape];
    char mv = t.move[q][tape];
    return cc.cell(w, mv == 'S' ? q2 + 1 : 0);
  }
  if (cc.is_cell(c1) && cc.marker_of(c1) != 0) {
    int q = cc.marker_of(c1) - 1;
    if (t.move[q][cc.tape_of(c1)] == 'R')
      return cc.cell(tape, t.next[q][cc.tape_of(c1)] + 1);
  }
  if (cc.is_cell(c3) && cc.marker_of(c3) != 0) {
    int q = cc.marker_of(c3) - 1;
    if (t.move[q][cc.tape_of(c3)] == 'L')
      return cc.cell(tape, t.next[q][cc.tape_of(c3)] + 1);
  }
  return cc.cell(tape, 0);
}

// Cells 1..p of the initial configuration on input x.
std::vector<int> initial_cells(const TmTable& t, const CellCoder& cc,
                               const std::vector<int>& x, int p) {
  std::vector<int> cells;
  for (int i = 1; i <= p; ++i) {
    int tape = i <= static_cast<int>(x.size()) ? x[i - 1] : t.blank;
    cells.push_back(cc.cell(tape, i == 1 ? t.q0 + 1 : 0));
  }
  return cells;
}

std::vector<int> tm_input_ids(const TmSpec& m, const TmTable& t, const Word& x) {
  std::vector<int> ids;
  for (const auto& s : x) {
    auto it = std::find(m.input.begin(), m.input.end(), s);
    if (it == m.input.end())
      throw InputError("tm: input word uses a symbol outside the input alphabet");
    ids.push_back(t.input[it - m.input.begin()]);
  }
  if (ids.size() > m.space)
    throw InputError("tm: input word longer than the space bound");
  return ids;
}

}  // namespace

int tm_word_parameter(const TmSpec& m) {
  tm_table(m);  // validates totality
  std::uint64_t delta_size =
      static_cast<std::uint64_t>(m.tape.size()) * (m.states.size() + 1);
  std::uint64_t configs = 1;
  for (std::uint64_t i = 0; i < m.space; ++i) {
    if (configs > UINT64_MAX / delta_size)
      throw BudgetError("tm: configuration count overflows");
    configs *= delta_size;
  }
  if (configs > (UINT64_MAX - 1) / (m.space + 1))
    throw BudgetError("tm: configuration count overflows");
  std::uint64_t target = 1 + configs * (m.space + 1);
  for (int n = 1; n <= 31; ++n)
    if (binomial(2 * n, n) - 1 >= target) return n;
  throw BudgetError("tm: required word parameter is out of range");
}

Nfa tm_to_ptnfa(const TmSpec& m, const Word& x, const TmGadgetLimits& limits) {
  TmTable t = tm_table(m);
  std::vector<int> input_ids = tm_input_ids(m, t, x);
  int p = static_cast<int>(m.space);
  int n = tm_word_parameter(m);
  CellCoder cc{t.num_states, t.num_tape};
  int D = cc.count();

  std::uint64_t num_symbols = static_cast<std::uint64_t>(n) * D;
  if (num_symbols > limits.max_symbols)
    throw BudgetError("tm: symbol budget exceeded (" +
                      std::to_string(num_symbols) + " > " +
                      std::to_string(limits.max_symbols) + ")");
  std::uint64_t enc = static_cast<std::uint64_t>(n) * (2 * n + 1) + 1;
  std::uint64_t dd = static_cast<std::uint64_t>(D);
  std::uint64_t tree = dd + dd * dd + dd * dd * dd * (1 + (p - 1));
  std::uint64_t est = 0;
  for (int l = 0; l <= p + 1; ++l) est += l + 2;            // length components
  for (int j = 0; j <= p + 1; ++j) est += j + 1 + enc;      // position chains
  est += enc + tree;                                        // window component
  est += enc + 1 + 2 * static_cast<std::uint64_t>(p);       // separator check
  est += enc + 1 + (p - 1) + (p + 1);                       // acceptance check
  est += enc + p + 1;                                       // tail check
  est += 3;                                                 // dollar order check
  if (est > limits.max_states)
    throw BudgetError("tm: state budget exceeded (" + std::to_string(est) +
                      " > " + std::to_string(limits.max_states) + ")");

  Nfa a;
  a.name = "tm-gadget";
  for (int i = 1; i <= n; ++i)
    for (int c = 0; c < D; ++c) add_symbol(a, sym_a(i) + "|" + cc.name(m, c));
  auto pi = [&](int i, int c) { return (i - 1) * D + c; };

  // One lifted rejector copy per component; its runs track whether the first
  // track read so far is a prefix of w_word(n, n).
  struct EncCopy {
    std::vector<std::vector<int>> col;  // col[m-1][i]
    int max = -1;
  };
  auto add_enc = [&](const std::string& prefix) {
    EncCopy e;
    e.col.assign(n, {});
    for (int mm = 1; mm <= n; ++mm)
      for (int i = 0; i <= 2 * n; ++i)
        e.col[mm - 1].push_back(add_state(a, prefix + akn_state_name(i, mm)));
    e.max = add_state(a, prefix + "max");
    auto id = [&](int i, int mm) { return mm == 0 ? e.max : e.col[mm - 1][i]; };
    for_each_akn_edge(n, n, [&](int i1, int m1, int j, int i2, int m2) {
      for (int c = 0; c < D; ++c)
        add_transition(a, id(i1, m1), pi(j, c), id(i2, m2));
    });
    for (int mm = 1; mm <= n; ++mm) {
      mark_initial(a, id(0, mm));
      for (int i = 0; i < n; ++i) mark_accepting(a, id(i, mm));
    }
    mark_accepting(a, e.max);
    return e;
  };
  // Absorbing continuation for a checker that consumed track-1 letter a_i at
  // the position it certified as consistent: on the first track of the one
  // rejected word no run from here accepts.
  auto landing = [&](const EncCopy& e, int i) { return e.col[i - 1][n + 1]; };
  // Entry edges: from every accepting rejector state whose self-loops avoid
  // a_i, branch on (a_i, cell) into a checker head.
  auto add_entries = [&](const EncCopy& e, const std::vector<int>& cells,
                         auto&& head) {
    for (int mm = 1; mm <= n; ++mm)
      for (int i = 0; i < n; ++i)
        for (int j = mm; j <= n; ++j)
          for (int c : cells) add_transition(a, e.col[mm - 1][i], pi(j, c), head(c));
  };

  std::vector<int> all_cells(D);
  for (int c = 0; c < D; ++c) all_cells[c] = c;
  std::vector<int> non_dollar;
  for (int c = 0; c < D; ++c)
    if (c != cc.dollar()) non_dollar.push_back(c);

  // Length components: one per word length 0..p+1.
  for (int l = 0; l <= p + 1; ++l) {
    std::string prefix = "len" + std::to_string(l) + ":";
    int prev = add_state(a, prefix + "0");
    mark_initial(a, prev);
    for (int r = 1; r <= l; ++r) {
      int cur = add_state(a, prefix + std::to_string(r));
      for (int s = 0; s < a.num_symbols(); ++s) add_transition(a, prev, s, cur);
      prev = cur;
    }
    mark_accepting(a, prev);
    int sink = add_state(a, prefix + "sink");
    for (int s = 0; s < a.num_symbols(); ++s) {
      add_transition(a, prev, s, sink);
      add_transition(a, sink, s, sink);
    }
  }

  // Position chains: the word must carry '#', the initial configuration and
  // '#' again at positions 0..p+1.
  std::vector<int> init_cells = initial_cells(t, cc, input_ids, p);
  std::vector<int> expected(p + 2, cc.sep());
  for (int r = 1; r <= p; ++r) expected[r] = init_cells[r - 1];
  for (int j = 0; j <= p + 1; ++j) {
    std::string prefix = "pos" + std::to_string(j) + ":";
    EncCopy e = add_enc(prefix);
    int prev = add_state(a, prefix + "d0");
    mark_initial(a, prev);
    for (int r = 1; r <= j; ++r) {
      int cur = add_state(a, prefix + "d" + std::to_string(r));
      for (int s = 0; s < a.num_symbols(); ++s) add_transition(a, prev, s, cur);
      prev = cur;
    }
    for (int i = 1; i <= n; ++i)
      for (int c = 0; c < D; ++c)
        add_transition(a, prev, pi(i, c),
                       c == expected[j] ? landing(e, i) : e.max);
  }

  // Window component: any position whose cell p+1 steps later is neither the
  // computed successor nor '$' is flagged.
  {
    EncCopy e = add_enc("win:");
    std::vector<int> t1(D), t2(static_cast<std::size_t>(D) * D);
    for (int c = 0; c < D; ++c)
      t1[c] = add_state(a, "win:1[" + cc.name(m, c) + "]");
    for (int c1 = 0; c1 < D; ++c1)
      for (int c2 = 0; c2 < D; ++c2)
        t2[c1 * D + c2] =
            add_state(a, "win:2[" + cc.name(m, c1) + "," + cc.name(m, c2) + "]");
    for (int c1 = 0; c1 < D; ++c1)
      for (int i = 1; i <= n; ++i)
        for (int c2 = 0; c2 < D; ++c2)
          add_transition(a, t1[c1], pi(i, c2), t2[c1 * D + c2]);
    for (int c1 = 0; c1 < D; ++c1)
      for (int c2 = 0; c2 < D; ++c2) {
        for (int c3 = 0; c3 < D; ++c3) {
          std::string triple =
              cc.name(m, c1) + "," + cc.name(m, c2) + "," + cc.name(m, c3);
          int cur = add_state(a, "win:3[" + triple + "]");
          for (int i = 1; i <= n; ++i)
            add_transition(a, t2[c1 * D + c2], pi(i, c3), cur);
          for (int step = 1; step <= p - 1; ++step) {
            int nxt = add_state(a, "win:w" + std::to_string(step) + "[" + triple + "]");
            for (int s = 0; s < a.num_symbols(); ++s) add_transition(a, cur, s, nxt);
            cur = nxt;
          }
          int good = window_successor(t, cc, c1, c2, c3);
          for (int i = 1; i <= n; ++i)
            for (int c = 0; c < D; ++c)
              add_transition(a, cur, pi(i, c),
                             (c == good || c == cc.dollar()) ? landing(e, i)
                                                             : e.max);
        }
      }
    add_entries(e, all_cells, [&](int c) { return t1[c]; });
  }

  // Separator check: '#' followed by 1..p non-dollar cells and then a dollar
  // or the end of the word is a broken configuration block.
  {
    EncCopy e = add_enc("sep:");
    int u0 = add_state(a, "sep:u0");
    std::vector<int> mid, gs;
    for (int r = 1; r <= p; ++r)
      mid.push_back(add_state(a, "sep:m" + std::to_string(r)));
    for (int r = 1; r <= p; ++r)
      gs.push_back(add_state(a, "sep:g" + std::to_string(r)));
    for (int i = 1; i <= n; ++i) {
      for (int c : non_dollar) add_transition(a, u0, pi(i, c), mid[0]);
      add_transition(a, u0, pi(i, cc.dollar()), landing(e, i));
      for (int r = 0; r < p; ++r) {
        add_transition(a, mid[r], pi(i, cc.dollar()), gs[0]);
        for (int c : non_dollar)
          add_transition(a, mid[r], pi(i, c),
                         r + 1 < p ? mid[r + 1] : landing(e, i));
      }
      for (int r = 0; r < p; ++r) {
        for (int c : non_dollar) add_transition(a, gs[r], pi(i, c), landing(e, i));
        add_transition(a, gs[r], pi(i, cc.dollar()),
                       r + 1 < p ? gs[r + 1] : landing(e, i));
      }
    }
    for (int r = 0; r < p; ++r) {
      mark_accepting(a, mid[r]);
      mark_accepting(a, gs[r]);
    }
    add_entries(e, {cc.sep()}, [&](int) { return u0; });
  }

  // Acceptance check: a configuration block whose first cell is not marked
  // with qf but which is followed by '#' and only dollars must be the last
  // one of a non-accepting run.
  {
    EncCopy e = add_enc("acc:");
    int u0 = add_state(a, "acc:u0");
    int last = u0;
    for (int r = 1; r <= p - 1; ++r) {
      int cur = add_state(a, "acc:c" + std::to_string(r));
      for (int s = 0; s < a.num_symbols(); ++s) add_transition(a, last, s, cur);
      last = cur;
    }
    std::vector<int> gs;
    for (int r = 0; r <= p; ++r)
      gs.push_back(add_state(a, "acc:g" + std::to_string(r)));
    for (int i = 1; i <= n; ++i) {
      for (int c = 0; c < D; ++c)
        add_transition(a, last, pi(i, c),
                       c == cc.sep() ? gs[0] : landing(e, i));
      for (int r = 0; r <= p; ++r) {
        for (int c : non_dollar) add_transition(a, gs[r], pi(i, c), landing(e, i));
        add_transition(a, gs[r], pi(i, cc.dollar()),
                       r < p ? gs[r + 1] : landing(e, i));
      }
    }
    for (int r = 0; r <= p; ++r) mark_accepting(a, gs[r]);
    std::vector<int> not_final;
    for (int c = 0; c < D; ++c)
      if (cc.is_cell(c) && cc.marker_of(c) != t.qf + 1) not_final.push_back(c);
    add_entries(e, not_final, [&](int) { return u0; });
  }

  // Tail check: more than p trailing dollars cannot happen in a valid word.
  {
    EncCopy e = add_enc("tail:");
    std::vector<int> h;
    for (int r = 1; r <= p + 1; ++r)
      h.push_back(add_state(a, "tail:h" + std::to_string(r)));
    for (int i = 1; i <= n; ++i)
      for (int r = 0; r <= p; ++r) {
        for (int c : non_dollar) add_transition(a, h[r], pi(i, c), landing(e, i));
        add_transition(a, h[r], pi(i, cc.dollar()),
                       r < p ? h[r + 1] : landing(e, i));
      }
    mark_accepting(a, h[p]);
    add_entries(e, {cc.dollar()}, [&](int) { return h[0]; });
  }

  // Dollar order check: a dollar followed later by a non-dollar symbol.
  {
    int s0 = add_state(a, "dol:a");
    int s1 = add_state(a, "dol:b");
    int s2 = add_state(a, "dol:c");
    for (int i = 1; i <= n; ++i) {
      for (int c : non_dollar) {
        add_transition(a, s0, pi(i, c), s0);
        add_transition(a, s1, pi(i, c), s2);
      }
      add_transition(a, s0, pi(i, cc.dollar()), s1);
      add_transition(a, s1, pi(i, cc.dollar()), s1);
      for (int c = 0; c < D; ++c) add_transition(a, s2, pi(i, c), s2);
    }
    mark_initial(a, s0);
    mark_accepting(a, s2);
  }

  return a;
}

Word encode_run(const TmSpec& m, const Word& x, int n) {
  TmTable t = tm_table(m);
  std::vector<int> input_ids = tm_input_ids(m, t, x);
  if (n != tm_word_parameter(m))
    throw InputError("encode_run: n must be the reduction's word parameter");
  int p = static_cast<int>(m.space);
  CellCoder cc{t.num_states, t.num_tape};

  // Simulate the machine inside cells 1..p.
  std::vector<int> tape(p, t.blank);
  for (std::size_t i = 0; i < input_ids.size(); ++i) tape[i] = input_ids[i];
  int head = 1;
  int state = t.q0;
  std::vector<std::vector<int>> run;  // configurations as cell lists
  auto snapshot = [&]() {
    std::vector<int> cells;
    for (int i = 1; i <= p; ++i)
      cells.push_back(cc.cell(tape[i - 1], i == head ? state + 1 : 0));
    return cells;
  };
  std::set<std::vector<int>> seen;
  run.push_back(snapshot());
  while (state != t.qf) {
    if (!seen.insert(run.back()).second)
      throw InputError("encode_run: the machine does not accept the input "
                       "within its space bound");
    int read = tape[head - 1];
    int q2 = t.next[state][read];
    tape[head - 1] = t.write[state][read];
    char mv = t.move[state][read];
    if (mv == 'L') --head;
    if (mv == 'R') ++head;
    if (head < 1 || head > p)
      throw InputError("encode_run: the head left the tape region");
    state = q2;
    run.push_back(snapshot());
  }
  if (head != 1)
    throw InputError("encode_run: the machine must accept with the head at cell 1");

  Word w = w_word(n, n);
  std::uint64_t len = w.size();
  std::uint64_t configs = (len - 1) / (p + 1);
  std::uint64_t rest = (len - 1) % (p + 1);
  if (run.size() > configs)
    throw InputError("encode_run: the run exceeds the configuration budget");
  std::vector<int> track2;
  track2.reserve(len);
  track2.push_back(cc.sep());
  for (std::uint64_t i = 0; i < configs; ++i) {
    const auto& conf = i < run.size() ? run[i] : run.back();
    for (int c : conf) track2.push_back(c);
    track2.push_back(cc.sep());
  }
  for (std::uint64_t i = 0; i < rest; ++i) track2.push_back(cc.dollar());
  Word out;
  out.reserve(len);
  for (std::uint64_t i = 0; i < len; ++i)
    out.push_back(w[i] + "|" + cc.name(m, track2[i]));
  return out;
}

int weak_component_count(const Nfa& a) {
  std::vector<int> parent(a.num_states());
  for (int q = 0; q < a.num_states(); ++q) parent[q] = q;
  std::function<int(int)> find = [&](int q) {
    while (parent[q] != q) q = parent[q] = parent[parent[q]];
    return q;
  };
  for (int q = 0; q < a.num_states(); ++q)
    for (int s = 0; s < a.num_symbols(); ++s)
      for (int r : a.delta[q][s]) parent[find(q)] = find(r);
  std::set<int> roots;
  for (int q = 0; q < a.num_states(); ++q) roots.insert(find(q));
  return static_cast<int>(roots.size());
}

}  // namespace poa
