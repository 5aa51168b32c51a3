#include "poa/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace poa {

bool is_deterministic(const Nfa& a) {
  if (a.initial.size() != 1) return false;
  for (const auto& row : a.delta)
    for (const auto& ts : row)
      if (ts.size() > 1) return false;
  return true;
}

bool is_complete(const Nfa& a) {
  if (a.num_states() == 0) return false;
  for (const auto& row : a.delta)
    for (const auto& ts : row)
      if (ts.empty()) return false;
  return true;
}

bool is_partially_ordered(const Nfa& a) {
  // Kahn's algorithm on the graph without self-loops; po iff acyclic.
  int n = a.num_states();
  std::vector<int> indeg(n, 0);
  for (int q = 0; q < n; ++q)
    for (const auto& ts : a.delta[q])
      for (int r : ts)
        if (r != q) ++indeg[r];
  std::deque<int> queue;
  for (int q = 0; q < n; ++q)
    if (indeg[q] == 0) queue.push_back(q);
  int seen = 0;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    ++seen;
    for (const auto& ts : a.delta[q])
      for (int r : ts)
        if (r != q && --indeg[r] == 0) queue.push_back(r);
  }
  return seen == n;
}

bool is_self_loop_deterministic(const Nfa& a) {
  for (int q = 0; q < a.num_states(); ++q)
    for (const auto& ts : a.delta[q])
      if (ts.size() > 1 && std::binary_search(ts.begin(), ts.end(), q))
        return false;
  return true;
}

std::vector<std::vector<int>> self_loop_alphabets(const Nfa& a) {
  std::vector<std::vector<int>> out(a.num_states());
  for (int q = 0; q < a.num_states(); ++q)
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      if (std::binary_search(a.delta[q][sym].begin(), a.delta[q][sym].end(),
                             q))
        out[q].push_back(sym);
  return out;
}

bool is_confluent(const Nfa& a) {
  int n = a.num_states();
  if (n == 0) return true;

  // Reverse adjacency per symbol.
  std::vector<std::vector<std::vector<int>>> rev(
      a.num_symbols(), std::vector<std::vector<int>>(n));
  for (int q = 0; q < n; ++q)
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      for (int r : a.delta[q][sym]) rev[sym][r].push_back(q);

  // meets[s*n+t] marks pairs joinable over the current two-letter alphabet;
  // computed as a backward closure from the diagonal in the pair graph.
  std::vector<char> meets(static_cast<size_t>(n) * n);
  std::vector<std::pair<int, int>> stack;
  for (int x = 0; x < a.num_symbols(); ++x) {
    for (int y = x; y < a.num_symbols(); ++y) {
      bool any = false;
      for (int q = 0; q < n && !any; ++q)
        any = a.delta[q][x].size() && a.delta[q][y].size() &&
              (a.delta[q][x] != a.delta[q][y] || a.delta[q][x].size() > 1);
      // Divergent pairs with s == t rejoin trivially; only genuinely distinct
      // target pairs need the closure, and those need x- and y-moves.
      std::fill(meets.begin(), meets.end(), 0);
      stack.clear();
      for (int q = 0; q < n; ++q) {
        meets[static_cast<size_t>(q) * n + q] = 1;
        stack.emplace_back(q, q);
      }
      if (any) {
        while (!stack.empty()) {
          auto [u, v] = stack.back();
          stack.pop_back();
          for (int sym : {x, y}) {
            for (int pu : rev[sym][u]) {
              for (int pv : rev[sym][v]) {
                size_t k1 = static_cast<size_t>(pu) * n + pv;
                if (!meets[k1]) {
                  meets[k1] = 1;
                  meets[static_cast<size_t>(pv) * n + pu] = 1;
                  stack.emplace_back(pu, pv);
                }
              }
            }
            if (x == y) break;
          }
        }
      }
      for (int q = 0; q < n; ++q) {
        for (int s : a.delta[q][x])
          for (int t : a.delta[q][y])
            if (!meets[static_cast<size_t>(s) * n + t]) return false;
      }
    }
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

bool is_ums(const Nfa& a) {
  if (!is_partially_ordered(a)) throw InputError("is_ums: not-partially-ordered");
  int n = a.num_states();
  auto sigma = self_loop_alphabets(a);

  // States sharing a self-loop alphabet share one union-find pass.
  std::map<std::vector<int>, std::vector<int>> groups;
  for (int q = 0; q < n; ++q) groups[sigma[q]].push_back(q);

  for (const auto& [syms, members] : groups) {
    UnionFind uf(n);
    std::vector<char> has_exit(n, 0);
    for (int q = 0; q < n; ++q) {
      for (int sym : syms) {
        for (int r : a.delta[q][sym]) {
          uf.unite(q, r);
          if (r != q) has_exit[q] = 1;
        }
      }
    }
    // A state is maximal in G(A, syms) iff it has no outgoing edge to a
    // different state; each member must be the lone maximal of its component.
    std::vector<int> maximal_count(n, 0), maximal_id(n, -1);
    for (int q = 0; q < n; ++q) {
      if (!has_exit[q]) {
        int c = uf.find(q);
        ++maximal_count[c];
        maximal_id[c] = q;
      }
    }
    for (int q : members) {
      int c = uf.find(q);
      if (maximal_count[c] != 1 || maximal_id[c] != q) return false;
    }
  }
  return true;
}

ClassificationReport classify(const Nfa& a) {
  ClassificationReport r;
  r.deterministic = is_deterministic(a);
  r.complete = is_complete(a);
  r.partially_ordered = is_partially_ordered(a);
  r.self_loop_deterministic = is_self_loop_deterministic(a);
  r.confluent = is_confluent(a);
  r.ptnfa = r.complete && r.partially_ordered && r.self_loop_deterministic &&
            r.confluent;
  if (r.partially_ordered) {
    r.ums = is_ums(a);
    r.depth = depth(a);
    if (r.complete) {
      bool by_ums = *r.ums;
      if (r.ptnfa != by_ums)
        throw std::logic_error(
            "classify: ptNFA characterizations disagree (slod+confluent=" +
            std::to_string(r.ptnfa) + ", ums=" + std::to_string(by_ums) + ")");
    }
  }
  return r;
}

nlohmann::ordered_json report_to_json(const ClassificationReport& r) {
  nlohmann::ordered_json j;
  j["deterministic"] = r.deterministic;
  j["complete"] = r.complete;
  j["partially_ordered"] = r.partially_ordered;
  j["self_loop_deterministic"] = r.self_loop_deterministic;
  j["confluent"] = r.confluent;
  j["ptnfa"] = r.ptnfa;
  j["ums"] = r.ums ? nlohmann::ordered_json(*r.ums)
                   : nlohmann::ordered_json(nullptr);
  j["depth"] = r.depth ? nlohmann::ordered_json(*r.depth)
                       : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace poa
