#include <doctest.h>

#include <poa/classify.hpp>
#include <poa/json_io.hpp>
#include <poa/nfa.hpp>
#include <poa/oracle.hpp>
#include <poa/random_automata.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace poa;

namespace {

std::string fixture(const std::string& name) {
  return std::string(POA_FIXTURE_DIR) + "/" + name;
}

// Reference predicates, written as directly off the definitions as possible.

bool ref_deterministic(const Nfa& a) {
  if (a.initial.size() != 1) return false;
  for (int q = 0; q < a.num_states(); ++q)
    for (int s = 0; s < a.num_symbols(); ++s)
      if (a.targets(q, s).size() > 1) return false;
  return true;
}

bool ref_complete(const Nfa& a) {
  if (a.num_states() == 0) return false;
  for (int q = 0; q < a.num_states(); ++q)
    for (int s = 0; s < a.num_symbols(); ++s)
      if (a.targets(q, s).empty()) return false;
  return true;
}

// Cycle through >= 2 states, found by DFS over the one-step relation with
// self-loops removed.
bool ref_partially_ordered(const Nfa& a) {
  int n = a.num_states();
  std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
  std::function<bool(int)> dfs = [&](int q) {
    color[q] = 1;
    for (int s = 0; s < a.num_symbols(); ++s)
      for (int t : a.targets(q, s)) {
        if (t == q) continue;
        if (color[t] == 1) return false;
        if (color[t] == 0 && !dfs(t)) return false;
      }
    color[q] = 2;
    return true;
  };
  for (int q = 0; q < n; ++q)
    if (color[q] == 0 && !dfs(q)) return false;
  return true;
}

bool ref_slod(const Nfa& a) {
  for (int q = 0; q < a.num_states(); ++q)
    for (int s = 0; s < a.num_symbols(); ++s) {
      const auto& ts = a.targets(q, s);
      bool self = std::find(ts.begin(), ts.end(), q) != ts.end();
      if (self && ts.size() != 1) return false;
    }
  return true;
}

// Brute-force confluence: every divergence delta(q,x) x delta(q,y) must be
// rejoined by some common word w over {x,y}, i.e. the pair must reach the
// diagonal of the synchronized pair graph.
bool ref_confluent(const Nfa& a) {
  int n = a.num_states();
  auto joinable = [&](int s0, int t0, int x, int y) {
    std::set<std::pair<int, int>> seen{{s0, t0}};
    std::vector<std::pair<int, int>> stack{{s0, t0}};
    while (!stack.empty()) {
      auto [s, t] = stack.back();
      stack.pop_back();
      if (s == t) return true;
      for (int sym : {x, y}) {
        for (int s2 : a.targets(s, sym))
          for (int t2 : a.targets(t, sym))
            if (seen.insert({s2, t2}).second) stack.emplace_back(s2, t2);
        if (x == y) break;
      }
    }
    return false;
  };
  for (int q = 0; q < n; ++q)
    for (int x = 0; x < a.num_symbols(); ++x)
      for (int y = 0; y < a.num_symbols(); ++y)
        for (int p1 : a.targets(q, x))
          for (int p2 : a.targets(q, y))
            if (!joinable(p1, p2, x, y)) return false;
  return true;
}

}  // namespace

TEST_CASE("pinned classification of the three-state almost-confluent example") {
  Nfa b = load_nfa(fixture("ends_with_a.json"));
  ClassificationReport r = classify(b);
  CHECK_FALSE(r.deterministic);
  CHECK(r.complete);
  CHECK(r.partially_ordered);
  CHECK_FALSE(r.self_loop_deterministic);
  CHECK(r.confluent);
  CHECK_FALSE(r.ptnfa);
  REQUIRE(r.ums.has_value());
  CHECK_FALSE(*r.ums);
  REQUIRE(r.depth.has_value());
  CHECK(*r.depth == 2);
}

TEST_CASE("report_to_json carries every field, null where not applicable") {
  Nfa b = load_nfa(fixture("ends_with_a.json"));
  auto j = report_to_json(classify(b));
  CHECK(j["deterministic"] == false);
  CHECK(j["complete"] == true);
  CHECK(j["partially_ordered"] == true);
  CHECK(j["self_loop_deterministic"] == false);
  CHECK(j["confluent"] == true);
  CHECK(j["ptnfa"] == false);
  CHECK(j["ums"] == false);
  CHECK(j["depth"] == 2);

  // a two-state cycle is not partially ordered: ums/depth are absent
  Nfa c;
  add_state(c, "u");
  add_state(c, "v");
  add_symbol(c, "a");
  add_transition(c, 0, 0, 1);
  add_transition(c, 1, 0, 0);
  mark_initial(c, 0);
  auto j2 = report_to_json(classify(c));
  CHECK(j2["partially_ordered"] == false);
  CHECK(j2["ums"].is_null());
  CHECK(j2["depth"].is_null());
}

TEST_CASE("is_ums requires a partially ordered input") {
  Nfa c;
  add_state(c, "u");
  add_state(c, "v");
  add_symbol(c, "a");
  add_transition(c, 0, 0, 1);
  add_transition(c, 1, 0, 0);
  mark_initial(c, 0);
  CHECK_THROWS_AS(is_ums(c), InputError);
}

TEST_CASE("self_loop_alphabets lists looping symbols per state") {
  Nfa b = load_nfa(fixture("ends_with_a.json"));
  auto sl = self_loop_alphabets(b);
  REQUIRE(sl.size() == 3);
  CHECK(sl[0] == std::vector<int>{0, 1});  // state 0 loops on a and b
  CHECK(sl[1] == std::vector<int>{0});     // state 1 loops on a
  CHECK(sl[2] == std::vector<int>{0, 1});
}

TEST_CASE("predicates agree with reference definitions on random automata") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 3 + int(seed % 5);
    opt.symbols = 1 + int(seed % 3);
    opt.density = 0.2 + 0.1 * double(seed % 6);
    opt.partially_ordered = (seed % 2) == 0;
    opt.complete = (seed % 3) == 0;
    opt.self_loop_deterministic = (seed % 4) == 0;
    Nfa a = random_automaton(opt, seed);
    CAPTURE(seed);
    CHECK(is_deterministic(a) == ref_deterministic(a));
    CHECK(is_complete(a) == ref_complete(a));
    CHECK(is_partially_ordered(a) == ref_partially_ordered(a));
    CHECK(is_self_loop_deterministic(a) == ref_slod(a));
    CHECK(is_confluent(a) == ref_confluent(a));
    // classify() cross-validates the two ptNFA characterizations internally;
    // running it on arbitrary inputs is itself the assertion.
    ClassificationReport r = classify(a);
    CHECK(r.ptnfa == (r.complete && r.partially_ordered &&
                      r.self_loop_deterministic && r.confluent));
  }
}

TEST_CASE("requested random options actually hold") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 5;
    opt.symbols = 2;
    opt.partially_ordered = true;
    opt.self_loop_deterministic = true;
    opt.complete = true;
    Nfa a = random_automaton(opt, seed);
    CAPTURE(seed);
    CHECK(is_partially_ordered(a));
    CHECK(is_self_loop_deterministic(a));
    CHECK(is_complete(a));

    Nfa p = random_ptnfa(opt, seed);
    CHECK(classify(p).ptnfa);

    opt.deterministic = true;
    Nfa d = random_automaton(opt, seed);
    CHECK(is_deterministic(d));
  }
}

TEST_CASE("determinism implies self-loop determinism and confluence on po DFAs") {
  // on deterministic complete po automata, ums must equal confluence
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 6;
    opt.symbols = 2;
    opt.partially_ordered = true;
    opt.deterministic = true;
    opt.complete = true;
    Nfa d = random_automaton(opt, seed);
    CAPTURE(seed);
    REQUIRE(is_deterministic(d));
    CHECK(is_self_loop_deterministic(d));
    ClassificationReport r = classify(d);
    REQUIRE(r.ums.has_value());
    CHECK(*r.ums == r.confluent);
  }
}
