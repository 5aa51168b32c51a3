#include <doctest.h>

#include <poa/json_io.hpp>
#include <poa/nfa.hpp>
#include <poa/oracle.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace poa;

namespace {

// Words containing the factor "ab", as a 3-state NFA.
Nfa sample_nfa() {
  Nfa a;
  a.name = "sample";
  int s0 = add_state(a, "p");
  int s1 = add_state(a, "q");
  int s2 = add_state(a, "r");
  int xa = add_symbol(a, "a");
  int xb = add_symbol(a, "b");
  add_transition(a, s0, xa, s0);
  add_transition(a, s0, xb, s0);
  add_transition(a, s0, xa, s1);
  add_transition(a, s1, xb, s2);
  add_transition(a, s2, xa, s2);
  add_transition(a, s2, xb, s2);
  mark_initial(a, s0);
  mark_accepting(a, s2);
  return a;
}

Word w(std::initializer_list<const char*> syms) {
  Word out;
  for (auto* s : syms) out.emplace_back(s);
  return out;
}

}  // namespace

TEST_CASE("builders intern names and reject duplicates") {
  Nfa a;
  CHECK(add_state(a, "x") == 0);
  CHECK(add_state(a, "y") == 1);
  CHECK(add_symbol(a, "a") == 0);
  CHECK_THROWS_AS(add_state(a, "x"), InputError);
  CHECK_THROWS_AS(add_symbol(a, "a"), InputError);
  CHECK_THROWS_AS(add_state(a, ""), InputError);
  CHECK_THROWS_AS(add_symbol(a, "a b"), InputError);
  CHECK_THROWS_AS(add_symbol(a, "a\"b"), InputError);
  CHECK(state_index(a, "y") == 1);
  CHECK(state_index(a, "z") == -1);
  CHECK(symbol_index(a, "a") == 0);
  CHECK(symbol_index(a, "b") == -1);
}

TEST_CASE("add_transition is idempotent and keeps targets sorted") {
  Nfa a;
  add_state(a, "s0");
  add_state(a, "s1");
  add_state(a, "s2");
  add_symbol(a, "a");
  add_transition(a, 0, 0, 2);
  add_transition(a, 0, 0, 1);
  add_transition(a, 0, 0, 2);
  CHECK(a.targets(0, 0) == std::vector<int>{1, 2});
}

TEST_CASE("word_symbols and post_image") {
  Nfa a = sample_nfa();
  CHECK(word_symbols(a, w({"a", "b"})) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(word_symbols(a, w({"c"})), InputError);

  MacroState from{0};
  CHECK(post_image(a, from, w({"a"})) == MacroState{0, 1});
  CHECK(post_image(a, from, w({"a", "b"})) == MacroState{0, 2});
  CHECK(post_image(a, from, w({"b"})) == MacroState{0});
  CHECK(post_image_names(a, {"p"}, w({"a"})) ==
        std::vector<std::string>{"p", "q"});
  CHECK_THROWS_AS(post_image_names(a, {"nope"}, w({})), InputError);
}

TEST_CASE("accepts matches the contains-ab language") {
  Nfa a = sample_nfa();
  CHECK_FALSE(accepts(a, w({})));
  CHECK_FALSE(accepts(a, w({"a"})));
  CHECK_FALSE(accepts(a, w({"b", "a"})));
  CHECK(accepts(a, w({"a", "b"})));
  CHECK(accepts(a, w({"a", "a", "b", "a"})));
  CHECK(accepts(a, w({"b", "a", "b"})));
  // brute check against the definition on every word up to length 6
  for_each_word(a.alphabet, 6, [&](const Word& u) {
    bool has_ab = false;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
      if (u[i] == "a" && u[i + 1] == "b") has_ab = true;
    CHECK(accepts(a, u) == has_ab);
    return true;
  });
}

TEST_CASE("determinize is deterministic, complete, and language-preserving") {
  Nfa a = sample_nfa();
  Nfa d = determinize(a);
  CHECK(d.initial.size() == 1);
  for (int q = 0; q < d.num_states(); ++q)
    for (int s = 0; s < d.num_symbols(); ++s)
      CHECK(d.targets(q, s).size() == 1);
  // macro names follow declaration order; every macro here contains p
  CHECK(d.states[0] == "{p}");
  bool has_pq = std::find(d.states.begin(), d.states.end(), "{p,q}") !=
                d.states.end();
  CHECK(has_pq);
  CHECK(oracle_equivalent(a, d, 7) == std::nullopt);
}

TEST_CASE("determinize of an automaton with no initial states") {
  Nfa a;
  add_state(a, "s");
  add_symbol(a, "a");
  mark_accepting(a, 0);
  Nfa d = determinize(a);
  CHECK(d.num_states() == 1);
  CHECK(d.states[0] == "{}");
  CHECK_FALSE(accepts(d, w({})));
  CHECK_FALSE(accepts(d, w({"a"})));
}

TEST_CASE("minimize reaches the Myhill-Nerode bound on contains-ab") {
  Nfa d = determinize(sample_nfa());
  Nfa m = minimize(d);
  // residuals: nothing seen / pending a / accepted
  CHECK(m.num_states() == 3);
  CHECK(oracle_equivalent(m, d, 7) == std::nullopt);
  // minimizing twice is stable
  CHECK(minimize(m).num_states() == 3);
  CHECK_THROWS_AS(minimize(sample_nfa()), InputError);
}

TEST_CASE("complement flips membership pointwise") {
  Nfa a = sample_nfa();
  Nfa d = determinize(a);
  Nfa c = complement(d);
  for_each_word(a.alphabet, 6, [&](const Word& u) {
    CHECK(accepts(c, u) == !accepts(a, u));
    return true;
  });
  CHECK_THROWS_AS(complement(a), InputError);
}

TEST_CASE("product_intersection recognizes the intersection") {
  Nfa a = sample_nfa();  // contains factor ab
  // ends in b
  Nfa b;
  add_state(b, "u");
  add_state(b, "v");
  add_symbol(b, "a");
  add_symbol(b, "b");
  add_transition(b, 0, 0, 0);
  add_transition(b, 0, 1, 0);
  add_transition(b, 0, 1, 1);
  mark_initial(b, 0);
  mark_accepting(b, 1);
  Nfa p = product_intersection(a, b);
  for_each_word(a.alphabet, 6, [&](const Word& u) {
    CHECK(accepts(p, u) == (accepts(a, u) && accepts(b, u)));
    return true;
  });
  CHECK(p.states[0].front() == '(');

  Nfa other;
  add_state(other, "z");
  add_symbol(other, "c");
  mark_initial(other, 0);
  CHECK_THROWS_AS(product_intersection(a, other), InputError);
}

TEST_CASE("is_empty finds the shortest accepted word") {
  Nfa a = sample_nfa();
  Emptiness e = is_empty(a);
  CHECK_FALSE(e.empty);
  REQUIRE(e.witness.has_value());
  CHECK(*e.witness == w({"a", "b"}));

  Nfa dead;
  add_state(dead, "s");
  add_symbol(dead, "a");
  add_transition(dead, 0, 0, 0);
  mark_initial(dead, 0);
  Emptiness e2 = is_empty(dead);
  CHECK(e2.empty);
  CHECK_FALSE(e2.witness.has_value());
}

TEST_CASE("depth counts non-self-loop transitions on a longest path") {
  Nfa a;
  add_state(a, "x0");
  add_state(a, "x1");
  add_state(a, "x2");
  add_symbol(a, "a");
  add_transition(a, 0, 0, 1);
  add_transition(a, 1, 0, 2);
  add_transition(a, 2, 0, 2);
  mark_initial(a, 0);
  CHECK(depth(a) == 2);

  // unreachable long chain does not count
  Nfa b = a;
  int y0 = add_state(b, "y0");
  int y1 = add_state(b, "y1");
  int y2 = add_state(b, "y2");
  int y3 = add_state(b, "y3");
  add_transition(b, y0, 0, y1);
  add_transition(b, y1, 0, y2);
  add_transition(b, y2, 0, y3);
  CHECK(depth(b) == 2);

  // cycles other than self-loops are rejected
  Nfa c;
  add_state(c, "u");
  add_state(c, "v");
  add_symbol(c, "a");
  add_transition(c, 0, 0, 1);
  add_transition(c, 1, 0, 0);
  mark_initial(c, 0);
  CHECK_THROWS_AS(depth(c), InputError);
}

TEST_CASE("pad_alphabet appends missing symbols without transitions") {
  Nfa a = sample_nfa();
  Nfa p = pad_alphabet(a, {"b", "c", "a", "d"});
  CHECK(p.alphabet == std::vector<std::string>{"a", "b", "c", "d"});
  for (int q = 0; q < p.num_states(); ++q) {
    CHECK(p.targets(q, 2).empty());
    CHECK(p.targets(q, 3).empty());
  }
  for_each_word(a.alphabet, 5, [&](const Word& u) {
    CHECK(accepts(p, u) == accepts(a, u));
    return true;
  });
}

TEST_CASE("macro_names and macro_of round-trip") {
  Nfa a = sample_nfa();
  MacroState s{0, 2};
  auto names = macro_names(a, s);
  CHECK(names == std::vector<std::string>{"p", "r"});
  CHECK(macro_of(a, names) == s);
}

TEST_CASE("json round-trip preserves the automaton and canonical text is stable") {
  Nfa a = sample_nfa();
  auto j = nfa_to_json(a);
  Nfa b = nfa_from_json(j);
  CHECK(b.name == a.name);
  CHECK(b.alphabet == a.alphabet);
  CHECK(b.states == a.states);
  CHECK(b.initial == a.initial);
  CHECK(b.accepting == a.accepting);
  CHECK(b.delta == a.delta);

  std::string text = nfa_to_canonical_string(a);
  Nfa c = nfa_from_string(text);
  CHECK(nfa_to_canonical_string(c) == text);
  // canonical transitions are sorted by (source, symbol, target) names
  auto t = nfa_to_json(a)["transitions"];
  auto key = [](const nlohmann::json& e) {
    return std::make_tuple(e[0].get<std::string>(), e[1].get<std::string>(),
                           e[2].get<std::string>());
  };
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(key(t[i - 1]) < key(t[i]));
}

TEST_CASE("json parsing rejects malformed inputs") {
  auto parse = [](const char* s) { return nfa_from_string(s); };
  CHECK_THROWS_AS(parse("{}"), InputError);
  CHECK_THROWS_AS(parse("not json"), InputError);
  // duplicate state
  CHECK_THROWS_AS(
      parse(R"({"alphabet":["a"],"states":["s","s"],"initial":[],"accepting":[],"transitions":[]})"),
      InputError);
  // unknown state in a transition
  CHECK_THROWS_AS(
      parse(R"({"alphabet":["a"],"states":["s"],"initial":["s"],"accepting":[],"transitions":[["t","a","s"]]})"),
      InputError);
  // unknown symbol in a transition
  CHECK_THROWS_AS(
      parse(R"({"alphabet":["a"],"states":["s"],"initial":["s"],"accepting":[],"transitions":[["s","b","s"]]})"),
      InputError);
  // unknown initial state
  CHECK_THROWS_AS(
      parse(R"({"alphabet":["a"],"states":["s"],"initial":["t"],"accepting":[],"transitions":[]})"),
      InputError);
}
