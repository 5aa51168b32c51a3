#include <doctest.h>

#include <poa/classify.hpp>
#include <poa/deciders.hpp>
#include <poa/nfa.hpp>
#include <poa/oracle.hpp>
#include <poa/random_automata.hpp>

#include <cstdint>
#include <string>
#include <vector>

using namespace poa;

namespace {

// Unary automaton accepting even-length words.
Nfa parity() {
  Nfa a;
  add_state(a, "even");
  add_state(a, "odd");
  add_symbol(a, "a");
  add_transition(a, 0, 0, 1);
  add_transition(a, 1, 0, 0);
  mark_initial(a, 0);
  mark_accepting(a, 0);
  return a;
}

Word unary_word(std::size_t len) { return Word(len, "a"); }

}  // namespace

TEST_CASE("universal agrees with the brute-force oracle on random automata") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 3 + int(seed % 4);
    opt.symbols = 2;
    opt.density = 0.3 + 0.1 * double(seed % 5);
    opt.complete = (seed % 2) == 0;
    Nfa a = random_automaton(opt, seed);
    CAPTURE(seed);
    Decision d = universal(a);
    auto counter = oracle_universal(a, 5);
    if (!counter.has_value()) {
      // no rejected word up to length 5: a genuine refutation must be longer
      if (!d.holds) {
        REQUIRE(d.witness.has_value());
        CHECK(d.witness->size() > 5);
        CHECK_FALSE(accepts(a, *d.witness));
      }
    } else {
      REQUIRE_FALSE(d.holds);
      REQUIRE(d.witness.has_value());
      CHECK_FALSE(accepts(a, *d.witness));
      // the witness is a shortest rejected word
      CHECK(d.witness->size() == counter->size());
    }
  }
}

TEST_CASE("universal on trivial automata") {
  // sigma* acceptor
  Nfa all;
  add_state(all, "s");
  add_symbol(all, "a");
  add_symbol(all, "b");
  add_transition(all, 0, 0, 0);
  add_transition(all, 0, 1, 0);
  mark_initial(all, 0);
  mark_accepting(all, 0);
  CHECK(universal(all).holds);

  // empty-language automaton: epsilon is the witness
  Nfa none;
  add_state(none, "s");
  add_symbol(none, "a");
  mark_initial(none, 0);
  Decision d = universal(none);
  REQUIRE_FALSE(d.holds);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->empty());
}

TEST_CASE("includes and equivalent agree with sampled membership") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 3 + int(seed % 3);
    opt.symbols = 2;
    opt.density = 0.35;
    Nfa a = random_automaton(opt, 2 * seed);
    Nfa b = random_automaton(opt, 2 * seed + 1);
    CAPTURE(seed);

    Decision inc = includes(a, b);
    bool brute_inc = true;
    Word brute_counter;
    for_each_word(a.alphabet, 5, [&](const Word& u) {
      if (accepts(a, u) && !accepts(b, u)) {
        brute_inc = false;
        brute_counter = u;
        return false;
      }
      return true;
    });
    if (!brute_inc) {
      REQUIRE_FALSE(inc.holds);
      REQUIRE(inc.witness.has_value());
      CHECK(accepts(a, *inc.witness));
      CHECK_FALSE(accepts(b, *inc.witness));
      CHECK(inc.witness->size() == brute_counter.size());
    } else if (!inc.holds) {
      REQUIRE(inc.witness.has_value());
      CHECK(inc.witness->size() > 5);
      CHECK(accepts(a, *inc.witness));
      CHECK_FALSE(accepts(b, *inc.witness));
    }

    Decision eq = equivalent(a, b);
    auto brute_eq = oracle_equivalent(a, b, 5);
    if (brute_eq.has_value()) {
      REQUIRE_FALSE(eq.holds);
      REQUIRE(eq.witness.has_value());
      CHECK(accepts(a, *eq.witness) != accepts(b, *eq.witness));
    } else if (!eq.holds) {
      REQUIRE(eq.witness.has_value());
      CHECK(eq.witness->size() > 5);
      CHECK(accepts(a, *eq.witness) != accepts(b, *eq.witness));
    }
  }
}

TEST_CASE("equivalence is reflexive and respects determinization") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 4;
    opt.symbols = 2;
    Nfa a = random_automaton(opt, seed);
    CAPTURE(seed);
    CHECK(equivalent(a, a).holds);
    CHECK(equivalent(a, determinize(a)).holds);
    CHECK(includes(a, determinize(a)).holds);
    CHECK(includes(determinize(a), a).holds);
  }
}

TEST_CASE("includes requires equal alphabet sets") {
  Nfa a;
  add_state(a, "s");
  add_symbol(a, "a");
  mark_initial(a, 0);
  mark_accepting(a, 0);
  add_transition(a, 0, 0, 0);  // L(a) = a*
  Nfa b;
  add_state(b, "s");
  add_symbol(b, "b");
  mark_initial(b, 0);
  mark_accepting(b, 0);
  CHECK_THROWS_AS(includes(a, b), InputError);
  // pad_alphabet reconciles the mismatch
  Nfa a2 = pad_alphabet(a, b.alphabet);
  Nfa b2 = pad_alphabet(b, a.alphabet);
  Decision d = includes(a2, b2);
  CHECK_FALSE(d.holds);  // "a" in L(a2) but not in L(b2)
}

TEST_CASE("exploration budgets raise BudgetError") {
  Nfa a = parity();
  ExploreLimits tiny;
  tiny.max_macrostates = 1;
  CHECK_THROWS_AS(universal(a, tiny), BudgetError);
  // self-equivalence never refutes, so the search must visit every pair
  CHECK_THROWS_AS(equivalent(a, a, tiny), BudgetError);
  ExploreLimits enough;
  enough.max_macrostates = 64;
  CHECK_FALSE(universal(a, enough).holds);
}

TEST_CASE("BigCount parses decimal strings of any size") {
  CHECK(BigCount::from_uint(0).bits.empty());
  CHECK(BigCount::from_decimal("0").bits.empty());
  auto five = BigCount::from_uint(5);
  CHECK(five.bits == std::vector<bool>{true, false, true});
  CHECK(BigCount::from_decimal("5").bits == five.bits);
  // 2^64 needs bit 64
  auto big = BigCount::from_decimal("18446744073709551616");
  REQUIRE(big.bits.size() == 65);
  CHECK(big.bits[64]);
  for (int i = 0; i < 64; ++i) CHECK_FALSE(big.bits[i]);
  CHECK_THROWS_AS(BigCount::from_decimal(""), InputError);
  CHECK_THROWS_AS(BigCount::from_decimal("12x"), InputError);
  CHECK_THROWS_AS(BigCount::from_decimal("-3"), InputError);
}

TEST_CASE("unary_power_image matches stepwise simulation") {
  Nfa p = parity();
  for (std::uint64_t k = 0; k <= 20; ++k) {
    MacroState direct = post_image(p, p.initial, unary_word(k));
    CHECK(unary_power_image(p, k) == direct);
    CHECK(unary_power_image(p, BigCount::from_uint(k)) == direct);
  }
  // decimal exponent with ~30 digits: parity of 10^30 is even
  auto huge = BigCount::from_decimal("1000000000000000000000000000000");
  CHECK(unary_power_image(p, huge) == MacroState{0});

  // nondeterministic unary automaton with a dead branch
  Nfa a;
  add_state(a, "s0");
  add_state(a, "s1");
  add_state(a, "s2");
  add_symbol(a, "a");
  add_transition(a, 0, 0, 1);
  add_transition(a, 0, 0, 2);
  add_transition(a, 2, 0, 2);
  mark_initial(a, 0);
  for (std::uint64_t k = 0; k <= 8; ++k)
    CHECK(unary_power_image(a, k) == post_image(a, a.initial, unary_word(k)));

  Nfa two;
  add_state(two, "s");
  add_symbol(two, "a");
  add_symbol(two, "b");
  mark_initial(two, 0);
  CHECK_THROWS_AS(unary_power_image(two, 3), InputError);
}

TEST_CASE("unary_eventual_behavior finds preperiod and period") {
  Nfa p = parity();
  EventualBehavior ev = unary_eventual_behavior(p);
  CHECK(ev.preperiod == 0);
  CHECK(ev.period == 2);
  REQUIRE(ev.accepting.size() == 2);
  CHECK(ev.accepting[0]);
  CHECK_FALSE(ev.accepting[1]);

  // three-step tail into a fixed accepting sink
  Nfa t;
  add_state(t, "s0");
  add_state(t, "s1");
  add_state(t, "s2");
  add_state(t, "sink");
  add_symbol(t, "a");
  add_transition(t, 0, 0, 1);
  add_transition(t, 1, 0, 2);
  add_transition(t, 2, 0, 3);
  add_transition(t, 3, 0, 3);
  mark_initial(t, 0);
  mark_accepting(t, 3);
  EventualBehavior ev2 = unary_eventual_behavior(t);
  CHECK(ev2.preperiod == 3);
  CHECK(ev2.period == 1);
  REQUIRE(ev2.accepting.size() == 4);
  CHECK_FALSE(ev2.accepting[0]);
  CHECK_FALSE(ev2.accepting[1]);
  CHECK_FALSE(ev2.accepting[2]);
  CHECK(ev2.accepting[3]);

  // profile matches direct membership for random unary automata
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomAutomatonOptions opt;
    opt.states = 5;
    opt.symbols = 1;
    opt.density = 0.4;
    Nfa a = random_automaton(opt, seed);
    CAPTURE(seed);
    EventualBehavior ev3 = unary_eventual_behavior(a);
    const std::string& sym = a.alphabet[0];
    for (std::size_t i = 0; i < ev3.preperiod + ev3.period; ++i)
      CHECK(bool(ev3.accepting[i]) == accepts(a, Word(i, sym)));
    // periodicity: index preperiod repeats at preperiod + period
    CHECK(bool(ev3.accepting[ev3.preperiod]) ==
          accepts(a, Word(ev3.preperiod + ev3.period, sym)));
  }
}
