#include "poa/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "poa/classify.hpp"
#include "poa/constructions.hpp"
#include "poa/deciders.hpp"
#include "poa/dot.hpp"
#include "poa/json_io.hpp"
#include "poa/nfa.hpp"
#include "poa/oracle.hpp"
#include "poa/piecewise.hpp"
#include "poa/random_automata.hpp"

namespace poa {

namespace {

nlohmann::json read_json_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    nlohmann::json j = nlohmann::json::parse(ss.str(), nullptr, false);
    if (j.is_discarded()) throw InputError("stdin: not valid JSON");
    return j;
  }
  return load_json(path);
}

Nfa read_nfa_input(const std::string& path) {
  return nfa_from_json(read_json_input(path));
}

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

Word split_word(const std::string& text) {
  Word w;
  std::istringstream ss(text);
  std::string sym;
  while (ss >> sym) w.push_back(sym);
  return w;
}

nlohmann::ordered_json word_json(const Word& w) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : w) arr.push_back(s);
  return arr;
}

// yes/no plus witness lines (or a JSON object); returns the exit code.
int report_decision(const Decision& d, bool json, std::ostream& out) {
  if (json) {
    nlohmann::ordered_json j;
    j["holds"] = d.holds;
    j["witness"] = d.witness ? word_json(*d.witness) : nlohmann::ordered_json();
    out << j.dump(2) << "\n";
  } else {
    out << (d.holds ? "yes" : "no") << "\n";
    if (d.witness) out << join_word(*d.witness) << "\n";
  }
  return d.holds ? 0 : 1;
}

int report_kpt(bool holds, const std::optional<KptWitness>& w, bool json,
               std::ostream& out) {
  if (json) {
    nlohmann::ordered_json j;
    j["holds"] = holds;
    if (w) {
      j["witness"]["u"] = word_json(w->u);
      j["witness"]["v"] = word_json(w->v);
      j["witness"]["k"] = w->k;
    } else {
      j["witness"] = nullptr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << (holds ? "yes" : "no") << "\n";
    if (w) {
      out << join_word(w->u) << "\n";
      out << join_word(w->v) << "\n";
    }
  }
  return holds ? 0 : 1;
}

void print_automaton(const Nfa& a, std::ostream& out) {
  out << nfa_to_canonical_string(a);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Partially ordered automata and piecewise testability toolkit"};
  app.name("poa");
  app.require_subcommand(1);

  int result = 0;
  std::string file_a, file_b;
  bool json_out = false;
  int k = 0, n = 0;
  std::uint64_t big_k = 0;
  std::size_t budget = std::size_t(1) << 20;
  int max_len = 4;
  std::string algo = "auto";
  std::string input_word;
  bool strip = false, emit_run = false, dot = false;
  std::uint64_t seed = 1;
  RandomAutomatonOptions ropt;
  TmGadgetLimits tm_limits;

  auto limits = [&]() { return ExploreLimits{budget}; };

  // classify -------------------------------------------------------------
  auto* cmd_classify = app.add_subcommand("classify", "Report automaton classes");
  cmd_classify->add_option("file", file_a, "Automaton JSON (- for stdin)")
      ->required();
  cmd_classify->add_flag("--json", json_out, "JSON output");
  cmd_classify->callback([&] {
    ClassificationReport r = classify(read_nfa_input(file_a));
    if (json_out) {
      out << report_to_json(r).dump(2) << "\n";
      return;
    }
    auto line = [&](const char* key, bool v) {
      out << key << ": " << (v ? "yes" : "no") << "\n";
    };
    line("deterministic", r.deterministic);
    line("complete", r.complete);
    line("partially_ordered", r.partially_ordered);
    line("self_loop_deterministic", r.self_loop_deterministic);
    line("confluent", r.confluent);
    line("ptnfa", r.ptnfa);
    if (r.ums) line("ums", *r.ums);
    if (r.depth) out << "depth: " << *r.depth << "\n";
  });

  // decide ----------------------------------------------------------------
  auto* cmd_decide = app.add_subcommand("decide", "Run a decision procedure");
  cmd_decide->require_subcommand(1);

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--max-macrostates", budget,
                  "Abort after this many macro-states or pairs");
  };

  auto* d_universal = cmd_decide->add_subcommand("universal", "L(a) = Sigma*?");
  d_universal->add_option("file", file_a, "Automaton JSON")->required();
  d_universal->add_flag("--json", json_out, "JSON output");
  add_budget(d_universal);
  d_universal->callback([&] {
    result = report_decision(universal(read_nfa_input(file_a), limits()),
                             json_out, out);
  });

  auto* d_incl = cmd_decide->add_subcommand("incl", "L(a) subset of L(b)?");
  d_incl->add_option("file_a", file_a, "Automaton JSON for a")->required();
  d_incl->add_option("file_b", file_b, "Automaton JSON for b")->required();
  d_incl->add_flag("--json", json_out, "JSON output");
  add_budget(d_incl);
  d_incl->callback([&] {
    result = report_decision(
        includes(read_nfa_input(file_a), read_nfa_input(file_b), limits()),
        json_out, out);
  });

  auto* d_equiv = cmd_decide->add_subcommand("equiv", "L(a) = L(b)?");
  d_equiv->add_option("file_a", file_a, "Automaton JSON for a")->required();
  d_equiv->add_option("file_b", file_b, "Automaton JSON for b")->required();
  d_equiv->add_flag("--json", json_out, "JSON output");
  add_budget(d_equiv);
  d_equiv->callback([&] {
    result = report_decision(
        equivalent(read_nfa_input(file_a), read_nfa_input(file_b), limits()),
        json_out, out);
  });

  auto* d_pt = cmd_decide->add_subcommand("pt", "Is L(a) piecewise testable?");
  d_pt->add_option("file", file_a, "Automaton JSON")->required();
  d_pt->add_flag("--json", json_out, "JSON output");
  d_pt->callback([&] {
    PtResult r = is_pt(read_nfa_input(file_a));
    if (json_out) {
      nlohmann::ordered_json j;
      j["holds"] = r.holds;
      j["min_dfa_states"] = r.min_dfa.num_states();
      j["min_dfa_partially_ordered"] = r.min_dfa_partially_ordered;
      j["min_dfa_ums"] = r.min_dfa_ums;
      j["min_dfa_confluent"] = r.min_dfa_confluent;
      out << j.dump(2) << "\n";
    } else {
      out << (r.holds ? "yes" : "no") << "\n";
    }
    result = r.holds ? 0 : 1;
  });

  auto* d_kpt = cmd_decide->add_subcommand("kpt", "Is L(a) k-piecewise testable?");
  d_kpt->add_option("file", file_a, "Automaton JSON")->required();
  d_kpt->add_option("-k", k, "Piece length bound")->required();
  d_kpt->add_flag("--json", json_out, "JSON output");
  add_budget(d_kpt);
  d_kpt->callback([&] {
    KptResult r = is_kpt(read_nfa_input(file_a), k, limits());
    result = report_kpt(r.holds, r.witness, json_out, out);
  });

  auto* d_mink = cmd_decide->add_subcommand(
      "min-k", "Least k with L(a) k-piecewise testable");
  d_mink->add_option("file", file_a, "Automaton JSON")->required();
  d_mink->add_flag("--json", json_out, "JSON output");
  add_budget(d_mink);
  d_mink->callback([&] {
    std::optional<int> r = min_k(read_nfa_input(file_a), limits());
    if (json_out) {
      nlohmann::ordered_json j;
      j["piecewise_testable"] = r.has_value();
      j["min_k"] = r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json();
      out << j.dump(2) << "\n";
    } else {
      if (r)
        out << *r << "\n";
      else
        out << "none\n";
    }
    result = r ? 0 : 1;
  });

  auto* d_unary = cmd_decide->add_subcommand(
      "unary-kpt", "k-piecewise testability over a one-letter alphabet");
  d_unary->add_option("file", file_a, "Automaton JSON")->required();
  d_unary->add_option("-k", big_k, "Piece length bound")->required();
  d_unary
      ->add_option("--algo", algo,
                   "Decision procedure: auto, dfa, ponfa or nfa")
      ->check(CLI::IsMember({"auto", "dfa", "ponfa", "nfa"}));
  d_unary->add_flag("--json", json_out, "JSON output");
  add_budget(d_unary);
  d_unary->callback([&] {
    Nfa a = read_nfa_input(file_a);
    std::string chosen = algo;
    if (chosen == "auto") {
      if (is_deterministic(a))
        chosen = "dfa";
      else if (is_partially_ordered(a))
        chosen = "ponfa";
      else
        chosen = "nfa";
    }
    Decision d;
    if (chosen == "dfa")
      d = unary_kpt_dfa(a, big_k);
    else if (chosen == "ponfa")
      d = unary_kpt_ponfa(a, big_k, limits());
    else
      d = unary_kpt_nfa(a, big_k, limits());
    result = report_decision(d, json_out, out);
  });

  // gen -------------------------------------------------------------------
  auto* cmd_gen = app.add_subcommand("gen", "Build words, gadgets and samples");
  cmd_gen->require_subcommand(1);

  auto* g_wword = cmd_gen->add_subcommand("wword", "The word W(k, n)");
  g_wword->add_option("-k", k, "Piece parameter")->required();
  g_wword->add_option("-n", n, "Alphabet size")->required();
  g_wword->callback([&] { out << join_word(w_word(k, n)) << "\n"; });

  auto* g_aknn = cmd_gen->add_subcommand(
      "aknn", "Complete ptNFA rejecting exactly W(k, n)");
  g_aknn->add_option("-k", k, "Piece parameter")->required();
  g_aknn->add_option("-n", n, "Alphabet size")->required();
  g_aknn->add_flag("--strip", strip, "Drop the redundant middle rows");
  g_aknn->callback([&] {
    Nfa a = a_kn(k, n);
    print_automaton(strip ? strip_redundant(a) : a, out);
  });

  auto* g_dag = cmd_gen->add_subcommand(
      "dag", "Unary reachability gadget from a DAG description");
  g_dag->add_option("file", file_a, "DAG JSON {n, edges, s, t}")->required();
  g_dag->callback(
      [&] { print_automaton(dag_gadget(dag_from_json(read_json_input(file_a))), out); });

  auto* g_dnf_pt = cmd_gen->add_subcommand(
      "dnf-ptnfa", "ptNFA that is universal iff the DNF is a tautology");
  g_dnf_pt->add_option("file", file_a, "DNF JSON {vars, conjuncts}")->required();
  g_dnf_pt->callback(
      [&] { print_automaton(dnf_to_ptnfa(dnf_from_json(read_json_input(file_a))), out); });

  auto* g_dnf_family = cmd_gen->add_subcommand(
      "dnf-podfas", "po DFA family whose intersection tests DNF validity");
  g_dnf_family->add_option("file", file_a, "DNF JSON {vars, conjuncts}")
      ->required();
  g_dnf_family->callback([&] {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Nfa& a : dnf_to_podfa_family(dnf_from_json(read_json_input(file_a))))
      arr.push_back(nfa_to_json(a));
    out << arr.dump(2) << "\n";
  });

  auto* g_dnf_rpo = cmd_gen->add_subcommand(
      "dnf-rponfa", "rpoNFA that is piecewise testable iff the DNF is a tautology");
  g_dnf_rpo->add_option("file", file_a, "DNF JSON {vars, conjuncts}")->required();
  g_dnf_rpo->callback(
      [&] { print_automaton(dnf_to_rponfa(dnf_from_json(read_json_input(file_a))), out); });

  auto* g_mk = cmd_gen->add_subcommand(
      "mk", "Length-threshold prefix preserving the automaton class");
  g_mk->add_option("file", file_a, "Automaton JSON")->required();
  g_mk->add_option("-k", k, "Threshold parameter")->required();
  g_mk->callback([&] { print_automaton(mk_gadget(read_nfa_input(file_a), k), out); });

  auto* g_cnf3 = cmd_gen->add_subcommand(
      "cnf3-unary", "Unary NFA that is universal iff the 3CNF is unsatisfiable");
  g_cnf3->add_option("file", file_a, "CNF JSON {vars, clauses}")->required();
  g_cnf3->callback(
      [&] { print_automaton(cnf3_to_unary_nfa(cnf3_from_json(read_json_input(file_a))), out); });

  auto* g_pth = cmd_gen->add_subcommand(
      "pt-hardness", "Two fresh letters turn universality into piecewise testability");
  g_pth->add_option("file", file_a, "Self-loop-deterministic poNFA JSON")
      ->required();
  g_pth->callback(
      [&] { print_automaton(pt_hardness_gadget(read_nfa_input(file_a)), out); });

  auto* g_tm = cmd_gen->add_subcommand(
      "tm", "ptNFA rejecting exactly the encoding of an accepting run");
  g_tm->add_option("file", file_a, "Machine JSON")->required();
  g_tm->add_option("--input", input_word, "Input word, symbols separated by spaces");
  g_tm->add_flag("--emit-run", emit_run,
                 "Print the encoded run instead of the automaton");
  g_tm->add_option("--max-states", tm_limits.max_states, "State budget");
  g_tm->add_option("--max-symbols", tm_limits.max_symbols, "Symbol budget");
  g_tm->callback([&] {
    TmSpec m = tm_from_json(read_json_input(file_a));
    Word x = split_word(input_word);
    if (emit_run)
      out << join_word(encode_run(m, x, tm_word_parameter(m))) << "\n";
    else
      print_automaton(tm_to_ptnfa(m, x, tm_limits), out);
  });

  auto* g_random = cmd_gen->add_subcommand("random", "Seeded random automaton");
  g_random->add_option("--states", ropt.states, "State count");
  g_random->add_option("--symbols", ropt.symbols, "Alphabet size");
  g_random->add_option("--density", ropt.density, "Transition density");
  g_random->add_option("--accepting-density", ropt.accepting_density,
                       "Accepting state density");
  g_random->add_flag("--po", ropt.partially_ordered, "Partially ordered");
  g_random->add_flag("--slod", ropt.self_loop_deterministic,
                     "Self-loop deterministic");
  g_random->add_flag("--complete", ropt.complete, "Complete");
  g_random->add_flag("--det", ropt.deterministic, "Deterministic");
  g_random->add_flag("--nonempty", ropt.nonempty_language, "Nonempty language");
  g_random->add_option("--seed", seed, "Generator seed");
  g_random->callback([&] { print_automaton(random_automaton(ropt, seed), out); });

  auto* g_random_pt = cmd_gen->add_subcommand("random-ptnfa",
                                              "Seeded random complete ptNFA");
  g_random_pt->add_option("--states", ropt.states, "State count");
  g_random_pt->add_option("--symbols", ropt.symbols, "Alphabet size");
  g_random_pt->add_option("--density", ropt.density, "Transition density");
  g_random_pt->add_option("--accepting-density", ropt.accepting_density,
                          "Accepting state density");
  g_random_pt->add_option("--seed", seed, "Generator seed");
  g_random_pt->callback([&] { print_automaton(random_ptnfa(ropt, seed), out); });

  // oracle ----------------------------------------------------------------
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "Brute-force reference checks up to a length bound");
  cmd_oracle->require_subcommand(1);

  auto* o_universal = cmd_oracle->add_subcommand(
      "universal", "Search for a rejected word");
  o_universal->add_option("file", file_a, "Automaton JSON")->required();
  o_universal->add_option("--max-len", max_len, "Length bound");
  o_universal->add_flag("--json", json_out, "JSON output");
  o_universal->callback([&] {
    std::optional<Word> w = oracle_universal(read_nfa_input(file_a), max_len);
    Decision d{!w.has_value(), std::move(w)};
    result = report_decision(d, json_out, out);
  });

  auto* o_equiv = cmd_oracle->add_subcommand("equiv", "Search for a disagreement");
  o_equiv->add_option("file_a", file_a, "Automaton JSON for a")->required();
  o_equiv->add_option("file_b", file_b, "Automaton JSON for b")->required();
  o_equiv->add_option("--max-len", max_len, "Length bound");
  o_equiv->add_flag("--json", json_out, "JSON output");
  o_equiv->callback([&] {
    std::optional<Word> w =
        oracle_equivalent(read_nfa_input(file_a), read_nfa_input(file_b), max_len);
    Decision d{!w.has_value(), std::move(w)};
    result = report_decision(d, json_out, out);
  });

  auto* o_kpt = cmd_oracle->add_subcommand(
      "kpt", "Search for a Simon-congruent pair with differing acceptance");
  o_kpt->add_option("file", file_a, "Automaton JSON")->required();
  o_kpt->add_option("-k", k, "Piece length bound")->required();
  o_kpt->add_option("--max-len", max_len, "Length bound");
  o_kpt->add_flag("--json", json_out, "JSON output");
  o_kpt->callback([&] {
    std::optional<KptWitness> w = oracle_kpt(read_nfa_input(file_a), k, max_len);
    result = report_kpt(!w.has_value(), w, json_out, out);
  });

  // export ----------------------------------------------------------------
  auto* cmd_export = app.add_subcommand(
      "export", "Canonical JSON or Graphviz rendering");
  cmd_export->add_option("file", file_a, "Automaton JSON")->required();
  cmd_export->add_flag("--dot", dot, "Graphviz output");
  cmd_export->callback([&] {
    Nfa a = read_nfa_input(file_a);
    if (dot)
      out << export_dot(a);
    else
      print_automaton(a, out);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
  return result;
}

}  // namespace poa
