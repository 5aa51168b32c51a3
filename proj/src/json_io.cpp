#include "poa/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

namespace poa {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::vector<std::string> string_list(const json& j, const char* field) {
  if (!j.is_array())
    throw InputError(std::string("field '") + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw InputError(std::string("field '") + field +
                       "' must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Nfa nfa_from_json(const json& j) {
  if (!j.is_object()) throw InputError("automaton JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "name" && key != "alphabet" && key != "states" &&
        key != "initial" && key != "accepting" && key != "transitions")
      throw InputError("unknown automaton field '" + key + "'");
  }
  for (const char* field : {"alphabet", "states", "initial", "accepting",
                            "transitions"})
    if (!j.contains(field))
      throw InputError(std::string("missing automaton field '") + field + "'");

  Nfa a;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError("'name' must be a string");
    a.name = j["name"].get<std::string>();
  }
  for (const auto& s : string_list(j["alphabet"], "alphabet")) add_symbol(a, s);
  for (const auto& s : string_list(j["states"], "states")) add_state(a, s);
  for (const auto& s : string_list(j["initial"], "initial")) {
    int q = state_index(a, s);
    if (q < 0) throw InputError("initial state '" + s + "' not declared");
    mark_initial(a, q);
  }
  for (const auto& s : string_list(j["accepting"], "accepting")) {
    int q = state_index(a, s);
    if (q < 0) throw InputError("accepting state '" + s + "' not declared");
    mark_accepting(a, q);
  }
  if (!j["transitions"].is_array())
    throw InputError("field 'transitions' must be an array");
  for (const auto& t : j["transitions"]) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() ||
        !t[1].is_string() || !t[2].is_string())
      throw InputError("transitions must be [source, symbol, target] triples");
    int src = state_index(a, t[0].get<std::string>());
    int sym = symbol_index(a, t[1].get<std::string>());
    int dst = state_index(a, t[2].get<std::string>());
    if (src < 0)
      throw InputError("transition source '" + t[0].get<std::string>() +
                       "' not declared");
    if (sym < 0)
      throw InputError("transition symbol '" + t[1].get<std::string>() +
                       "' not declared");
    if (dst < 0)
      throw InputError("transition target '" + t[2].get<std::string>() +
                       "' not declared");
    add_transition(a, src, sym, dst);
  }
  return a;
}

ordered_json nfa_to_json(const Nfa& a) {
  ordered_json j;
  if (!a.name.empty()) j["name"] = a.name;
  j["alphabet"] = a.alphabet;
  j["states"] = a.states;
  j["initial"] = macro_names(a, a.initial);
  j["accepting"] = macro_names(a, a.accepting);

  std::vector<std::tuple<std::string, std::string, std::string>> triples;
  for (int q = 0; q < a.num_states(); ++q)
    for (int sym = 0; sym < a.num_symbols(); ++sym)
      for (int r : a.delta[q][sym])
        triples.emplace_back(a.states[q], a.alphabet[sym], a.states[r]);
  std::sort(triples.begin(), triples.end());
  ordered_json ts = ordered_json::array();
  for (const auto& [src, sym, dst] : triples)
    ts.push_back(ordered_json::array({src, sym, dst}));
  j["transitions"] = std::move(ts);
  return j;
}

std::string nfa_to_canonical_string(const Nfa& a) {
  return nfa_to_json(a).dump(2) + "\n";
}

Nfa nfa_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("invalid JSON");
  return nfa_from_json(j);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InputError("invalid JSON in '" + path + "'");
  return j;
}

Nfa load_nfa(const std::string& path) { return nfa_from_json(load_json(path)); }

}  // namespace poa
