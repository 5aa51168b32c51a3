#pragma once

#include <json.hpp>

#include <string>

#include "poa/nfa.hpp"

namespace poa {

// Interchange schema: {"name"?, "alphabet", "states", "initial", "accepting",
// "transitions": [[src, sym, dst], ...]}. Parsing validates duplicate-free
// name lists and membership of every reference; errors are InputError.
Nfa nfa_from_json(const nlohmann::json& j);
nlohmann::ordered_json nfa_to_json(const Nfa& a);

// Canonical text: two-space indent, pinned key order, initial/accepting in
// declared state order, transitions sorted lexicographically by
// (source, symbol, target) names, trailing newline. Parsing then serializing
// canonical text is byte-stable.
std::string nfa_to_canonical_string(const Nfa& a);

Nfa nfa_from_string(const std::string& text);
Nfa load_nfa(const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace poa
