#include "poa/dot.hpp"

#include <sstream>
#include <string>

namespace poa {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\\\";
    else out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const Nfa& a) {
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  for (int q = 0; q < a.num_states(); ++q)
    out << "  \"" << escape(a.states[q]) << "\" [shape="
        << (a.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
  int entry = 0;
  for (int q : a.initial) {
    out << "  \"__start" << entry << "\" [shape=point];\n";
    out << "  \"__start" << entry << "\" -> \"" << escape(a.states[q])
        << "\";\n";
    ++entry;
  }
  for (int src = 0; src < a.num_states(); ++src)
    for (int dst = 0; dst < a.num_states(); ++dst) {
      std::string label;
      for (int s = 0; s < a.num_symbols(); ++s)
        for (int r : a.delta[src][s])
          if (r == dst) {
            if (!label.empty()) label += ",";
            label += escape(a.alphabet[s]);
          }
      if (!label.empty())
        out << "  \"" << escape(a.states[src]) << "\" -> \""
            << escape(a.states[dst]) << "\" [label=\"" << label << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace poa
