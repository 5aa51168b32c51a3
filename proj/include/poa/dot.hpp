#pragma once

#include <string>

#include "poa/nfa.hpp"

namespace poa {

// Graphviz rendering of an automaton. Output is byte-stable for a given
// input: states in declaration order, one edge per (src, dst) pair with the
// symbols merged into a comma-separated label, accepting states drawn with a
// double circle and initial states fed by arrows from invisible points.
std::string export_dot(const Nfa& a);

}  // namespace poa
