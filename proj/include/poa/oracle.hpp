#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "poa/nfa.hpp"
#include "poa/piecewise.hpp"

namespace poa {

// Calls fn for every word of length <= max_len in length-lexicographic order
// (symbols in declared order); stops early when fn returns false.
void for_each_word(const std::vector<std::string>& alphabet, int max_len,
                   const std::function<bool(const Word&)>& fn);

std::vector<Word> enumerate_words(const std::vector<std::string>& alphabet,
                                  int max_len);

// Accepted words up to a length bound, by direct membership only. The
// brute-force reference the deciders are tested against.
struct LanguageSample {
  int max_len = 0;
  std::vector<Word> accepted;  // length-lexicographic order
};
LanguageSample sample_language(const Nfa& a, int max_len);

// First rejected word of length <= max_len, if any.
std::optional<Word> oracle_universal(const Nfa& a, int max_len);

// First word of length <= max_len on which a and b disagree, if any.
std::optional<Word> oracle_equivalent(const Nfa& a, const Nfa& b, int max_len);

// First pair u ~_k v with differing acceptance among words of length <=
// max_len, grouping enumerated words by their subword sets; refutation only,
// shares nothing with is_kpt.
std::optional<KptWitness> oracle_kpt(const Nfa& a, int k, int max_len);

}  // namespace poa
