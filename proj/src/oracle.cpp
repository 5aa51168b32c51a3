#include "poa/oracle.hpp"

#include <map>
#include <set>

namespace poa {

void for_each_word(const std::vector<std::string>& alphabet, int max_len,
                   const std::function<bool(const Word&)>& fn) {
  Word w;
  if (!fn(w)) return;
  if (alphabet.empty()) return;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<size_t> idx(len, 0);
    for (;;) {
      w.clear();
      for (int i = 0; i < len; ++i) w.push_back(alphabet[idx[i]]);
      if (!fn(w)) return;
      int pos = len - 1;
      while (pos >= 0 && idx[pos] + 1 == alphabet.size()) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
  }
}

std::vector<Word> enumerate_words(const std::vector<std::string>& alphabet,
                                  int max_len) {
  std::vector<Word> out;
  for_each_word(alphabet, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

LanguageSample sample_language(const Nfa& a, int max_len) {
  LanguageSample s;
  s.max_len = max_len;
  for_each_word(a.alphabet, max_len, [&](const Word& w) {
    if (accepts(a, w)) s.accepted.push_back(w);
    return true;
  });
  return s;
}

std::optional<Word> oracle_universal(const Nfa& a, int max_len) {
  std::optional<Word> found;
  for_each_word(a.alphabet, max_len, [&](const Word& w) {
    if (!accepts(a, w)) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<Word> oracle_equivalent(const Nfa& a, const Nfa& b,
                                      int max_len) {
  std::vector<int> b_sym(a.num_symbols(), -1);
  if (a.num_symbols() != b.num_symbols())
    throw InputError("oracle_equivalent: alphabets differ");
  for (int i = 0; i < a.num_symbols(); ++i)
    if (symbol_index(b, a.alphabet[i]) < 0)
      throw InputError("oracle_equivalent: alphabets differ");
  std::optional<Word> found;
  for_each_word(a.alphabet, max_len, [&](const Word& w) {
    if (accepts(a, w) != accepts(b, w)) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<KptWitness> oracle_kpt(const Nfa& a, int k, int max_len) {
  // Group words by their full subword closure (equivalent to grouping by the
  // antichain); remember the first accepted and first rejected word per
  // class and stop at the first class holding both.
  struct Group {
    std::optional<Word> acc, rej;
  };
  std::map<std::set<Word>, Group> groups;
  std::optional<KptWitness> found;
  for_each_word(a.alphabet, max_len, [&](const Word& w) {
    std::set<Word> cls;
    {
      std::set<Word> full{{}};
      for (const auto& letter : w) {
        std::vector<Word> grown;
        for (const auto& u : full)
          if (static_cast<int>(u.size()) < k) {
            Word v = u;
            v.push_back(letter);
            grown.push_back(std::move(v));
          }
        full.insert(grown.begin(), grown.end());
      }
      cls = std::move(full);
    }
    Group& g = groups[cls];
    bool acc = accepts(a, w);
    auto& mine = acc ? g.acc : g.rej;
    auto& other = acc ? g.rej : g.acc;
    if (!mine) mine = w;
    if (other) {
      found = KptWitness{*other, w, k};
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace poa
