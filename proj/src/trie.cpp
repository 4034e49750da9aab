#include "freegb/trie.hpp"

#include <algorithm>

namespace freegb {

void PrefixTree::insert(Word lm, std::uint32_t basis_index) {
  if (lm.empty()) throw InputError("leading monomial must be nonempty");
  std::uint32_t node = 0;
  for (Var v : lm) {
    std::uint64_t key = (std::uint64_t(node) << 32) | v;
    auto it = edges_.find(key);
    if (it == edges_.end()) {
      auto fresh = static_cast<std::uint32_t>(term_head_.size());
      term_head_.push_back(-1);
      edges_.emplace(key, fresh);
      node = fresh;
    } else {
      node = it->second;
    }
  }
  // Idempotent for a repeated (lm, basis_index) pair.
  for (std::int32_t t = term_head_[node]; t >= 0; t = terms_[t].next)
    if (terms_[t].basis == basis_index) return;
  terms_.push_back(Term{basis_index, term_head_[node]});
  term_head_[node] = static_cast<std::int32_t>(terms_.size() - 1);
}

std::optional<PrefixTree::Match> PrefixTree::find_divisor(Word w) const {
  for (std::uint32_t pos = 0; pos < w.size(); ++pos) {
    std::uint32_t node = 0;
    for (std::uint32_t k = pos; k < w.size(); ++k) {
      std::int32_t next = child(node, w[k]);
      if (next < 0) break;
      node = static_cast<std::uint32_t>(next);
      if (term_head_[node] >= 0) {
        std::uint32_t best = terms_[term_head_[node]].basis;
        for (std::int32_t t = term_head_[node]; t >= 0; t = terms_[t].next)
          best = std::min(best, terms_[t].basis);
        return Match{best, pos, k - pos + 1};
      }
    }
  }
  return std::nullopt;
}

std::vector<PrefixTree::Match> PrefixTree::find_all_divisors(Word w) const {
  std::vector<Match> out;
  for (std::uint32_t pos = 0; pos < w.size(); ++pos) {
    std::uint32_t node = 0;
    for (std::uint32_t k = pos; k < w.size(); ++k) {
      std::int32_t next = child(node, w[k]);
      if (next < 0) break;
      node = static_cast<std::uint32_t>(next);
      if (term_head_[node] >= 0) {
        // Collect in ascending basis order per node.
        std::vector<std::uint32_t> ids;
        for (std::int32_t t = term_head_[node]; t >= 0; t = terms_[t].next)
          ids.push_back(terms_[t].basis);
        std::sort(ids.begin(), ids.end());
        for (std::uint32_t id : ids) out.push_back(Match{id, pos, k - pos + 1});
      }
    }
  }
  return out;
}

bool PrefixTree::contains_word(Word w) const {
  std::uint32_t node = 0;
  for (Var v : w) {
    std::int32_t next = child(node, v);
    if (next < 0) return false;
    node = static_cast<std::uint32_t>(next);
  }
  return term_head_[node] >= 0;
}

}  // namespace freegb
