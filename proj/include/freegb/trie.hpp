#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "freegb/common.hpp"

namespace freegb {

// Prefix tree over the leading monomials of the current basis. Subword
// search is a prefix descent launched from every start position of the
// query word. Insert-only: basis elements are never removed.
class PrefixTree {
 public:
  struct Match {
    std::uint32_t basis;  // basis element whose lm matched
    std::uint32_t pos;    // |a| in w = a * lm * b
    std::uint32_t len;    // |lm|
  };

  PrefixTree() {
    term_head_.push_back(-1);  // root
  }

  std::size_t node_count() const { return term_head_.size(); }

  void insert(Word lm, std::uint32_t basis_index);

  // Leftmost match; ties at one position resolved toward the shortest lm,
  // then the smallest basis index (equal position and length mean the
  // leading monomials are the same word, so ordering cannot split them).
  std::optional<Match> find_divisor(Word w) const;

  // Every (basis, position) with w = a * lm * b, in increasing position
  // order; matches at one position in increasing length order.
  std::vector<Match> find_all_divisors(Word w) const;

  // Exact-word membership, for tests.
  bool contains_word(Word w) const;

 private:
  struct Term {
    std::uint32_t basis;
    std::int32_t next;
  };

  std::int32_t child(std::uint32_t node, Var letter) const {
    auto it = edges_.find((std::uint64_t(node) << 32) | letter);
    return it == edges_.end() ? -1 : static_cast<std::int32_t>(it->second);
  }

  std::vector<std::int32_t> term_head_;  // per node: head into terms_, or -1
  std::vector<Term> terms_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
};

}  // namespace freegb
