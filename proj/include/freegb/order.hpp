#pragma once

#include <vector>

#include "freegb/arena.hpp"
#include "freegb/common.hpp"

namespace freegb {

enum class Cmp : int { LT = -1, EQ = 0, GT = 1 };

// Weighted block ordering with unit weight vectors: every variable sits in
// exactly one of d blocks, the weight of a word is its per-block letter
// count vector, weights are compared block 1 first, and ties fall back to
// left-to-right comparison of the variable id sequences. d = 1 is deglex;
// d > 1 gives elimination orderings (block 1 has highest priority).
class Ordering {
 public:
  // All variables in one block.
  static Ordering deglex(std::uint32_t nvars);

  // block_per_var[i] is the 1-based block of variable id i+1.
  static Ordering blocks(std::vector<std::uint32_t> block_per_var);

  std::uint32_t block_count() const { return block_count_; }
  std::uint32_t variable_count() const {
    return static_cast<std::uint32_t>(block_of_.size());
  }

  // Per-block letter counts; the entries sum to |m|.
  std::vector<std::uint32_t> weight(Word m) const;

  Cmp compare(Word a, Word b) const;
  Cmp compare(MonIdx a, MonIdx b, const MonomialStore& store) const {
    if (a == b) return Cmp::EQ;
    return compare(store.word(a), store.word(b));
  }

 private:
  Ordering(std::uint32_t block_count, std::vector<std::uint32_t> block_of)
      : block_count_(block_count), block_of_(std::move(block_of)) {}

  std::uint32_t block_count_ = 1;
  std::vector<std::uint32_t> block_of_;  // 0-based block per variable id - 1
};

// Test utility: does compare(v, w) survive two-sided translation by (a, b)?
bool multiplicativity_check(Word a, Word v, Word w, Word b, const Ordering& ord);

}  // namespace freegb
