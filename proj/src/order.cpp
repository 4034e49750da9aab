#include "freegb/order.hpp"

#include <algorithm>

namespace freegb {

Ordering Ordering::deglex(std::uint32_t nvars) {
  return Ordering(1, std::vector<std::uint32_t>(nvars, 0));
}

Ordering Ordering::blocks(std::vector<std::uint32_t> block_per_var) {
  if (block_per_var.empty())
    throw ConfigError("ordering needs at least one variable");
  std::uint32_t d = 0;
  for (std::uint32_t& b : block_per_var) {
    if (b == 0) throw ConfigError("block indices are 1-based");
    d = std::max(d, b);
    b -= 1;
  }
  return Ordering(d, std::move(block_per_var));
}

std::vector<std::uint32_t> Ordering::weight(Word m) const {
  std::vector<std::uint32_t> counts(block_count_, 0);
  for (Var v : m) ++counts[block_of_[v - 1]];
  return counts;
}

Cmp Ordering::compare(Word a, Word b) const {
  if (block_count_ == 1) {
    // Unit weights with one block reduce to length comparison.
    if (a.size() != b.size()) return a.size() < b.size() ? Cmp::LT : Cmp::GT;
  } else {
    std::uint32_t wa[64], wb[64];
    std::vector<std::uint32_t> heap_a, heap_b;
    std::uint32_t* ca = wa;
    std::uint32_t* cb = wb;
    if (block_count_ > 64) {
      heap_a.resize(block_count_);
      heap_b.resize(block_count_);
      ca = heap_a.data();
      cb = heap_b.data();
    }
    std::fill(ca, ca + block_count_, 0u);
    std::fill(cb, cb + block_count_, 0u);
    for (Var v : a) ++ca[block_of_[v - 1]];
    for (Var v : b) ++cb[block_of_[v - 1]];
    for (std::uint32_t k = 0; k < block_count_; ++k) {
      if (ca[k] != cb[k]) return ca[k] < cb[k] ? Cmp::LT : Cmp::GT;
    }
    // Equal weight vectors force equal length under unit weights.
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? Cmp::LT : Cmp::GT;
  }
  return Cmp::EQ;
}

bool multiplicativity_check(Word a, Word v, Word w, Word b,
                            const Ordering& ord) {
  auto wrap = [&](Word mid) {
    std::vector<Var> out;
    out.reserve(a.size() + mid.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
  };
  std::vector<Var> avb = wrap(v);
  std::vector<Var> awb = wrap(w);
  return ord.compare(v, w) == ord.compare(Word(avb), Word(awb));
}

}  // namespace freegb
