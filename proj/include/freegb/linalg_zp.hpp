#pragma once

#include <cstdint>
#include <vector>

#include "freegb/common.hpp"

namespace freegb::linalg {

// Row-wise sparse matrix over Z_p: ascending column indices plus matching
// nonzero residues in [1, p).
struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<std::uint32_t> vals;

  bool empty() const { return cols.empty(); }
  void clear() {
    cols.clear();
    vals.clear();
  }
};

struct SparseMatrix {
  std::uint32_t ncols = 0;
  std::vector<SparseRow> rows;
};

// Repairs a possibly-negative accumulator without a conditional branch:
// result >= 0 and congruent to v mod p. Requires v > -p^2.
inline std::int64_t branchfree_fix(std::int64_t v, std::uint32_t p) {
  std::int64_t pp = std::int64_t(p) * p;
  return v + ((v >> 63) & pp);
}

// v mod (2^b - 1) for v < 2^(2b), by shifts and one mask.
inline std::uint32_t mersenne_reduce(std::uint64_t v, unsigned b) {
  std::uint64_t p = (std::uint64_t(1) << b) - 1;
  std::uint64_t v1 = v + 1;
  std::uint64_t z = ((v1 >> b) + v1) >> b;
  return static_cast<std::uint32_t>((v + z) & p);
}

// Full reduction of a 64-bit accumulator, dispatching to the Mersenne
// routine when p = 2^b - 1 for b in {13, 17, 19, 31}.
struct ZpReducer {
  std::uint32_t p;
  unsigned mersenne_b;  // 0 = standard modulus

  static ZpReducer make(std::uint32_t p) {
    for (unsigned b : {13u, 17u, 19u, 31u})
      if (p == (std::uint32_t(1) << b) - 1) return ZpReducer{p, b};
    return ZpReducer{p, 0};
  }

  std::uint32_t reduce(std::uint64_t v) const {
    return mersenne_b ? mersenne_reduce(v, mersenne_b)
                      : static_cast<std::uint32_t>(v % p);
  }
};

// Permutation ordering rows by ascending first-nonzero column, ties by
// original row index, zero rows last.
std::vector<std::uint32_t> staircase_sort(const SparseMatrix& m);

// Scale a nonzero row so its first value is 1.
void normalize_row(SparseRow& row, std::uint32_t p);

// Sparse combination of input rows; output row r of the RREF satisfies
// out[r] = sum coeffs[k] * input[rows[k]].
struct TransformRow {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> coeffs;
};

struct RrefResult {
  SparseMatrix m;
  // One entry per output row when requested (meaningless under drop_rows).
  std::vector<TransformRow> transform;
  // Per input row: did it reduce to zero during forward elimination?
  std::vector<std::uint8_t> vanished;
};

// The reduced row echelon form over Z_p (unique). Pivot rows come first in
// ascending pivot-column order, zero rows pad the bottom. thread_count > 1
// parallelizes elimination; the output is identical for every thread count.
// want_transform forces sequential elimination so the recorded combinations
// are deterministic. drop_rows, when given, zeroes the flagged input rows
// before elimination (multi-modular tracer support).
RrefResult rref_mod_p(const SparseMatrix& a, std::uint32_t p,
                      unsigned thread_count = 1, bool want_transform = false,
                      const std::vector<std::uint8_t>* drop_rows = nullptr);

}  // namespace freegb::linalg
