#pragma once

#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "freegb/linalg_zp.hpp"

namespace freegb::linalg {

struct RatRow {
  std::vector<std::uint32_t> cols;
  std::vector<mpq_class> vals;

  bool empty() const { return cols.empty(); }
};

struct RatMatrix {
  std::uint32_t ncols = 0;
  std::vector<RatRow> rows;
};

struct IntRow {
  std::vector<std::uint32_t> cols;
  std::vector<mpz_class> vals;
};

struct IntMatrix {
  std::uint32_t ncols = 0;
  std::vector<IntRow> rows;
};

// Scale each row by the lcm of its denominators. Row scaling leaves the
// reduced echelon form untouched and keeps the height small, which is what
// the acceptance criterion of the multi-modular loop depends on.
IntMatrix clear_denominators(const RatMatrix& a,
                             std::vector<mpz_class>* scales = nullptr);

// max |entry|; 0 for the zero matrix.
mpz_class height(const IntMatrix& a);

// Unique x in [0, prod primes) with x = residues[k] mod primes[k].
// Duplicate primes are a config error.
mpz_class crt_combine(std::span<const std::uint32_t> residues,
                      std::span<const std::uint32_t> primes);

// Unique fraction num/den with |num| <= N, 0 < den <= D for
// N = D = floor(sqrt(M/2)), if one exists.
std::optional<mpq_class> rational_reconstruct(const mpz_class& x,
                                              const mpz_class& M);

// Largest prime strictly below `below`.
std::uint32_t prev_prime_u32(std::uint32_t below);

// Rows that vanished in the first modular elimination; later primes zero
// them out up front instead of reducing them again.
struct Tracer {
  bool built = false;
  std::vector<std::uint8_t> zero_rows;
};

struct QTransformRow {
  std::vector<std::uint32_t> rows;
  std::vector<mpq_class> coeffs;
};

struct QRrefConfig {
  bool tracer = true;
  unsigned threads = 1;
  bool want_transform = false;
};

struct QRrefResult {
  RatMatrix m;
  // Pivot rows only (zero rows carry no combination); out[r] = sum
  // coeffs[k] * a.rows[rows[k]] over the original rational matrix.
  std::vector<QTransformRow> transform;
  std::vector<std::uint32_t> primes_used;
};

// Alg.: per-prime modular RREF, pivot-vector maximality filter, CRT plus
// rational reconstruction, then the height criterion
// H(dR) * H(A') * n < prod p. With the tracer off the acceptance is a
// proof, not a probabilistic check.
QRrefResult rref_multimodular(const RatMatrix& a, const QRrefConfig& cfg = {});

}  // namespace freegb::linalg
