// Test-only reference implementations, deliberately naive and independent
// of the library's elimination path.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "freegb/linalg_q.hpp"
#include "freegb/linalg_zp.hpp"

namespace oracles {

using DenseZp = std::vector<std::vector<std::uint64_t>>;
using DenseQ = std::vector<std::vector<mpq_class>>;

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e,
                            std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = (unsigned __int128)(r)*a % p;
    a = (unsigned __int128)(a)*a % p;
    e >>= 1;
  }
  return r;
}

// Textbook Gauss-Jordan over Z_p with a full reduction after every single
// arithmetic operation.
inline DenseZp rref_dense_mod_p(DenseZp a, std::uint64_t p) {
  if (a.empty()) return a;
  std::size_t m = a.size(), n = a[0].size();
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < m; ++j) {
    std::size_t piv = rank;
    while (piv < m && a[piv][j] % p == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[rank], a[piv]);
    std::uint64_t inv = powmod(a[rank][j], p - 2, p);
    if (p == 2) inv = 1;
    for (std::size_t k = 0; k < n; ++k)
      a[rank][k] = (unsigned __int128)(a[rank][k]) * inv % p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][j] % p == 0) continue;
      std::uint64_t f = a[r][j] % p;
      for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t sub = (unsigned __int128)(f)*a[rank][k] % p;
        a[r][k] = (a[r][k] + p - sub) % p;
      }
    }
    ++rank;
  }
  return a;
}

// Exact-fraction Gauss-Jordan.
inline DenseQ rref_dense_q(DenseQ a) {
  if (a.empty()) return a;
  std::size_t m = a.size(), n = a[0].size();
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < m; ++j) {
    std::size_t piv = rank;
    while (piv < m && sgn(a[piv][j]) == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[rank], a[piv]);
    mpq_class inv = 1 / a[rank][j];
    for (std::size_t k = 0; k < n; ++k) a[rank][k] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || sgn(a[r][j]) == 0) continue;
      mpq_class f = a[r][j];
      for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return a;
}

inline freegb::linalg::SparseMatrix to_sparse(const DenseZp& a,
                                              std::uint32_t ncols) {
  freegb::linalg::SparseMatrix m;
  m.ncols = ncols;
  m.rows.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::uint32_t j = 0; j < ncols; ++j)
      if (a[i][j] != 0) {
        m.rows[i].cols.push_back(j);
        m.rows[i].vals.push_back(static_cast<std::uint32_t>(a[i][j]));
      }
  return m;
}

inline DenseZp to_dense(const freegb::linalg::SparseMatrix& m) {
  DenseZp a(m.rows.size(), std::vector<std::uint64_t>(m.ncols, 0));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (std::size_t k = 0; k < m.rows[i].cols.size(); ++k)
      a[i][m.rows[i].cols[k]] = m.rows[i].vals[k];
  return a;
}

inline freegb::linalg::RatMatrix to_sparse_q(const DenseQ& a,
                                             std::uint32_t ncols) {
  freegb::linalg::RatMatrix m;
  m.ncols = ncols;
  m.rows.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::uint32_t j = 0; j < ncols; ++j)
      if (sgn(a[i][j]) != 0) {
        m.rows[i].cols.push_back(j);
        m.rows[i].vals.push_back(a[i][j]);
      }
  return m;
}

inline DenseQ to_dense_q(const freegb::linalg::RatMatrix& m) {
  DenseQ a(m.rows.size(), std::vector<mpq_class>(m.ncols, mpq_class(0)));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (std::size_t k = 0; k < m.rows[i].cols.size(); ++k)
      a[i][m.rows[i].cols[k]] = m.rows[i].vals[k];
  return a;
}

// Random sparse matrix with the acceptance corpus shape.
inline DenseZp random_dense_mod_p(std::mt19937_64& rng, std::size_t max_m,
                                  std::size_t max_n, std::uint64_t p,
                                  double min_density, double max_density) {
  std::uniform_int_distribution<std::size_t> md(1, max_m), nd(1, max_n);
  std::size_t m = md(rng), n = nd(rng);
  std::uniform_real_distribution<double> dd(min_density, max_density);
  double density = dd(rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> val(1, p - 1);
  DenseZp a(m, std::vector<std::uint64_t>(n, 0));
  for (auto& row : a)
    for (auto& x : row)
      if (coin(rng) < density) x = p == 2 ? 1 : val(rng);
  return a;
}

}  // namespace oracles
