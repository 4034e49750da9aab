#pragma once

#include <cstdint>
#include <span>

#include <gmpxx.h>

#include "freegb/common.hpp"

namespace freegb {

// Deterministic primality for 32-bit candidates; characteristic and the
// multi-modular prime streams never exceed 2^31.
bool is_prime_u32(std::uint32_t n);

// Inverse of a mod p, p prime, 0 < a < p.
std::uint32_t mod_inverse_u32(std::uint32_t a, std::uint32_t p);

// Z_p with 32-bit residues, p prime, p < 2^31.
struct ZpField {
  using Elem = std::uint32_t;

  std::uint32_t p;

  explicit ZpField(std::uint32_t p_) : p(p_) {
    if (p_ < 2 || p_ >= (1u << 31) || !is_prime_u32(p_))
      throw ConfigError("characteristic must be a prime < 2^31");
  }

  static Elem zero() { return 0; }
  static Elem one() { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  Elem add(Elem a, Elem b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p) s -= p;
    return static_cast<Elem>(s);
  }
  Elem sub(Elem a, Elem b) const { return b <= a ? a - b : a + (p - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((std::uint64_t(a) * b) % p);
  }
  Elem inv(Elem a) const { return mod_inverse_u32(a, p); }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  static void canon(Elem&) {}

  Elem from_mpz(const mpz_class& z) const {
    return static_cast<Elem>(mpz_fdiv_ui(z.get_mpz_t(), p));
  }
  Elem from_int(long v) const {
    long r = v % long(p);
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }

  static std::uint64_t hash(Elem a) { return hash_bytes(&a, sizeof a); }
  static bool eq(Elem a, Elem b) { return a == b; }
};

// Exact rationals. Elements are kept canonical (lowest terms, positive
// denominator); mpq_class construction + canonicalize() enforces this.
struct QField {
  using Elem = mpq_class;

  static Elem zero() { return Elem(0); }
  static Elem one() { return Elem(1); }
  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static bool is_one(const Elem& a) { return a == 1; }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem inv(const Elem& a) { return 1 / a; }
  static Elem div(const Elem& a, const Elem& b) { return a / b; }

  // Lowest terms, positive denominator; arithmetic results already are,
  // but elements built from raw (num, den) pairs need not be.
  static void canon(Elem& a) { a.canonicalize(); }

  static std::uint64_t hash(const Elem& a) {
    auto hash_mpz = [](const mpz_class& z) {
      std::size_t n = mpz_size(z.get_mpz_t());
      std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (std::uint64_t)mpz_sgn(z.get_mpz_t());
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t limb = mpz_getlimbn(z.get_mpz_t(), i);
        h = hash_bytes(&limb, sizeof limb, h);
      }
      return h;
    };
    return hash_mpz(a.get_num()) * 0x100000001b3ULL ^ hash_mpz(a.get_den());
  }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
};

}  // namespace freegb
