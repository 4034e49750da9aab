#include "freegb/linalg_q.hpp"

#include <algorithm>
#include <map>

#include "freegb/field.hpp"

namespace freegb::linalg {

IntMatrix clear_denominators(const RatMatrix& a,
                             std::vector<mpz_class>* scales) {
  IntMatrix out;
  out.ncols = a.ncols;
  out.rows.resize(a.rows.size());
  if (scales) scales->assign(a.rows.size(), mpz_class(1));
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    const RatRow& row = a.rows[r];
    mpz_class l(1);
    for (const mpq_class& v : row.vals)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    IntRow& dst = out.rows[r];
    dst.cols = row.cols;
    dst.vals.resize(row.vals.size());
    for (std::size_t k = 0; k < row.vals.size(); ++k) {
      mpq_class scaled = row.vals[k] * l;
      dst.vals[k] = scaled.get_num();  // denominator is 1 by construction
    }
    if (scales) (*scales)[r] = l;
  }
  return out;
}

mpz_class height(const IntMatrix& a) {
  mpz_class h(0);
  for (const IntRow& row : a.rows)
    for (const mpz_class& v : row.vals) {
      mpz_class av = abs(v);
      if (av > h) h = av;
    }
  return h;
}

mpz_class crt_combine(std::span<const std::uint32_t> residues,
                      std::span<const std::uint32_t> primes) {
  if (residues.size() != primes.size())
    throw ConfigError("crt: residue/modulus count mismatch");
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (primes[i] == primes[j]) throw ConfigError("crt: duplicate primes");
  mpz_class x(0), M(1);
  for (std::size_t k = 0; k < primes.size(); ++k) {
    std::uint32_t p = primes[k];
    std::uint32_t xk = static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p));
    std::uint32_t delta =
        residues[k] >= xk ? residues[k] - xk : residues[k] + (p - xk);
    std::uint32_t minv =
        mod_inverse_u32(static_cast<std::uint32_t>(mpz_fdiv_ui(M.get_mpz_t(), p)), p);
    std::uint32_t t =
        static_cast<std::uint32_t>((std::uint64_t(delta) * minv) % p);
    x += M * t;
    M *= p;
  }
  return x;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& x,
                                              const mpz_class& M) {
  if (x < 0 || x >= M) throw DomainError("rational_reconstruct: x out of range");
  mpz_class bound;
  mpz_class half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());  // N = D = floor(sqrt(M/2))
  if (x == 0) return mpq_class(0);

  mpz_class r0 = M, r1 = x;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  mpz_class num = r1, den = t1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den == 0 || den > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::uint32_t prev_prime_u32(std::uint32_t below) {
  for (std::uint32_t c = below - 1;; --c) {
    if (c < 2) throw ConfigError("prime supply exhausted");
    if (is_prime_u32(c)) return c;
  }
}

namespace {

struct ModRun {
  std::uint32_t p;
  RrefResult res;
  std::vector<std::uint32_t> pivots;
};

std::vector<std::uint32_t> pivot_vector(const SparseMatrix& m) {
  std::vector<std::uint32_t> out;
  for (const SparseRow& r : m.rows)
    if (!r.empty()) out.push_back(r.cols.front());
  return out;
}

// Maximality: longer wins; same length, the one with pivots furthest left
// (lexicographically smallest) wins. A bad prime can only lose pivots or
// push them right, so the true profile is the maximal one.
bool less_maximal(const std::vector<std::uint32_t>& a,
                  const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

SparseMatrix reduce_mod(const IntMatrix& a, std::uint32_t p) {
  SparseMatrix out;
  out.ncols = a.ncols;
  out.rows.resize(a.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    const IntRow& src = a.rows[r];
    SparseRow& dst = out.rows[r];
    for (std::size_t k = 0; k < src.cols.size(); ++k) {
      auto v = static_cast<std::uint32_t>(
          mpz_fdiv_ui(src.vals[k].get_mpz_t(), p));
      if (v != 0) {
        dst.cols.push_back(src.cols[k]);
        dst.vals.push_back(v);
      }
    }
  }
  return out;
}

}  // namespace

QRrefResult rref_multimodular(const RatMatrix& a, const QRrefConfig& cfg) {
  const auto m = static_cast<std::uint32_t>(a.rows.size());
  const std::uint32_t n = a.ncols;

  QRrefResult out;
  out.m.ncols = n;
  out.m.rows.resize(m);

  std::vector<mpz_class> scales;
  IntMatrix ai = clear_denominators(a, &scales);
  mpz_class ha = height(ai);
  if (ha == 0) return out;  // zero matrix: RREF is zero, no combinations

  Tracer tracer;
  std::vector<ModRun> runs;
  std::uint32_t prime_cursor = 1u << 31;
  auto next_prime = [&]() {
    for (;;) {
      prime_cursor = prev_prime_u32(prime_cursor);
      bool bad = false;
      for (const mpz_class& s : scales)
        if (mpz_divisible_ui_p(s.get_mpz_t(), prime_cursor)) {
          bad = true;
          break;
        }
      if (!bad) return prime_cursor;
    }
  };

  std::size_t target = 2;
  for (;;) {
    while (runs.size() < target) {
      std::uint32_t p = next_prime();
      SparseMatrix ap = reduce_mod(ai, p);
      const std::vector<std::uint8_t>* mask =
          (cfg.tracer && tracer.built) ? &tracer.zero_rows : nullptr;
      RrefResult res = rref_mod_p(ap, p, cfg.threads, cfg.want_transform, mask);
      if (cfg.tracer && !tracer.built) {
        tracer.zero_rows = res.vanished;
        tracer.built = true;
      }
      std::vector<std::uint32_t> piv = pivot_vector(res.m);
      runs.push_back(ModRun{p, std::move(res), std::move(piv)});
    }

    const std::vector<std::uint32_t>* best = &runs.front().pivots;
    for (const ModRun& run : runs)
      if (less_maximal(*best, run.pivots)) best = &run.pivots;
    std::vector<const ModRun*> live;
    for (const ModRun& run : runs)
      if (run.pivots == *best) live.push_back(&run);

    mpz_class M(1);
    std::vector<std::uint32_t> primes;
    for (const ModRun* run : live) {
      primes.push_back(run->p);
      M *= run->p;
    }

    // CRT basis: x = sum residue_k * c_k mod M.
    std::vector<mpz_class> basis(live.size());
    for (std::size_t k = 0; k < live.size(); ++k) {
      mpz_class mk = M / primes[k];
      auto mk_mod = static_cast<std::uint32_t>(
          mpz_fdiv_ui(mk.get_mpz_t(), primes[k]));
      basis[k] = mk * mod_inverse_u32(mk_mod, primes[k]);
    }
    auto combine = [&](const std::vector<std::uint32_t>& residues) {
      mpz_class x(0);
      for (std::size_t k = 0; k < residues.size(); ++k)
        if (residues[k] != 0) x += basis[k] * residues[k];
      mpz_mod(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
      return x;
    };

    const auto rank = static_cast<std::uint32_t>(best->size());
    bool ok = true;

    RatMatrix R;
    R.ncols = n;
    R.rows.resize(m);
    for (std::uint32_t i = 0; i < rank && ok; ++i) {
      // Union of the supports across the surviving primes.
      std::map<std::uint32_t, std::vector<std::uint32_t>> entries;
      for (std::size_t k = 0; k < live.size(); ++k) {
        const SparseRow& row = live[k]->res.m.rows[i];
        for (std::size_t t = 0; t < row.cols.size(); ++t) {
          auto& residues = entries[row.cols[t]];
          residues.resize(live.size(), 0);
          residues[k] = row.vals[t];
        }
      }
      for (auto& [col, residues] : entries) {
        residues.resize(live.size(), 0);
        auto rec = rational_reconstruct(combine(residues), M);
        if (!rec) {
          ok = false;
          break;
        }
        if (sgn(*rec) != 0) {
          R.rows[i].cols.push_back(col);
          R.rows[i].vals.push_back(*rec);
        }
      }
    }

    std::vector<QTransformRow> T;
    if (ok && cfg.want_transform) {
      T.resize(rank);
      for (std::uint32_t i = 0; i < rank && ok; ++i) {
        std::map<std::uint32_t, std::vector<std::uint32_t>> entries;
        for (std::size_t k = 0; k < live.size(); ++k) {
          const TransformRow& tr = live[k]->res.transform[i];
          for (std::size_t t = 0; t < tr.rows.size(); ++t) {
            auto& residues = entries[tr.rows[t]];
            residues.resize(live.size(), 0);
            residues[k] = tr.coeffs[t];
          }
        }
        for (auto& [src, residues] : entries) {
          residues.resize(live.size(), 0);
          auto rec = rational_reconstruct(combine(residues), M);
          if (!rec) {
            ok = false;
            break;
          }
          if (sgn(*rec) != 0) {
            T[i].rows.push_back(src);
            // The modular runs saw the rescaled integer rows.
            T[i].coeffs.push_back(*rec * scales[src]);
          }
        }
      }
      // The height criterion covers R only; combinations are checked by
      // exact expansion and the prime set grows until they hold.
      for (std::uint32_t i = 0; i < rank && ok; ++i) {
        std::map<std::uint32_t, mpq_class> acc;
        for (std::size_t k = 0; k < T[i].rows.size(); ++k) {
          const RatRow& src = a.rows[T[i].rows[k]];
          for (std::size_t t = 0; t < src.cols.size(); ++t)
            acc[src.cols[t]] += T[i].coeffs[k] * src.vals[t];
        }
        std::erase_if(acc, [](const auto& kv) { return sgn(kv.second) == 0; });
        const RatRow& want = R.rows[i];
        if (acc.size() != want.cols.size()) {
          ok = false;
          break;
        }
        std::size_t t = 0;
        for (const auto& [col, val] : acc) {
          if (col != want.cols[t] || val != want.vals[t]) {
            ok = false;
            break;
          }
          ++t;
        }
      }
    }

    if (ok) {
      // d R integral for d = lcm of the entry denominators.
      mpz_class d(1);
      for (std::uint32_t i = 0; i < rank; ++i)
        for (const mpq_class& v : R.rows[i].vals)
          mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den().get_mpz_t());
      // hdr clamped to 1: with H(dR) = 0 the bound would accept a zero
      // reconstruction on any matrix whose entries share all chosen primes.
      mpz_class hdr(1);
      for (std::uint32_t i = 0; i < rank; ++i)
        for (const mpq_class& v : R.rows[i].vals) {
          mpq_class scaled = v * d;
          mpz_class av = abs(scaled.get_num());
          if (av > hdr) hdr = av;
        }
      if (hdr * ha * n < M) {
        out.m = std::move(R);
        out.transform = std::move(T);
        out.primes_used = std::move(primes);
        return out;
      }
    }
    target *= 2;
    if (target > (std::size_t(1) << 20))
      throw ConfigError("multi-modular loop failed to converge");
  }
}

}  // namespace freegb::linalg
