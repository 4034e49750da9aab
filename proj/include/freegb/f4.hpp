#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "freegb/context.hpp"
#include "freegb/linalg_q.hpp"
#include "freegb/linalg_zp.hpp"
#include "freegb/proof.hpp"
#include "freegb/trie.hpp"

namespace freegb {

// Overlap and containment witnesses: lm(a f b) = lm(c g d) as words, with
// the side conditions of the four cases. FContainsG means lm(g) sits inside
// lm(f); GContainsF is the mirror.
enum class AmbKind : std::uint8_t {
  LeftOverlap,
  RightOverlap,
  FContainsG,
  GContainsF
};

struct Ambiguity {
  AmbKind kind;
  std::uint32_t f, g;  // basis indices
  MonIdx a, b, c, d;
  std::uint32_t degree;  // |a lm(f) b|
};

enum class ProofMode { None, Incremental, Full };
enum class GBStatus { Complete, Truncated };

struct GBConfig {
  std::optional<std::uint32_t> degree_bound;
  std::optional<std::uint32_t> max_iterations;
  bool gm_filter = false;
  ProofMode proof = ProofMode::None;
  unsigned thread_count = 1;
  bool tracer = true;
};

// Pending ambiguities bucketed by degree; pop yields the whole minimal
// bucket in insertion order. Entries above the degree bound never enter
// (the driver counts them as discards instead).
class PairQueue {
 public:
  bool empty() const { return by_degree_.empty(); }

  std::uint32_t min_degree() const { return by_degree_.begin()->first; }

  void push(const Ambiguity& amb) { by_degree_[amb.degree].push_back(amb); }

  std::vector<Ambiguity> pop_min() {
    auto it = by_degree_.begin();
    std::vector<Ambiguity> out = std::move(it->second);
    by_degree_.erase(it);
    return out;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [d, v] : by_degree_) n += v.size();
    return n;
  }

  template <class Keep>
  void filter(Keep&& keep) {
    for (auto it = by_degree_.begin(); it != by_degree_.end();) {
      std::erase_if(it->second,
                    [&](const Ambiguity& a) { return !keep(a); });
      it = it->second.empty() ? by_degree_.erase(it) : std::next(it);
    }
  }

 private:
  std::map<std::uint32_t, std::vector<Ambiguity>> by_degree_;
};

// A matrix row is a basis element shifted by two words.
struct RowSpec {
  MonIdx left;
  std::uint32_t basis;
  MonIdx right;

  bool operator==(const RowSpec&) const = default;
};

namespace detail {

inline bool suffix_matches_prefix(Word suffix_of, Word prefix_of,
                                  std::uint32_t len) {
  for (std::uint32_t i = 0; i < len; ++i)
    if (suffix_of[suffix_of.size() - len + i] != prefix_of[i]) return false;
  return true;
}

inline bool subword_at(Word hay, Word needle, std::uint32_t pos) {
  for (std::uint32_t i = 0; i < needle.size(); ++i)
    if (hay[pos + i] != needle[i]) return false;
  return true;
}

}  // namespace detail

// All Def-style ambiguities of the ordered pair (f, g). For f == g only
// the left-overlap form of each self-overlap is produced; the mirrored
// right-overlap is the same S-polynomial up to sign.
template <class Field>
std::vector<Ambiguity> ambiguities(Context<Field>& ctx,
                                   const std::vector<PolyIdx>& basis,
                                   std::uint32_t fi, std::uint32_t gi) {
  std::vector<Ambiguity> out;
  MonIdx lmf = ctx.lm(basis[fi]);
  MonIdx lmg = ctx.lm(basis[gi]);
  Word u = ctx.mons.word(lmf);
  Word v = ctx.mons.word(lmg);
  auto lf = static_cast<std::uint32_t>(u.size());
  auto lg = static_cast<std::uint32_t>(v.size());
  MonIdx one = ctx.one();

  if (fi == gi) {
    for (std::uint32_t len = 1; len < lf; ++len) {
      if (!detail::suffix_matches_prefix(u, u, len)) continue;
      MonIdx a = ctx.mons.intern_slice(lmf, 0, lf - len);
      MonIdx d = ctx.mons.intern_slice(lmf, len, lf);
      out.push_back(Ambiguity{AmbKind::LeftOverlap, fi, gi, a, one, one, d,
                              (lf - len) + lf});
    }
    return out;
  }

  std::uint32_t max_olap = std::min(lf, lg) - 1;  // proper two-sided overlaps
  for (std::uint32_t len = 1; len <= max_olap; ++len) {
    if (detail::suffix_matches_prefix(v, u, len)) {
      MonIdx a = ctx.mons.intern_slice(lmg, 0, lg - len);
      MonIdx d = ctx.mons.intern_slice(lmf, len, lf);
      out.push_back(Ambiguity{AmbKind::LeftOverlap, fi, gi, a, one, one, d,
                              (lg - len) + lf});
    }
  }
  for (std::uint32_t len = 1; len <= max_olap; ++len) {
    if (detail::suffix_matches_prefix(u, v, len)) {
      MonIdx b = ctx.mons.intern_slice(lmg, len, lg);
      MonIdx c = ctx.mons.intern_slice(lmf, 0, lf - len);
      out.push_back(Ambiguity{AmbKind::RightOverlap, fi, gi, one, b, c, one,
                              lf + (lg - len)});
    }
  }
  // Containments require distinct polynomials, not just distinct slots.
  if (basis[fi] != basis[gi]) {
    if (lf <= lg) {
      for (std::uint32_t pos = 0; pos + lf <= lg; ++pos) {
        if (!detail::subword_at(v, u, pos)) continue;
        MonIdx a = ctx.mons.intern_slice(lmg, 0, pos);
        MonIdx b = ctx.mons.intern_slice(lmg, pos + lf, lg);
        out.push_back(
            Ambiguity{AmbKind::GContainsF, fi, gi, a, b, one, one, lg});
      }
    }
    if (lg <= lf) {
      for (std::uint32_t pos = 0; pos + lg <= lf; ++pos) {
        if (!detail::subword_at(u, v, pos)) continue;
        MonIdx c = ctx.mons.intern_slice(lmf, 0, pos);
        MonIdx d = ctx.mons.intern_slice(lmf, pos + lg, lf);
        out.push_back(
            Ambiguity{AmbKind::FContainsG, fi, gi, one, one, c, d, lf});
      }
    }
  }
  return out;
}

// (1/lc f) a f b - (1/lc g) c g d; the leading terms cancel.
template <class Field>
std::vector<typename Context<Field>::Term> s_polynomial_terms(
    Context<Field>& ctx, const Ambiguity& amb,
    const std::vector<PolyIdx>& basis) {
  using Term = typename Context<Field>::Term;
  std::vector<Term> acc;
  PolyIdx f = basis[amb.f];
  PolyIdx g = basis[amb.g];
  ctx.add_scaled(acc, ctx.field.inv(ctx.lc(f)), amb.a, f, amb.b);
  ctx.add_scaled(acc, ctx.field.neg(ctx.field.inv(ctx.lc(g))), amb.c, g,
                 amb.d);
  return acc;
}

template <class Field>
PolyIdx s_polynomial(Context<Field>& ctx, const Ambiguity& amb,
                     const std::vector<PolyIdx>& basis) {
  return ctx.intern_sorted_terms(s_polynomial_terms(ctx, amb, basis));
}

// Full reduction by the basis: repeatedly rewrite the largest reducible
// monomial until none has a divisor in the trie.
template <class Field>
std::vector<typename Context<Field>::Term> normal_form(
    Context<Field>& ctx, std::vector<typename Context<Field>::Term> terms,
    const std::vector<PolyIdx>& basis, const PrefixTree& trie) {
  std::size_t i = 0;
  while (i < terms.size()) {
    Word w = ctx.mons.word(terms[i].second);
    auto match = trie.find_divisor(w);
    if (!match) {
      ++i;
      continue;
    }
    PolyIdx g = basis[match->basis];
    MonIdx left = ctx.mons.intern_slice(terms[i].second, 0, match->pos);
    MonIdx right = ctx.mons.intern_slice(terms[i].second,
                                         match->pos + match->len,
                                         static_cast<std::uint32_t>(w.size()));
    auto lambda = ctx.field.div(terms[i].first, ctx.lc(g));
    // Cancels terms[i]; everything new lands strictly after position i.
    ctx.add_scaled(terms, ctx.field.neg(lambda), left, g, right);
  }
  return terms;
}

struct RowSpecKey {
  std::size_t operator()(const RowSpec& r) const {
    std::uint64_t h = (std::uint64_t(r.left) << 40) ^
                      (std::uint64_t(r.basis) << 20) ^ r.right;
    return hash_bytes(&h, sizeof h);
  }
};

// Close a seed batch of rows under "add one reducer row for every divisible
// monomial". Every monomial of every included row is examined exactly once;
// the chosen reducer for m satisfies lm(v g w) = m.
template <class Field>
std::vector<RowSpec> symbolic_preprocess(Context<Field>& ctx,
                                         const std::vector<RowSpec>& seed,
                                         const std::vector<PolyIdx>& basis,
                                         const PrefixTree& trie) {
  std::vector<RowSpec> rows;
  std::unordered_set<RowSpec, RowSpecKey> have;
  std::vector<MonIdx> work;
  std::unordered_set<MonIdx> seen;

  auto add_row = [&](const RowSpec& r) {
    if (!have.insert(r).second) return;
    rows.push_back(r);
    auto view = ctx.polys.view(basis[r.basis]);
    for (MonIdx m : view.mons) {
      MonIdx shifted = ctx.mons.concat3(r.left, m, r.right);
      if (seen.insert(shifted).second) work.push_back(shifted);
    }
  };

  for (const RowSpec& r : seed) add_row(r);

  for (std::size_t k = 0; k < work.size(); ++k) {
    MonIdx m = work[k];
    Word w = ctx.mons.word(m);
    auto match = trie.find_divisor(w);
    if (!match) continue;
    MonIdx left = ctx.mons.intern_slice(m, 0, match->pos);
    MonIdx right = ctx.mons.intern_slice(
        m, match->pos + match->len, static_cast<std::uint32_t>(w.size()));
    add_row(RowSpec{left, match->basis, right});
  }
  return rows;
}

template <class Field>
struct LinalgTraits;

template <>
struct LinalgTraits<ZpField> {
  using Matrix = linalg::SparseMatrix;
};

template <>
struct LinalgTraits<QField> {
  using Matrix = linalg::RatMatrix;
};

template <class Field>
struct MacaulayMatrix {
  std::vector<RowSpec> rows;
  std::vector<MonIdx> cols;  // strictly descending monomials
  typename LinalgTraits<Field>::Matrix matrix;
};

// Columns are the union of occurring monomials in descending order, so a
// polynomial's descending term list maps to ascending column indices.
template <class Field>
MacaulayMatrix<Field> build_matrix(Context<Field>& ctx,
                                   const std::vector<RowSpec>& rows,
                                   const std::vector<PolyIdx>& basis) {
  MacaulayMatrix<Field> out;
  out.rows = rows;

  std::unordered_set<MonIdx> seen;
  for (const RowSpec& r : rows) {
    auto view = ctx.polys.view(basis[r.basis]);
    for (MonIdx m : view.mons)
      seen.insert(ctx.mons.concat3(r.left, m, r.right));
  }
  out.cols.assign(seen.begin(), seen.end());
  std::sort(out.cols.begin(), out.cols.end(), [&](MonIdx x, MonIdx y) {
    return ctx.cmp(x, y) == Cmp::GT;
  });
  std::unordered_map<MonIdx, std::uint32_t> col_of;
  col_of.reserve(out.cols.size());
  for (std::uint32_t j = 0; j < out.cols.size(); ++j)
    col_of.emplace(out.cols[j], j);

  out.matrix.ncols = static_cast<std::uint32_t>(out.cols.size());
  out.matrix.rows.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RowSpec& r = rows[i];
    auto view = ctx.polys.view(basis[r.basis]);
    auto cs = ctx.pool.seq(view.coeffs);
    auto& dst = out.matrix.rows[i];
    dst.cols.resize(view.len());
    dst.vals.resize(view.len());
    for (std::uint32_t k = 0; k < view.len(); ++k) {
      dst.cols[k] = col_of.at(ctx.mons.concat3(r.left, view.mons[k], r.right));
      dst.vals[k] = cs[k];
    }
  }
  return out;
}

// Uniform view of a reduced matrix for the two coefficient fields.
template <class Field>
struct ReducedBatch {
  using Elem = typename Field::Elem;
  // (col, val) ascending per row; nonzero rows first (ascending pivot).
  std::vector<std::vector<std::pair<std::uint32_t, Elem>>> rows;
  // Per nonzero row: (matrix row, coeff) combination producing it.
  std::vector<std::vector<std::pair<std::uint32_t, Elem>>> combos;
};

ReducedBatch<ZpField> reduce_matrix(const ZpField& field,
                                    const linalg::SparseMatrix& m,
                                    const GBConfig& cfg);
ReducedBatch<QField> reduce_matrix(const QField& field,
                                   const linalg::RatMatrix& m,
                                   const GBConfig& cfg);

// Append every reduced row whose leading monomial has no divisor in the
// trie; form all ambiguities of the appended elements. Rows are processed
// top-down, so an element added earlier in the batch can shadow a later
// row. Returns the new basis indices.
template <class Field>
std::vector<std::uint32_t> update_basis(
    Context<Field>& ctx, const ReducedBatch<Field>& reduced,
    const MacaulayMatrix<Field>& mat, std::vector<PolyIdx>& basis,
    PrefixTree& trie, PairQueue& queue, const GBConfig& cfg,
    std::uint64_t& bound_discards,
    std::vector<Certificate<Field>>* certs = nullptr) {
  using Term = typename Context<Field>::Term;
  std::vector<std::uint32_t> fresh;

  for (std::size_t r = 0; r < reduced.rows.size(); ++r) {
    const auto& row = reduced.rows[r];
    if (row.empty()) continue;
    MonIdx lead = mat.cols[row.front().first];
    if (trie.find_divisor(ctx.mons.word(lead))) continue;

    std::vector<Term> terms;
    terms.reserve(row.size());
    for (const auto& [col, val] : row)
      terms.emplace_back(val, mat.cols[col]);
    PolyIdx p = ctx.intern_sorted_terms(terms);

    auto idx = static_cast<std::uint32_t>(basis.size());
    basis.push_back(p);
    trie.insert(ctx.mons.word(lead), idx);
    fresh.push_back(idx);

    if (certs) {
      Certificate<Field> cert;
      cert.target = p;
      for (const auto& [src_row, coeff] : reduced.combos[r]) {
        const RowSpec& spec = mat.rows[src_row];
        cert.terms.push_back({coeff, spec.left, spec.basis, spec.right});
      }
      certs->push_back(std::move(cert));
    }

    for (std::uint32_t j = 0; j <= idx; ++j) {
      for (const Ambiguity& amb : ambiguities(ctx, basis, idx, j)) {
        if (cfg.degree_bound && amb.degree > *cfg.degree_bound) {
          ++bound_discards;
          continue;
        }
        queue.push(amb);
      }
    }
  }
  return fresh;
}

// Gebauer-Moeller style filtering. Only drops ambiguities whose
// S-polynomials provably reduce to zero given what stays: a third
// occurrence splits the witness word into two configurations that are
// each disjoint or strictly shorter, or a containment chain is rerouted
// through the canonical proper occurrence.
template <class Field>
void gm_filter(Context<Field>& ctx, const std::vector<PolyIdx>& basis,
               const PrefixTree& trie, PairQueue& queue) {
  struct Occ {
    std::uint32_t pos, len, elem;
  };
  std::set<std::array<std::uint32_t, 6>> tuples;

  auto keep = [&](const Ambiguity& amb) -> bool {
    MonIdx w = ctx.mons.concat3(amb.a, ctx.lm(basis[amb.f]), amb.b);
    Word word = ctx.mons.word(w);
    auto wlen = static_cast<std::uint32_t>(word.size());

    // Identical tuples across kinds are the same S-polynomial; keep one.
    if (!tuples
             .insert({amb.f, amb.g, amb.a, amb.b, amb.c, amb.d})
             .second)
      return false;

    Occ focc{ctx.mons.length(amb.a), ctx.mons.length(ctx.lm(basis[amb.f])),
             amb.f};
    Occ gocc{ctx.mons.length(amb.c), ctx.mons.length(ctx.lm(basis[amb.g])),
             amb.g};

    auto side_ok = [&](const Occ& x, const Occ& h) {
      if (x.pos + x.len <= h.pos || h.pos + h.len <= x.pos) return true;
      std::uint32_t span = std::max(x.pos + x.len, h.pos + h.len) -
                           std::min(x.pos, h.pos);
      return span < wlen;
    };

    std::vector<PrefixTree::Match> occs = trie.find_all_divisors(word);
    for (const auto& m : occs) {
      Occ h{m.pos, m.len, m.basis};
      if (h.pos == focc.pos && h.len == focc.len && h.elem == focc.elem)
        continue;
      if (h.pos == gocc.pos && h.len == gocc.len && h.elem == gocc.elem)
        continue;
      if (side_ok(focc, h) && side_ok(gocc, h)) return false;
    }

    // Containment star: for a full-width container, only the canonical
    // proper occurrence keeps its pair; the rest chain through it.
    bool f_full = focc.pos == 0 && focc.len == wlen;
    bool g_full = gocc.pos == 0 && gocc.len == wlen;
    if (f_full || g_full) {
      std::optional<Occ> canon;
      for (const auto& m : occs) {
        if (m.pos == 0 && m.len == wlen) continue;  // proper only
        canon = Occ{m.pos, m.len, m.basis};
        break;  // find_all_divisors ordering is the canonical order
      }
      if (canon) {
        const Occ& inner = f_full ? gocc : focc;
        bool inner_full = inner.pos == 0 && inner.len == wlen;
        if (inner_full) return false;  // equal-lm pair reroutes via canon
        if (inner.pos != canon->pos || inner.len != canon->len ||
            inner.elem != canon->elem)
          return false;
      }
    }
    return true;
  };

  queue.filter(keep);
}

template <class Field>
struct GBResult {
  std::vector<PolyIdx> basis;  // monic, in discovery order (inputs first)
  GBStatus status = GBStatus::Complete;
  std::vector<Certificate<Field>> certificates;
};

template <class Field>
std::vector<Certificate<Field>> finalize_certificates(
    Context<Field>& ctx, const GBResult<Field>& result, const GBConfig& cfg,
    std::size_t num_inputs);

template <class Field>
GBResult<Field> compute_gb(Context<Field>& ctx,
                           const std::vector<PolyIdx>& inputs,
                           const GBConfig& cfg) {
  GBResult<Field> out;
  PrefixTree trie;
  PairQueue queue;
  std::uint64_t bound_discards = 0;
  bool track = cfg.proof != ProofMode::None;

  for (PolyIdx f : inputs) {
    if (ctx.is_zero_poly(f)) throw InputError("zero polynomial in input");
    PolyIdx monic = ctx.make_monic(f);
    auto idx = static_cast<std::uint32_t>(out.basis.size());
    out.basis.push_back(monic);
    trie.insert(ctx.mons.word(ctx.lm(monic)), idx);
    if (track) {
      Certificate<Field> cert;
      cert.target = monic;
      cert.terms.push_back({ctx.field.one(), ctx.one(), idx, ctx.one()});
      out.certificates.push_back(std::move(cert));
    }
    for (std::uint32_t j = 0; j <= idx; ++j) {
      for (const Ambiguity& amb : ambiguities(ctx, out.basis, idx, j)) {
        if (cfg.degree_bound && amb.degree > *cfg.degree_bound) {
          ++bound_discards;
          continue;
        }
        queue.push(amb);
      }
    }
  }
  if (cfg.gm_filter) gm_filter(ctx, out.basis, trie, queue);

  std::uint32_t iterations = 0;
  while (!queue.empty()) {
    if (cfg.max_iterations && iterations >= *cfg.max_iterations) {
      out.status = GBStatus::Truncated;
      out.certificates = finalize_certificates(ctx, out, cfg, inputs.size());
      return out;
    }
    std::vector<Ambiguity> batch = queue.pop_min();

    std::vector<RowSpec> seed;
    {
      std::unordered_set<RowSpec, RowSpecKey> dedup;
      auto add = [&](MonIdx l, std::uint32_t b, MonIdx r) {
        RowSpec spec{l, b, r};
        if (dedup.insert(spec).second) seed.push_back(spec);
      };
      for (const Ambiguity& amb : batch) {
        add(amb.a, amb.f, amb.b);
        add(amb.c, amb.g, amb.d);
      }
    }

    std::vector<RowSpec> rows =
        symbolic_preprocess(ctx, seed, out.basis, trie);
    MacaulayMatrix<Field> mat = build_matrix(ctx, rows, out.basis);
    ReducedBatch<Field> reduced = reduce_matrix(ctx.field, mat.matrix, cfg);
    update_basis(ctx, reduced, mat, out.basis, trie, queue, cfg,
                 bound_discards, track ? &out.certificates : nullptr);
    if (cfg.gm_filter) gm_filter(ctx, out.basis, trie, queue);
    ++iterations;
  }

  out.status =
      bound_discards == 0 ? GBStatus::Complete : GBStatus::Truncated;
  out.certificates = finalize_certificates(ctx, out, cfg, inputs.size());
  return out;
}

template <class Field>
std::vector<Certificate<Field>> finalize_certificates(
    Context<Field>& ctx, const GBResult<Field>& result, const GBConfig& cfg,
    std::size_t num_inputs) {
  if (cfg.proof != ProofMode::Full) return result.certificates;
  std::vector<Certificate<Field>> expanded;
  expanded.reserve(result.certificates.size());
  for (const Certificate<Field>& cert : result.certificates)
    expanded.push_back(expand_to_input(
        ctx, cert, expanded, static_cast<std::uint32_t>(num_inputs)));
  return expanded;
}

}  // namespace freegb
