#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "freegb/arena.hpp"
#include "freegb/common.hpp"
#include "freegb/field.hpp"
#include "freegb/order.hpp"

namespace freegb {

// One Groebner computation's world: the field, the ordering, and the three
// interning stores. All polynomial values are exact; a polynomial under
// construction is a descending-sorted term vector with no zero entries.
template <class Field>
class Context {
 public:
  using Elem = typename Field::Elem;
  using Term = std::pair<Elem, MonIdx>;

  Field field;
  Ordering ord;
  MonomialStore mons;
  CoeffPool<Field> pool;
  PolyStore<Field> polys;

  Context(Field f, Ordering o) : field(std::move(f)), ord(std::move(o)) {
    mons.set_variable_cap(ord.variable_count());
  }

  Cmp cmp(MonIdx a, MonIdx b) const { return ord.compare(a, b, mons); }

  MonIdx one() const { return mons.one(); }

  // Validates, sorts descending, and interns. Duplicate monomials are the
  // caller's bug (terms must be combined first); zero coefficients are
  // dropped silently so that mod-p images of integer input stay legal.
  PolyIdx intern_terms(std::vector<Term> terms) {
    std::erase_if(terms, [&](const Term& t) { return field.is_zero(t.first); });
    std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) {
      return cmp(x.second, y.second) == Cmp::GT;
    });
    for (std::size_t i = 1; i < terms.size(); ++i)
      if (terms[i - 1].second == terms[i].second)
        throw InputError("duplicate monomial in term list");
    return intern_sorted_terms(terms);
  }

  // Terms already strictly descending with nonzero coefficients.
  PolyIdx intern_sorted_terms(const std::vector<Term>& terms) {
    std::vector<MonIdx> ms(terms.size());
    std::vector<Elem> cs(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      cs[i] = terms[i].first;
      Field::canon(cs[i]);
      ms[i] = terms[i].second;
    }
    CoeffHandle h = pool.intern(std::span<const Elem>(cs.data(), cs.size()));
    return polys.intern_sorted(std::span<const MonIdx>(ms.data(), ms.size()), h);
  }

  bool is_zero_poly(PolyIdx f) const { return polys.view(f).len() == 0; }

  MonIdx lm(PolyIdx f) const {
    auto v = polys.view(f);
    if (v.len() == 0) throw DomainError("leading monomial of zero polynomial");
    return v.mons[0];
  }

  Elem lc(PolyIdx f) const {
    auto v = polys.view(f);
    if (v.len() == 0) throw DomainError("leading coefficient of zero polynomial");
    return pool.seq(v.coeffs)[0];
  }

  // left * f * right. The coefficient sequence is untouched, so the result
  // references the same pool handle as f.
  PolyIdx mul_word(MonIdx left, PolyIdx f, MonIdx right) {
    auto v = polys.view(f);
    std::vector<MonIdx> ms(v.len());
    for (std::uint32_t i = 0; i < v.len(); ++i)
      ms[i] = mons.concat3(left, v.mons[i], right);
    return polys.intern_sorted(std::span<const MonIdx>(ms.data(), ms.size()),
                               v.coeffs);
  }

  std::vector<Term> terms(PolyIdx f) const {
    auto v = polys.view(f);
    auto cs = pool.seq(v.coeffs);
    std::vector<Term> out;
    out.reserve(v.len());
    for (std::uint32_t i = 0; i < v.len(); ++i)
      out.emplace_back(cs[i], v.mons[i]);
    return out;
  }

  // acc += scale * (left * f * right), keeping acc sorted descending with
  // no zero coefficients. Translation invariance of the ordering keeps the
  // shifted term list sorted, so this is a plain two-way merge.
  void add_scaled(std::vector<Term>& acc, const Elem& scale, MonIdx left,
                  PolyIdx f, MonIdx right) {
    if (field.is_zero(scale)) return;
    auto v = polys.view(f);
    auto cs = pool.seq(v.coeffs);
    std::vector<Term> rhs;
    rhs.reserve(v.len());
    for (std::uint32_t i = 0; i < v.len(); ++i)
      rhs.emplace_back(field.mul(scale, cs[i]),
                       mons.concat3(left, v.mons[i], right));
    std::vector<Term> merged;
    merged.reserve(acc.size() + rhs.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < rhs.size()) {
      if (j == rhs.size()) {
        merged.push_back(acc[i++]);
      } else if (i == acc.size()) {
        merged.push_back(rhs[j++]);
      } else {
        Cmp c = cmp(acc[i].second, rhs[j].second);
        if (c == Cmp::GT) {
          merged.push_back(acc[i++]);
        } else if (c == Cmp::LT) {
          merged.push_back(rhs[j++]);
        } else {
          Elem s = field.add(acc[i].first, rhs[j].first);
          if (!field.is_zero(s)) merged.emplace_back(s, acc[i].second);
          ++i;
          ++j;
        }
      }
    }
    acc = std::move(merged);
  }

  PolyIdx make_monic(PolyIdx f) {
    Elem c = lc(f);
    if (field.is_one(c)) return f;
    Elem s = field.inv(c);
    auto v = polys.view(f);
    auto cs = pool.seq(v.coeffs);
    std::vector<Elem> scaled(v.len());
    for (std::uint32_t i = 0; i < v.len(); ++i) scaled[i] = field.mul(s, cs[i]);
    CoeffHandle h =
        pool.intern(std::span<const Elem>(scaled.data(), scaled.size()));
    return polys.intern_sorted(v.mons, h);
  }
};

using ZpContext = Context<ZpField>;
using QContext = Context<QField>;

}  // namespace freegb
