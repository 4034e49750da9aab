#pragma once

#include <vector>

#include "freegb/context.hpp"

namespace freegb {

// Cofactor representation target = sum coeff * left * basis[source] * right,
// an exact identity over the configured field. Sources index the basis in
// discovery order; the first num_inputs entries are the (monic) inputs.
template <class Field>
struct Certificate {
  using Elem = typename Field::Elem;

  struct CTerm {
    Elem coeff;
    MonIdx left;
    std::uint32_t source;
    MonIdx right;
  };

  PolyIdx target;
  std::vector<CTerm> terms;
};

// Exact expansion check. Independent of the F4 machinery: only store
// arithmetic is used, so a passing certificate is a genuine cross-check.
template <class Field>
bool verify(Context<Field>& ctx, const Certificate<Field>& cert,
            const std::vector<PolyIdx>& basis) {
  using Term = typename Context<Field>::Term;
  std::vector<Term> acc;
  for (const auto& t : cert.terms) {
    if (t.source >= basis.size())
      throw FormatError("certificate references unknown source");
    ctx.add_scaled(acc, t.coeff, t.left, basis[t.source], t.right);
  }
  std::vector<Term> want = ctx.terms(cert.target);
  if (acc.size() != want.size()) return false;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i].second != want[i].second) return false;
    if (!ctx.field.eq(acc[i].first, want[i].first)) return false;
  }
  return true;
}

// Backward substitution: replace every non-input source by its (already
// expanded) certificate. Like terms are combined; the result references
// inputs only.
template <class Field>
Certificate<Field> expand_to_input(
    Context<Field>& ctx, const Certificate<Field>& cert,
    const std::vector<Certificate<Field>>& expanded_earlier,
    std::uint32_t num_inputs) {
  using CTerm = typename Certificate<Field>::CTerm;

  std::vector<CTerm> flat;
  for (const CTerm& t : cert.terms) {
    if (t.source < num_inputs) {
      flat.push_back(t);
      continue;
    }
    if (t.source >= expanded_earlier.size())
      throw FormatError("certificate references a later element");
    for (const CTerm& u : expanded_earlier[t.source].terms) {
      flat.push_back(CTerm{ctx.field.mul(t.coeff, u.coeff),
                           ctx.mons.concat(t.left, u.left), u.source,
                           ctx.mons.concat(u.right, t.right)});
    }
  }
  auto key_less = [&](const CTerm& x, const CTerm& y) {
    if (x.source != y.source) return x.source < y.source;
    Cmp c = ctx.cmp(x.left, y.left);
    if (c != Cmp::EQ) return c == Cmp::LT;
    return ctx.cmp(x.right, y.right) == Cmp::LT;
  };
  std::sort(flat.begin(), flat.end(), key_less);

  Certificate<Field> out;
  out.target = cert.target;
  for (const CTerm& t : flat) {
    if (!out.terms.empty() && out.terms.back().source == t.source &&
        out.terms.back().left == t.left && out.terms.back().right == t.right) {
      out.terms.back().coeff = ctx.field.add(out.terms.back().coeff, t.coeff);
    } else {
      out.terms.push_back(t);
    }
  }
  std::erase_if(out.terms,
                [&](const CTerm& t) { return ctx.field.is_zero(t.coeff); });
  return out;
}

}  // namespace freegb
