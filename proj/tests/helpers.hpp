// Shared test scaffolding: a small world wrapping a Context plus the
// expression parser, so tests can talk in the CLI syntax.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freegb/f4.hpp"
#include "freegb/problem.hpp"

namespace helpers {

using namespace freegb;

template <class Field>
struct World {
  Problem problem;
  Context<Field> ctx;

  World(std::vector<std::string> vars, Field field,
        std::vector<std::uint32_t> blocks = {})
      : problem(), ctx(make(std::move(vars), std::move(field), blocks)) {}

  Context<Field> make(std::vector<std::string> vars, Field field,
                      const std::vector<std::uint32_t>& blocks) {
    problem.variables = std::move(vars);
    problem.blocks = blocks;
    if constexpr (std::is_same_v<Field, ZpField>)
      problem.characteristic = field.p;
    return Context<Field>(std::move(field), make_ordering(problem));
  }

  typename Field::Elem coeff(const mpq_class& q) {
    if constexpr (std::is_same_v<Field, ZpField>) {
      auto num = ctx.field.from_mpz(q.get_num());
      auto den = ctx.field.from_mpz(q.get_den());
      return ctx.field.div(num, den);
    } else {
      return q;
    }
  }

  PolyIdx poly(const std::string& expr) {
    auto raw = parse_poly_expr(expr, 1, problem);
    std::vector<typename Context<Field>::Term> terms;
    for (const RawTerm& t : raw)
      terms.emplace_back(coeff(t.coeff), ctx.mons.intern(Word(t.word)));
    return ctx.intern_terms(std::move(terms));
  }

  MonIdx mon(const std::string& expr) {
    if (expr == "1") return ctx.one();
    auto raw = parse_poly_expr(expr, 1, problem);
    return ctx.mons.intern(Word(raw.at(0).word));
  }

  std::string str(PolyIdx f) { return print_poly(ctx, f, problem.variables); }

  std::string str_terms(const std::vector<typename Context<Field>::Term>& t) {
    return print_poly(ctx, ctx.intern_sorted_terms(t), problem.variables);
  }
};

using QWorld = World<QField>;
using ZpWorld = World<ZpField>;

// Diamond-lemma oracle: every ambiguity of the basis (within the bound)
// must have an S-polynomial that fully reduces to zero.
template <class Field>
bool diamond_ok(Context<Field>& ctx, const std::vector<PolyIdx>& basis,
                std::optional<std::uint32_t> bound) {
  PrefixTree trie;
  for (std::size_t i = 0; i < basis.size(); ++i)
    trie.insert(ctx.mons.word(ctx.lm(basis[i])),
                static_cast<std::uint32_t>(i));
  for (std::uint32_t fi = 0; fi < basis.size(); ++fi) {
    for (std::uint32_t gi = 0; gi < basis.size(); ++gi) {
      for (const Ambiguity& amb : ambiguities(ctx, basis, fi, gi)) {
        if (bound && amb.degree > *bound) continue;
        auto nf = normal_form(ctx, s_polynomial_terms(ctx, amb, basis),
                              basis, trie);
        if (!nf.empty()) return false;
      }
    }
  }
  return true;
}

template <class Field>
bool reduces_to_zero(Context<Field>& ctx, PolyIdx f,
                     const std::vector<PolyIdx>& basis) {
  PrefixTree trie;
  for (std::size_t i = 0; i < basis.size(); ++i)
    trie.insert(ctx.mons.word(ctx.lm(basis[i])),
                static_cast<std::uint32_t>(i));
  return normal_form(ctx, ctx.terms(f), basis, trie).empty();
}

}  // namespace helpers
