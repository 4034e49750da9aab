#include <random>

#include "doctest.h"
#include "freegb/context.hpp"

using namespace freegb;

namespace {

std::vector<Var> random_word(std::mt19937_64& rng, std::uint32_t nvars,
                             std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<Var> letter(1, nvars);
  std::vector<Var> w(len(rng));
  for (Var& v : w) v = letter(rng);
  return w;
}

}  // namespace

TEST_CASE("interning the empty word twice is idempotent") {
  MonomialStore store;
  MonIdx a = store.intern(Word{});
  MonIdx b = store.intern(Word{});
  CHECK(a == b);
  CHECK(store.length(a) == 0);
  CHECK(a == store.one());
}

TEST_CASE("store layout of x, yx, xyx, xyz") {
  MonomialStore store;
  std::vector<Var> x{1}, yx{2, 1}, xyx{1, 2, 1}, xyz{1, 2, 3};
  MonIdx i1 = store.intern(Word(x));
  MonIdx i2 = store.intern(Word(yx));
  MonIdx i3 = store.intern(Word(xyx));
  MonIdx i4 = store.intern(Word(xyz));
  CHECK(i1 != i2);
  CHECK(i1 != i3);
  CHECK(i1 != i4);
  CHECK(i2 != i3);
  CHECK(i2 != i4);
  CHECK(i3 != i4);
  CHECK(store.intern(Word(xyx)) == i3);  // dedup hits the same index
  CHECK(words_equal(store.word(i2), Word(yx)));
}

TEST_CASE("undeclared variable id is an input error") {
  MonomialStore store;
  store.set_variable_cap(2);
  std::vector<Var> bad{1, 3};
  CHECK_THROWS_AS(store.intern(Word(bad)), InputError);
  std::vector<Var> zero{0};
  CHECK_THROWS_AS(store.intern(Word(zero)), InputError);
}

TEST_CASE("monomial products: identity, concatenation, scratch discard") {
  MonomialStore store;
  std::vector<Var> xy{1, 2}, x{1}, yx{2, 1};
  MonIdx one = store.one();
  MonIdx m_xy = store.intern(Word(xy));
  MonIdx m_x = store.intern(Word(x));
  MonIdx m_yx = store.intern(Word(yx));

  CHECK(store.concat(one, m_xy) == m_xy);
  CHECK(store.concat(m_xy, one) == m_xy);

  MonIdx m_xyx = store.concat(m_xy, m_x);
  std::vector<Var> xyx{1, 2, 1};
  CHECK(words_equal(store.word(m_xyx), Word(xyx)));
  CHECK(store.length(m_xyx) == store.length(m_xy) + store.length(m_x));

  MonIdx m1 = store.concat(m_yx, m_yx);
  std::size_t count = store.size();
  MonIdx m2 = store.concat(m_yx, m_yx);
  CHECK(m1 == m2);
  CHECK(store.size() == count);  // discarded scratch left the store unchanged
}

TEST_CASE("concat is associative through dedup on random words") {
  MonomialStore store;
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    auto wa = random_word(rng, 4, 6);
    auto wb = random_word(rng, 4, 6);
    auto wc = random_word(rng, 4, 6);
    MonIdx a = store.intern(Word(wa));
    MonIdx b = store.intern(Word(wb));
    MonIdx c = store.intern(Word(wc));
    CHECK(store.concat(a, store.concat(b, c)) ==
          store.concat(store.concat(a, b), c));
  }
}

TEST_CASE("index-to-word stays a bijection under random interning") {
  MonomialStore store;
  std::mt19937_64 rng(11);
  std::vector<std::vector<Var>> words;
  std::vector<MonIdx> idx;
  for (int i = 0; i < 500; ++i) {
    auto w = random_word(rng, 3, 8);
    MonIdx m = store.intern(Word(w));
    words.push_back(std::move(w));
    idx.push_back(m);
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(words_equal(store.word(idx[i]), Word(words[i])));
    for (std::size_t j = 0; j < i; ++j) {
      bool same_word = words_equal(Word(words[i]), Word(words[j]));
      CHECK(same_word == (idx[i] == idx[j]));
    }
  }
}

TEST_CASE("polynomial interning: Fig-style layout over Q") {
  QContext ctx(QField{}, Ordering::deglex(3));
  std::vector<Var> x{1}, yx{2, 1}, xyx{1, 2, 1}, xyz{1, 2, 3};
  MonIdx m_x = ctx.mons.intern(Word(x));
  MonIdx m_yx = ctx.mons.intern(Word(yx));
  MonIdx m_xyx = ctx.mons.intern(Word(xyx));
  MonIdx m_xyz = ctx.mons.intern(Word(xyz));

  PolyIdx f = ctx.intern_terms({{mpq_class(1, 2), m_xyz},
                                {mpq_class(2), m_xyx},
                                {mpq_class(-1), m_yx},
                                {mpq_class(2, 3), m_x}});
  auto view = ctx.polys.view(f);
  REQUIRE(view.len() == 4);
  // descending deglex: xyz > xyx > yx > x (xyz vs xyx: z > x at position 2)
  CHECK(view.mons[0] == m_xyz);
  CHECK(view.mons[1] == m_xyx);
  CHECK(view.mons[2] == m_yx);
  CHECK(view.mons[3] == m_x);
  CHECK(ctx.lm(f) == m_xyz);
  CHECK(ctx.lc(f) == mpq_class(1, 2));
}

TEST_CASE("single term polynomial") {
  QContext ctx(QField{}, Ordering::deglex(2));
  std::vector<Var> xy{1, 2};
  MonIdx m = ctx.mons.intern(Word(xy));
  PolyIdx f = ctx.intern_terms({{mpq_class(3, 7), m}});
  CHECK(ctx.lm(f) == m);
  CHECK(ctx.lc(f) == mpq_class(3, 7));
}

TEST_CASE("duplicate monomials in a term list are rejected") {
  QContext ctx(QField{}, Ordering::deglex(2));
  MonIdx m = ctx.mons.intern(std::vector<Var>{1, 2});
  CHECK_THROWS_AS(
      ctx.intern_terms({{mpq_class(1), m}, {mpq_class(2), m}}),
      InputError);
}

TEST_CASE("lm and lc of the zero polynomial are domain errors") {
  QContext ctx(QField{}, Ordering::deglex(1));
  PolyIdx zero = ctx.intern_terms({});
  CHECK(ctx.is_zero_poly(zero));
  CHECK_THROWS_AS(ctx.lm(zero), DomainError);
  CHECK_THROWS_AS(ctx.lc(zero), DomainError);
}

TEST_CASE("lm of a constant polynomial is the empty monomial") {
  QContext ctx(QField{}, Ordering::deglex(1));
  PolyIdx c = ctx.intern_terms({{mpq_class(5), ctx.one()}});
  CHECK(ctx.lm(c) == ctx.one());
}

TEST_CASE("monomial multiples share one coefficient sequence") {
  QContext ctx(QField{}, Ordering::deglex(3));
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int iter = 0; iter < 50; ++iter) {
    // random polynomial with distinct random monomials
    std::vector<QContext::Term> terms;
    std::vector<MonIdx> used;
    while (terms.size() < 4) {
      auto w = random_word(rng, 3, 5);
      MonIdx m = ctx.mons.intern(Word(w));
      if (std::find(used.begin(), used.end(), m) != used.end()) continue;
      int c = coeff(rng);
      if (c == 0) c = 1;
      used.push_back(m);
      terms.emplace_back(mpq_class(c), m);
    }
    PolyIdx p = ctx.intern_terms(terms);
    MonIdx v = ctx.mons.intern(Word(random_word(rng, 3, 4)));
    MonIdx w = ctx.mons.intern(Word(random_word(rng, 3, 4)));
    PolyIdx vpw = ctx.mul_word(v, p, w);
    CHECK(ctx.polys.view(vpw).coeffs == ctx.polys.view(p).coeffs);
  }
}

TEST_CASE("rational coefficients are pooled in lowest terms") {
  QContext ctx(QField{}, Ordering::deglex(2));
  MonIdx mx = ctx.mons.intern(std::vector<Var>{1});
  MonIdx my = ctx.mons.intern(std::vector<Var>{2});
  PolyIdx a = ctx.intern_terms({{mpq_class(2, 4), mx}});
  PolyIdx b = ctx.intern_terms({{mpq_class(1, 2), my}});
  CHECK(ctx.polys.view(a).coeffs == ctx.polys.view(b).coeffs);
}

TEST_CASE("interned polynomials are deduplicated") {
  ZpContext ctx(ZpField(7), Ordering::deglex(2));
  MonIdx mx = ctx.mons.intern(std::vector<Var>{1});
  MonIdx my = ctx.mons.intern(std::vector<Var>{2});
  PolyIdx a = ctx.intern_terms({{3u, my}, {5u, mx}});
  PolyIdx b = ctx.intern_terms({{5u, mx}, {3u, my}});
  CHECK(a == b);
}
