#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "freegb/context.hpp"
#include "freegb/f4.hpp"

namespace freegb {

// Parsed problem file. Coefficients are kept as exact rationals until a
// field is chosen; over Z_p denominators are rejected at parse time.
struct RawTerm {
  mpq_class coeff;
  std::vector<Var> word;
};

struct Problem {
  std::vector<std::string> variables;
  std::vector<std::uint32_t> blocks;  // empty = deglex
  std::uint32_t characteristic = 0;
  std::vector<std::vector<RawTerm>> polys;
  std::vector<int> poly_lines;  // source line of each poly, for diagnostics
};

// Line-oriented grammar:
//   # comment, blank lines ignored
//   vars <name>+
//   order deglex | order blocks <k1> ... <kn>
//   char <c>
//   poly <expr>
// expr = ['-'] term (('+'|'-') term)*; term = [coeff '*'] factor ('*' factor)*;
// factor = var ['^' posint] | 1; coeff = integer ['/' posint (char 0 only)].
Problem parse_problem(const std::string& text);

Ordering make_ordering(const Problem& p);

// Expression-syntax printers (round-trip with the parser).
std::string print_word(Word w, const std::vector<std::string>& names);

std::string coeff_repr(std::uint32_t c);
std::string coeff_repr(const mpq_class& c);
bool coeff_is_negative(std::uint32_t);
bool coeff_is_negative(const mpq_class& c);
std::uint32_t coeff_abs(std::uint32_t c);
mpq_class coeff_abs(const mpq_class& c);

template <class Field>
std::string print_poly(const Context<Field>& ctx, PolyIdx f,
                       const std::vector<std::string>& names) {
  auto view = ctx.polys.view(f);
  auto cs = ctx.pool.seq(view.coeffs);
  if (view.len() == 0) return "0";
  std::string out;
  for (std::uint32_t i = 0; i < view.len(); ++i) {
    auto c = cs[i];
    bool neg = coeff_is_negative(c);
    auto mag = coeff_abs(c);
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    Word w = ctx.mons.word(view.mons[i]);
    bool unit = Field::eq(mag, Field::one());
    if (unit) {
      out += print_word(w, names);
    } else {
      out += coeff_repr(mag);
      out += "*";
      out += print_word(w, names);
    }
  }
  return out;
}

// Certificate text: one line per basis element,
//   g<i> := c * left * f<j> * right [+|- ...]
// f<j> is the j-th input polynomial as written (so coefficients fold in the
// inverse of its original leading coefficient); g<k>, k < i, an earlier
// basis element.
template <class Field>
std::string print_certificate(Context<Field>& ctx,
                              const Certificate<Field>& cert,
                              std::uint32_t index_1based,
                              std::uint32_t num_inputs,
                              const std::vector<typename Field::Elem>& input_lcs,
                              const std::vector<std::string>& names) {
  std::string out = "g" + std::to_string(index_1based) + " :=";
  if (cert.terms.empty()) out += " 0";
  bool first = true;
  for (const auto& t : cert.terms) {
    typename Field::Elem c = t.coeff;
    std::string label;
    if (t.source < num_inputs) {
      c = ctx.field.div(c, input_lcs[t.source]);
      label = "f" + std::to_string(t.source + 1);
    } else {
      label = "g" + std::to_string(t.source + 1);
    }
    bool neg = coeff_is_negative(c);
    auto mag = coeff_abs(c);
    out += first ? (neg ? " - " : " ") : (neg ? " - " : " + ");
    first = false;
    out += coeff_repr(mag);
    out += " * " + print_word(ctx.mons.word(t.left), names);
    out += " * " + label;
    out += " * " + print_word(ctx.mons.word(t.right), names);
  }
  return out;
}

// One parsed certificate line.
struct RawCertTerm {
  mpq_class coeff;
  std::vector<Var> left;
  bool source_is_input = true;
  std::uint32_t source = 0;  // 1-based ordinal as written
  std::vector<Var> right;
};

struct RawCertificate {
  std::uint32_t index = 0;  // i of g<i>
  std::vector<RawCertTerm> terms;
};

RawCertificate parse_certificate_line(const std::string& line, int lineno,
                                      const Problem& problem);

// Parse a single polynomial expression (used for basis files).
std::vector<RawTerm> parse_poly_expr(const std::string& text, int lineno,
                                     const Problem& problem);

}  // namespace freegb
