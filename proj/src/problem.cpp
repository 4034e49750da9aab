#include "freegb/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace freegb {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0]))))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct Tok {
  enum Kind { Int, Name, Plus, Minus, Star, Caret, Slash, End } kind;
  std::string text;
};

std::vector<Tok> lex_expr(const std::string& s, int lineno) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      out.push_back({Tok::Int, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::Name, s.substr(i, j - i)});
      i = j;
      continue;
    }
    switch (c) {
      case '+': out.push_back({Tok::Plus, "+"}); break;
      case '-': out.push_back({Tok::Minus, "-"}); break;
      case '*': out.push_back({Tok::Star, "*"}); break;
      case '^': out.push_back({Tok::Caret, "^"}); break;
      case '/': out.push_back({Tok::Slash, "/"}); break;
      default:
        throw ParseError(lineno, std::string("unexpected character '") + c +
                                     "' in expression");
    }
    ++i;
  }
  out.push_back({Tok::End, ""});
  return out;
}

class ExprParser {
 public:
  ExprParser(std::vector<Tok> toks, int lineno, const Problem& problem)
      : toks_(std::move(toks)), lineno_(lineno), problem_(problem) {}

  const Tok& peek() const { return toks_[pos_]; }
  Tok next() { return toks_[pos_++]; }
  bool accept(Tok::Kind k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(lineno_, msg);
  }

  Var var_id(const std::string& name) const {
    for (std::size_t i = 0; i < problem_.variables.size(); ++i)
      if (problem_.variables[i] == name) return static_cast<Var>(i + 1);
    fail("unknown variable '" + name + "'");
  }

  // factor = var ['^' posint] | 1 ; appends letters to word.
  // Returns false when the lookahead is not a factor.
  bool parse_factor(std::vector<Var>& word) {
    if (peek().kind == Tok::Int) {
      if (peek().text != "1") return false;
      next();
      return true;  // the empty word
    }
    if (peek().kind != Tok::Name) return false;
    Var v = var_id(next().text);
    unsigned long e = 1;
    if (accept(Tok::Caret)) {
      if (peek().kind != Tok::Int) fail("expected exponent after '^'");
      e = std::stoul(next().text);
      if (e == 0) fail("exponent must be positive");
    }
    for (unsigned long k = 0; k < e; ++k) word.push_back(v);
    return true;
  }

  mpq_class parse_coeff(bool& had_coeff) {
    had_coeff = false;
    if (peek().kind != Tok::Int) return mpq_class(1);
    // "1" with no following '/' is the empty-word factor, not a coefficient.
    mpz_class num(peek().text);
    if (toks_[pos_ + 1].kind == Tok::Slash) {
      next();
      next();
      if (problem_.characteristic != 0)
        fail("rational coefficients need characteristic 0");
      if (peek().kind != Tok::Int) fail("expected denominator after '/'");
      mpz_class den(next().text);
      if (den == 0) fail("zero denominator");
      had_coeff = true;
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    if (num == 1 && toks_[pos_ + 1].kind != Tok::Star) return mpq_class(1);
    next();
    had_coeff = true;
    return mpq_class(num);
  }

  RawTerm parse_term(int sign) {
    RawTerm t;
    bool had_coeff = false;
    t.coeff = parse_coeff(had_coeff);
    if (had_coeff) {
      if (!accept(Tok::Star)) {
        fail("expected '*' and a monomial after coefficient");
      }
    }
    if (!parse_factor(t.word)) fail("expected a monomial factor");
    while (accept(Tok::Star)) {
      if (!parse_factor(t.word)) fail("expected a factor after '*'");
    }
    if (sign < 0) t.coeff = -t.coeff;
    return t;
  }

  std::vector<RawTerm> parse_expr() {
    std::vector<RawTerm> terms;
    int sign = accept(Tok::Minus) ? -1 : 1;
    terms.push_back(parse_term(sign));
    for (;;) {
      if (accept(Tok::Plus)) {
        terms.push_back(parse_term(1));
      } else if (accept(Tok::Minus)) {
        terms.push_back(parse_term(-1));
      } else {
        break;
      }
    }
    if (peek().kind != Tok::End) fail("trailing input after expression");
    return terms;
  }

  // cterm = coeff '*' word '*' (f<k>|g<k>) '*' word
  RawCertTerm parse_cert_term(int sign) {
    RawCertTerm t;
    if (peek().kind != Tok::Int) fail("certificate term needs a coefficient");
    bool had = false;
    t.coeff = parse_coeff(had);
    if (!had && peek().kind == Tok::Int && peek().text == "1") {
      next();  // plain "1" coefficient
    } else if (!had) {
      fail("certificate term needs a coefficient");
    }
    if (!accept(Tok::Star)) fail("expected '*' after coefficient");
    bool have_source = false;
    std::vector<Var>* side = &t.left;
    for (;;) {
      if (peek().kind == Tok::Name && !have_source) {
        const std::string& name = peek().text;
        if ((name[0] == 'f' || name[0] == 'g') && name.size() > 1 &&
            std::all_of(name.begin() + 1, name.end(), [](char c) {
              return std::isdigit(static_cast<unsigned char>(c));
            })) {
          bool is_var = false;
          for (const auto& v : problem_.variables)
            if (v == name) is_var = true;
          if (!is_var) {
            t.source_is_input = name[0] == 'f';
            t.source = static_cast<std::uint32_t>(
                std::stoul(name.substr(1)));
            have_source = true;
            side = &t.right;
            next();
            if (!accept(Tok::Star)) break;
            continue;
          }
        }
      }
      if (!parse_factor(*side)) fail("expected a factor in certificate term");
      if (!accept(Tok::Star)) break;
    }
    if (!have_source) fail("certificate term has no f<j>/g<k> source");
    if (sign < 0) t.coeff = -t.coeff;
    return t;
  }

  std::vector<RawCertTerm> parse_cert_terms() {
    std::vector<RawCertTerm> terms;
    int sign = accept(Tok::Minus) ? -1 : 1;
    terms.push_back(parse_cert_term(sign));
    for (;;) {
      if (accept(Tok::Plus)) {
        terms.push_back(parse_cert_term(1));
      } else if (accept(Tok::Minus)) {
        terms.push_back(parse_cert_term(-1));
      } else {
        break;
      }
    }
    if (peek().kind != Tok::End) fail("trailing input after certificate");
    return terms;
  }

 private:
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  int lineno_;
  const Problem& problem_;
};

std::string strip(const std::string& line) {
  std::string s = line;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<RawTerm> parse_poly_expr(const std::string& text, int lineno,
                                     const Problem& problem) {
  ExprParser p(lex_expr(text, lineno), lineno, problem);
  std::vector<RawTerm> terms = p.parse_expr();
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].word == terms[j].word)
        throw ParseError(lineno, "duplicate monomial in term list");
  return terms;
}

RawCertificate parse_certificate_line(const std::string& line, int lineno,
                                      const Problem& problem) {
  auto pos = line.find(":=");
  if (pos == std::string::npos)
    throw ParseError(lineno, "certificate line needs 'g<i> := ...'");
  std::string head = strip(line.substr(0, pos));
  if (head.size() < 2 || head[0] != 'g')
    throw ParseError(lineno, "certificate line must start with g<i>");
  RawCertificate cert;
  try {
    cert.index = static_cast<std::uint32_t>(std::stoul(head.substr(1)));
  } catch (...) {
    throw ParseError(lineno, "bad certificate index");
  }
  ExprParser p(lex_expr(line.substr(pos + 2), lineno), lineno, problem);
  cert.terms = p.parse_cert_terms();
  return cert;
}

Problem parse_problem(const std::string& text) {
  Problem out;
  bool have_vars = false, have_order = false, have_char = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> poly_lines;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "vars") {
      if (have_vars) throw ParseError(lineno, "duplicate vars line");
      std::string name;
      while (ls >> name) {
        if (!valid_name(name))
          throw ParseError(lineno, "bad variable name '" + name + "'");
        for (const auto& v : out.variables)
          if (v == name)
            throw ParseError(lineno, "duplicate variable '" + name + "'");
        out.variables.push_back(name);
      }
      if (out.variables.empty())
        throw ParseError(lineno, "vars line declares nothing");
      have_vars = true;
    } else if (head == "order") {
      if (have_order) throw ParseError(lineno, "duplicate order line");
      if (!have_vars) throw ParseError(lineno, "order before vars");
      std::string kind;
      ls >> kind;
      if (kind == "deglex") {
        out.blocks.clear();
      } else if (kind == "blocks") {
        std::uint32_t b;
        while (ls >> b) {
          if (b == 0) throw ParseError(lineno, "block indices are 1-based");
          out.blocks.push_back(b);
        }
        if (out.blocks.size() != out.variables.size())
          throw ParseError(lineno, "need one block index per variable");
      } else {
        throw ParseError(lineno, "order must be deglex or blocks");
      }
      have_order = true;
    } else if (head == "char") {
      if (have_char) throw ParseError(lineno, "duplicate char line");
      unsigned long c = 0;
      if (!(ls >> c)) throw ParseError(lineno, "char needs a number");
      if (c != 0) {
        if (c >= (1ul << 31) || !is_prime_u32(static_cast<std::uint32_t>(c)))
          throw ParseError(lineno,
                           "characteristic must be 0 or a prime < 2^31");
      }
      out.characteristic = static_cast<std::uint32_t>(c);
      have_char = true;
    } else if (head == "poly") {
      if (!have_vars) throw ParseError(lineno, "poly before vars");
      if (!have_char) throw ParseError(lineno, "poly before char");
      std::string rest;
      std::getline(ls, rest);
      poly_lines.emplace_back(lineno, rest);
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!have_vars) throw ParseError(lineno, "missing vars line");
  if (!have_order) throw ParseError(lineno, "missing order line");
  if (!have_char) throw ParseError(lineno, "missing char line");

  for (const auto& [ln, expr] : poly_lines) {
    out.polys.push_back(parse_poly_expr(expr, ln, out));
    out.poly_lines.push_back(ln);
  }
  return out;
}

Ordering make_ordering(const Problem& p) {
  if (p.blocks.empty())
    return Ordering::deglex(static_cast<std::uint32_t>(p.variables.size()));
  return Ordering::blocks(p.blocks);
}

std::string print_word(Word w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += names[w[i] - 1];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string coeff_repr(std::uint32_t c) { return std::to_string(c); }

std::string coeff_repr(const mpq_class& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

bool coeff_is_negative(std::uint32_t) { return false; }
bool coeff_is_negative(const mpq_class& c) { return sgn(c) < 0; }

std::uint32_t coeff_abs(std::uint32_t c) { return c; }
mpq_class coeff_abs(const mpq_class& c) { return abs(c); }

}  // namespace freegb
