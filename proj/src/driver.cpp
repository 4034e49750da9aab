#include "freegb/driver.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace freegb {

namespace {

ZpField::Elem raw_coeff(const ZpField& f, const mpq_class& q) {
  // Denominators were rejected at parse time for char p.
  return f.from_mpz(q.get_num());
}

mpq_class raw_coeff(const QField&, const mpq_class& q) { return q; }

template <class Field>
PolyIdx intern_raw(Context<Field>& ctx, const std::vector<RawTerm>& raw,
                   int lineno) {
  std::vector<typename Context<Field>::Term> terms;
  terms.reserve(raw.size());
  for (const RawTerm& t : raw)
    terms.emplace_back(raw_coeff(ctx.field, t.coeff),
                       ctx.mons.intern(Word(t.word)));
  try {
    PolyIdx p = ctx.intern_terms(std::move(terms));
    if (ctx.is_zero_poly(p)) throw ParseError(lineno, "polynomial is zero");
    return p;
  } catch (const InputError& e) {
    throw ParseError(lineno, e.what());
  }
}

template <class Field>
RunOutput run_typed(Field field, const Problem& problem, const GBConfig& cfg) {
  Context<Field> ctx(std::move(field), make_ordering(problem));
  std::vector<PolyIdx> inputs;
  std::vector<typename Field::Elem> input_lcs;
  for (std::size_t i = 0; i < problem.polys.size(); ++i) {
    PolyIdx p = intern_raw(ctx, problem.polys[i], problem.poly_lines[i]);
    inputs.push_back(p);
    input_lcs.push_back(ctx.lc(p));
  }

  GBResult<Field> res = compute_gb(ctx, inputs, cfg);

  RunOutput out;
  out.complete = res.status == GBStatus::Complete;
  for (PolyIdx g : res.basis)
    out.basis_lines.push_back(print_poly(ctx, g, problem.variables));
  if (cfg.proof != ProofMode::None) {
    for (std::size_t i = 0; i < res.certificates.size(); ++i)
      out.cert_lines.push_back(print_certificate(
          ctx, res.certificates[i], static_cast<std::uint32_t>(i + 1),
          static_cast<std::uint32_t>(inputs.size()), input_lcs,
          problem.variables));
  }
  return out;
}

template <class Field>
std::vector<typename Context<Field>::Term> eval_cert_terms(
    Context<Field>& ctx, const RawCertificate& cert,
    const std::vector<PolyIdx>& inputs, const std::vector<PolyIdx>& basis) {
  std::vector<typename Context<Field>::Term> acc;
  for (const RawCertTerm& t : cert.terms) {
    PolyIdx src;
    if (t.source_is_input) {
      if (t.source == 0 || t.source > inputs.size())
        throw FormatError("certificate references unknown input f" +
                          std::to_string(t.source));
      src = inputs[t.source - 1];
    } else {
      if (t.source == 0 || t.source >= cert.index || t.source > basis.size())
        throw FormatError("certificate g" + std::to_string(cert.index) +
                          " references g" + std::to_string(t.source));
      src = basis[t.source - 1];
    }
    ctx.add_scaled(acc, raw_coeff(ctx.field, t.coeff),
                   ctx.mons.intern(Word(t.left)), src,
                   ctx.mons.intern(Word(t.right)));
  }
  return acc;
}

template <class Field>
VerifyOutput verify_typed(Field field, const Problem& problem,
                          const std::vector<std::string>& basis_lines,
                          const std::vector<std::string>& cert_lines) {
  Context<Field> ctx(std::move(field), make_ordering(problem));
  std::vector<PolyIdx> inputs;
  for (std::size_t i = 0; i < problem.polys.size(); ++i)
    inputs.push_back(
        intern_raw(ctx, problem.polys[i], problem.poly_lines[i]));

  std::vector<PolyIdx> basis;
  for (std::size_t i = 0; i < basis_lines.size(); ++i) {
    auto raw = parse_poly_expr(basis_lines[i], static_cast<int>(i + 1),
                               problem);
    basis.push_back(intern_raw(ctx, raw, static_cast<int>(i + 1)));
  }

  VerifyOutput out;
  for (std::size_t i = 0; i < cert_lines.size(); ++i) {
    RawCertificate cert = parse_certificate_line(
        cert_lines[i], static_cast<int>(i + 1), problem);
    if (cert.index != i + 1)
      throw FormatError("certificate lines out of order at g" +
                        std::to_string(cert.index));
    if (cert.index > basis.size())
      throw FormatError("certificate g" + std::to_string(cert.index) +
                        " has no basis line");
    auto acc = eval_cert_terms(ctx, cert, inputs, basis);
    auto want = ctx.terms(basis[cert.index - 1]);
    bool equal = acc.size() == want.size();
    for (std::size_t k = 0; equal && k < acc.size(); ++k)
      equal = acc[k].second == want[k].second &&
              ctx.field.eq(acc[k].first, want[k].first);
    out.ok.push_back(equal);
    out.all_ok = out.all_ok && equal;
  }
  return out;
}

template <class Field>
std::string normal_form_typed(Field field, const Problem& problem,
                              const std::string& expr,
                              const std::vector<std::string>& basis_lines) {
  Context<Field> ctx(std::move(field), make_ordering(problem));
  std::vector<PolyIdx> basis;
  PrefixTree trie;
  for (std::size_t i = 0; i < basis_lines.size(); ++i) {
    auto raw = parse_poly_expr(basis_lines[i], static_cast<int>(i + 1),
                               problem);
    PolyIdx p = intern_raw(ctx, raw, static_cast<int>(i + 1));
    trie.insert(ctx.mons.word(ctx.lm(p)), static_cast<std::uint32_t>(i));
    basis.push_back(p);
  }
  auto raw = parse_poly_expr(expr, 1, problem);
  std::vector<typename Context<Field>::Term> terms;
  for (const RawTerm& t : raw)
    terms.emplace_back(raw_coeff(ctx.field, t.coeff),
                       ctx.mons.intern(Word(t.word)));
  PolyIdx p = ctx.intern_terms(std::move(terms));
  auto nf = normal_form(ctx, ctx.terms(p), basis, trie);
  return print_poly(ctx, ctx.intern_sorted_terms(nf), problem.variables);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r\n");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

RunOutput run_problem(const Problem& problem, const GBConfig& cfg) {
  if (problem.characteristic == 0) return run_typed(QField{}, problem, cfg);
  return run_typed(ZpField(problem.characteristic), problem, cfg);
}

VerifyOutput verify_certificates(const Problem& problem,
                                 const std::vector<std::string>& basis_lines,
                                 const std::vector<std::string>& cert_lines) {
  if (problem.characteristic == 0)
    return verify_typed(QField{}, problem, basis_lines, cert_lines);
  return verify_typed(ZpField(problem.characteristic), problem, basis_lines,
                      cert_lines);
}

std::string normal_form_expr(const Problem& problem, const std::string& expr,
                             const std::vector<std::string>& basis_lines) {
  if (problem.characteristic == 0)
    return normal_form_typed(QField{}, problem, expr, basis_lines);
  return normal_form_typed(ZpField(problem.characteristic), problem, expr,
                           basis_lines);
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Groebner bases of two-sided ideals in free algebras"};
  app.require_subcommand(1);

  auto* gb = app.add_subcommand("gb", "compute a (partial) Groebner basis");
  std::string input;
  long long degbound = -1, maxiter = -1;
  unsigned threads = 1;
  std::string tracer = "on", gm = "off", proof = "none";
  std::string output, proof_output;
  gb->add_option("input", input, "problem file")->required();
  gb->add_option("--degbound", degbound,
                 "discard ambiguities above this degree");
  gb->add_option("--maxiter", maxiter, "stop after this many iterations");
  gb->add_option("--threads", threads, "linear algebra threads");
  gb->add_option("--tracer", tracer, "multi-modular tracer")
      ->check(CLI::IsMember({"on", "off"}));
  gb->add_option("--gm", gm, "Gebauer-Moeller filtering")
      ->check(CLI::IsMember({"on", "off"}));
  gb->add_option("--proof", proof, "cofactor logging")
      ->check(CLI::IsMember({"none", "incremental", "full"}));
  gb->add_option("--output", output, "basis output path (default stdout)");
  gb->add_option("--proof-output", proof_output,
                 "certificate output path (default stdout)");

  auto* ver = app.add_subcommand("verify", "check certificates by expansion");
  std::string vproblem, vbasis, vcerts;
  ver->add_option("problem", vproblem, "problem file")->required();
  ver->add_option("basis", vbasis, "basis file")->required();
  ver->add_option("certs", vcerts, "certificate file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gb->parsed()) {
      Problem problem = parse_problem(read_file(input));
      GBConfig cfg;
      if (degbound >= 0)
        cfg.degree_bound = static_cast<std::uint32_t>(degbound);
      if (maxiter >= 0)
        cfg.max_iterations = static_cast<std::uint32_t>(maxiter);
      cfg.thread_count = threads == 0 ? 1 : threads;
      cfg.tracer = tracer == "on";
      cfg.gm_filter = gm == "on";
      cfg.proof = proof == "none" ? ProofMode::None
                  : proof == "incremental" ? ProofMode::Incremental
                                           : ProofMode::Full;
      RunOutput out = run_problem(problem, cfg);

      auto write_lines = [](const std::vector<std::string>& lines,
                            const std::string& path) {
        if (path.empty()) {
          for (const auto& l : lines) std::cout << l << "\n";
          return;
        }
        std::ofstream f(path);
        if (!f) throw InputError("cannot write " + path);
        for (const auto& l : lines) f << l << "\n";
      };
      write_lines(out.basis_lines, output);
      if (cfg.proof != ProofMode::None)
        write_lines(out.cert_lines, proof_output);
      return out.exit_code();
    }

    Problem problem = parse_problem(read_file(vproblem));
    std::vector<std::string> basis_lines = content_lines(read_file(vbasis));
    std::vector<std::string> cert_lines = content_lines(read_file(vcerts));
    VerifyOutput res = verify_certificates(problem, basis_lines, cert_lines);
    for (std::size_t i = 0; i < res.ok.size(); ++i)
      std::cout << "g" << (i + 1) << ": " << (res.ok[i] ? "OK" : "FAIL")
                << "\n";
    return res.all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace freegb
