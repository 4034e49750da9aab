#pragma once

#include <string>
#include <vector>

#include "freegb/problem.hpp"

namespace freegb {

struct RunOutput {
  bool complete = false;
  std::vector<std::string> basis_lines;
  std::vector<std::string> cert_lines;

  int exit_code() const { return complete ? 0 : 2; }
};

// Parse-to-print orchestration used by both the CLI and the Python module.
RunOutput run_problem(const Problem& problem, const GBConfig& cfg);

struct VerifyOutput {
  std::vector<bool> ok;  // one per certificate line
  bool all_ok = true;
};

VerifyOutput verify_certificates(const Problem& problem,
                                 const std::vector<std::string>& basis_lines,
                                 const std::vector<std::string>& cert_lines);

// Fully reduce an expression by a list of basis polynomials (expression
// syntax on both sides).
std::string normal_form_expr(const Problem& problem, const std::string& expr,
                             const std::vector<std::string>& basis_lines);

// argv-style entry point; argv[0] is not included in args.
int run_cli(const std::vector<std::string>& args);

}  // namespace freegb
