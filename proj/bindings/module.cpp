#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "freegb/driver.hpp"
#include "freegb/linalg_q.hpp"
#include "freegb/linalg_zp.hpp"

namespace py = pybind11;
using namespace freegb;

namespace {

Problem make_problem(const std::vector<std::string>& vars,
                     unsigned long characteristic,
                     const std::vector<std::uint32_t>& blocks,
                     const std::vector<std::string>& polys) {
  std::string text = "vars";
  for (const auto& v : vars) text += " " + v;
  text += "\n";
  if (blocks.empty()) {
    text += "order deglex\n";
  } else {
    text += "order blocks";
    for (auto b : blocks) text += " " + std::to_string(b);
    text += "\n";
  }
  text += "char " + std::to_string(characteristic) + "\n";
  for (const auto& p : polys) text += "poly " + p + "\n";
  return parse_problem(text);
}

GBConfig make_config(py::object degbound, py::object maxiter,
                     unsigned threads, bool tracer, bool gm,
                     const std::string& proof) {
  GBConfig cfg;
  if (!degbound.is_none())
    cfg.degree_bound = degbound.cast<std::uint32_t>();
  if (!maxiter.is_none())
    cfg.max_iterations = maxiter.cast<std::uint32_t>();
  cfg.thread_count = threads;
  cfg.tracer = tracer;
  cfg.gm_filter = gm;
  if (proof == "none")
    cfg.proof = ProofMode::None;
  else if (proof == "incremental")
    cfg.proof = ProofMode::Incremental;
  else if (proof == "full")
    cfg.proof = ProofMode::Full;
  else
    throw ConfigError("proof must be none, incremental or full");
  return cfg;
}

// Dense list-of-lists helpers keep the smoke-level API free of sparse types.
linalg::SparseMatrix dense_to_sparse(
    const std::vector<std::vector<long long>>& rows, std::uint32_t p) {
  linalg::SparseMatrix m;
  for (const auto& row : rows)
    m.ncols = std::max<std::uint32_t>(
        m.ncols, static_cast<std::uint32_t>(row.size()));
  m.rows.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      long long v = rows[i][j] % static_cast<long long>(p);
      if (v < 0) v += p;
      if (v != 0) {
        m.rows[i].cols.push_back(static_cast<std::uint32_t>(j));
        m.rows[i].vals.push_back(static_cast<std::uint32_t>(v));
      }
    }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Groebner bases in free algebras over Z_p and Q";

  py::class_<RunOutput>(m, "RunOutput")
      .def_readonly("complete", &RunOutput::complete)
      .def_readonly("basis", &RunOutput::basis_lines)
      .def_readonly("certificates", &RunOutput::cert_lines)
      .def("__repr__", [](const RunOutput& r) {
        return "<RunOutput basis=" + std::to_string(r.basis_lines.size()) +
               (r.complete ? " complete>" : " truncated>");
      });

  m.def(
      "groebner_basis",
      [](const std::vector<std::string>& polys,
         const std::vector<std::string>& vars, unsigned long characteristic,
         const std::vector<std::uint32_t>& blocks, py::object degbound,
         py::object maxiter, unsigned threads, bool tracer, bool gm,
         const std::string& proof) {
        Problem problem = make_problem(vars, characteristic, blocks, polys);
        return run_problem(problem,
                           make_config(degbound, maxiter, threads, tracer, gm,
                                       proof));
      },
      py::arg("polys"), py::arg("vars"), py::arg("characteristic") = 0,
      py::arg("blocks") = std::vector<std::uint32_t>{},
      py::arg("degree_bound") = py::none(),
      py::arg("max_iterations") = py::none(), py::arg("threads") = 1,
      py::arg("tracer") = true, py::arg("gm") = false,
      py::arg("proof") = "none",
      "Compute a (partial) Groebner basis; polynomials in expression syntax.");

  m.def(
      "verify_certificates",
      [](const std::vector<std::string>& polys,
         const std::vector<std::string>& vars, unsigned long characteristic,
         const std::vector<std::uint32_t>& blocks,
         const std::vector<std::string>& basis,
         const std::vector<std::string>& certs) {
        Problem problem = make_problem(vars, characteristic, blocks, polys);
        return verify_certificates(problem, basis, certs).all_ok;
      },
      py::arg("polys"), py::arg("vars"), py::arg("characteristic") = 0,
      py::arg("blocks") = std::vector<std::uint32_t>{},
      py::arg("basis") = std::vector<std::string>{},
      py::arg("certs") = std::vector<std::string>{});

  m.def(
      "normal_form",
      [](const std::string& expr, const std::vector<std::string>& basis,
         const std::vector<std::string>& vars, unsigned long characteristic,
         const std::vector<std::uint32_t>& blocks) {
        Problem problem = make_problem(vars, characteristic, blocks, {});
        return normal_form_expr(problem, expr, basis);
      },
      py::arg("expr"), py::arg("basis"), py::arg("vars"),
      py::arg("characteristic") = 0,
      py::arg("blocks") = std::vector<std::uint32_t>{});

  m.def(
      "rref_mod_p",
      [](const std::vector<std::vector<long long>>& rows, std::uint32_t p,
         unsigned threads) {
        linalg::SparseMatrix m = dense_to_sparse(rows, p);
        auto res = linalg::rref_mod_p(m, p, threads);
        std::vector<std::vector<long long>> out(
            res.m.rows.size(), std::vector<long long>(res.m.ncols, 0));
        for (std::size_t i = 0; i < res.m.rows.size(); ++i)
          for (std::size_t k = 0; k < res.m.rows[i].cols.size(); ++k)
            out[i][res.m.rows[i].cols[k]] = res.m.rows[i].vals[k];
        return out;
      },
      py::arg("rows"), py::arg("p"), py::arg("threads") = 1,
      "Reduced row echelon form of a dense integer matrix mod p.");

  m.def("mersenne_reduce", &linalg::mersenne_reduce, py::arg("v"),
        py::arg("b"));

  m.def("run_cli", &run_cli, py::arg("args"),
        "Invoke the command-line interface programmatically.");
}
