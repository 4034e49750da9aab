#include "freegb/f4.hpp"

namespace freegb {

ReducedBatch<ZpField> reduce_matrix(const ZpField& field,
                                    const linalg::SparseMatrix& m,
                                    const GBConfig& cfg) {
  bool want_transform = cfg.proof != ProofMode::None;
  linalg::RrefResult res =
      linalg::rref_mod_p(m, field.p, cfg.thread_count, want_transform);
  ReducedBatch<ZpField> out;
  out.rows.resize(res.m.rows.size());
  for (std::size_t i = 0; i < res.m.rows.size(); ++i) {
    const auto& row = res.m.rows[i];
    out.rows[i].reserve(row.cols.size());
    for (std::size_t k = 0; k < row.cols.size(); ++k)
      out.rows[i].emplace_back(row.cols[k], row.vals[k]);
  }
  if (want_transform) {
    out.combos.resize(res.transform.size());
    for (std::size_t i = 0; i < res.transform.size(); ++i) {
      const auto& t = res.transform[i];
      for (std::size_t k = 0; k < t.rows.size(); ++k)
        out.combos[i].emplace_back(t.rows[k], t.coeffs[k]);
    }
  }
  return out;
}

ReducedBatch<QField> reduce_matrix(const QField&, const linalg::RatMatrix& m,
                                   const GBConfig& cfg) {
  linalg::QRrefConfig qcfg;
  qcfg.tracer = cfg.tracer;
  qcfg.threads = cfg.thread_count;
  qcfg.want_transform = cfg.proof != ProofMode::None;
  linalg::QRrefResult res = linalg::rref_multimodular(m, qcfg);
  ReducedBatch<QField> out;
  out.rows.resize(res.m.rows.size());
  for (std::size_t i = 0; i < res.m.rows.size(); ++i) {
    const auto& row = res.m.rows[i];
    out.rows[i].reserve(row.cols.size());
    for (std::size_t k = 0; k < row.cols.size(); ++k)
      out.rows[i].emplace_back(row.cols[k], row.vals[k]);
  }
  if (qcfg.want_transform) {
    out.combos.resize(res.transform.size());
    for (std::size_t i = 0; i < res.transform.size(); ++i) {
      const auto& t = res.transform[i];
      for (std::size_t k = 0; k < t.rows.size(); ++k)
        out.combos[i].emplace_back(t.rows[k], t.coeffs[k]);
    }
  }
  return out;
}

}  // namespace freegb
