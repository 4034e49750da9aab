#include "freegb/linalg_zp.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

#include "freegb/field.hpp"

namespace freegb::linalg {

namespace {

constexpr std::uint32_t kNoCol = 0xffffffffu;

std::uint32_t first_col(const SparseRow& r) {
  return r.empty() ? kNoCol : r.cols.front();
}

// Dense 64-bit accumulators with delayed reduction. Entries stay inside
// [0, p^2 + p): a fused multiply-subtract can dip to > -p^2 and the
// branch-free fix lifts it back without a full reduction.
class DenseBuffer {
 public:
  DenseBuffer(std::uint32_t n, std::uint32_t p)
      : p_(p), pp_(std::int64_t(p) * p), buf_(n, 0) {}

  void load(const SparseRow& r) {
    for (std::size_t k = 0; k < r.cols.size(); ++k)
      buf_[r.cols[k]] = r.vals[k];
    lo_ = first_col(r);
    hi_ = r.empty() ? 0 : r.cols.back();
  }

  void clear_range() {
    if (lo_ == kNoCol) return;
    for (std::uint32_t j = lo_; j <= hi_; ++j) buf_[j] = 0;
    lo_ = kNoCol;
  }

  std::uint32_t lo() const { return lo_; }
  std::uint32_t hi() const { return hi_; }
  void set_lo(std::uint32_t j) { lo_ = j; }

  std::int64_t& operator[](std::uint32_t j) { return buf_[j]; }

  // buf -= lambda * row, skipping the row's leading entry (the caller
  // zeroes that position itself).
  void fused_subtract(std::uint32_t lambda, const SparseRow& row) {
    for (std::size_t k = 1; k < row.cols.size(); ++k) {
      std::uint32_t c = row.cols[k];
      std::int64_t v = buf_[c] - std::int64_t(lambda) * row.vals[k];
      v += (v >> 63) & pp_;
      assert(v >= 0 && v < pp_ + p_);
      buf_[c] = v;
    }
    if (!row.cols.empty()) hi_ = std::max(hi_, row.cols.back());
  }

 private:
  std::uint32_t p_;
  std::int64_t pp_;
  std::vector<std::int64_t> buf_;
  std::uint32_t lo_ = kNoCol;
  std::uint32_t hi_ = 0;
};

// Mirror of DenseBuffer for transform coefficients, indexed by input row.
class TransformBuffer {
 public:
  TransformBuffer(std::uint32_t m, std::uint32_t p)
      : p_(p), pp_(std::int64_t(p) * p), buf_(m, 0), mark_(m, 0) {}

  void start(std::uint32_t row) {
    for (std::uint32_t r : touched_) {
      buf_[r] = 0;
      mark_[r] = 0;
    }
    touched_.clear();
    touch(row);
    buf_[row] = 1;
  }

  void load(const TransformRow& t) {
    for (std::uint32_t r : touched_) {
      buf_[r] = 0;
      mark_[r] = 0;
    }
    touched_.clear();
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      touch(t.rows[k]);
      buf_[t.rows[k]] = t.coeffs[k];
    }
  }

  void fused_subtract(std::uint32_t lambda, const TransformRow& t) {
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      std::uint32_t r = t.rows[k];
      touch(r);
      std::int64_t v = buf_[r] - std::int64_t(lambda) * t.coeffs[k];
      v += (v >> 63) & pp_;
      buf_[r] = v;
    }
  }

  TransformRow materialize(const ZpReducer& red, std::uint32_t scale) const {
    TransformRow out;
    std::vector<std::uint32_t> sorted(touched_.begin(), touched_.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t r : sorted) {
      std::uint64_t v = red.reduce(std::uint64_t(buf_[r]));
      if (scale != 1) v = red.reduce(v * scale);
      if (v != 0) {
        out.rows.push_back(r);
        out.coeffs.push_back(static_cast<std::uint32_t>(v));
      }
    }
    return out;
  }

 private:
  void touch(std::uint32_t r) {
    if (!mark_[r]) {
      mark_[r] = 1;
      touched_.push_back(r);
    }
  }

  std::uint32_t p_;
  std::int64_t pp_;
  std::vector<std::int64_t> buf_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> touched_;
};

struct ForwardState {
  std::vector<SparseRow> rows;
  std::vector<TransformRow> transforms;  // per input row, valid once retired
  std::vector<std::atomic<std::int32_t>>* pivots;
  std::vector<std::uint8_t> vanished;
  std::uint32_t ncols;
  std::uint32_t p;
  ZpReducer red;
  bool want_transform;
};

void materialize_row(DenseBuffer& buf, std::uint32_t lead, std::uint32_t hi,
                     const ZpReducer& red, std::uint32_t p, SparseRow& out,
                     std::uint32_t* inv_out) {
  out.clear();
  std::uint32_t lead_val = red.reduce(std::uint64_t(buf[lead]));
  std::uint32_t inv = mod_inverse_u32(lead_val, p);
  out.cols.push_back(lead);
  out.vals.push_back(1);
  for (std::uint32_t j = lead + 1; j <= hi; ++j) {
    std::uint32_t v = red.reduce(std::uint64_t(buf[j]));
    if (v == 0) continue;
    out.cols.push_back(j);
    out.vals.push_back(red.reduce(std::uint64_t(v) * inv));
  }
  if (inv_out) *inv_out = inv;
}

// Reduce one row against the registered pivots, registering it at its
// surviving leading column. Lock-free: a lost compare-and-swap means some
// other worker owns that column now, so its row is used as a reducer and
// the sweep continues.
void process_row(std::uint32_t r, ForwardState& st, DenseBuffer& buf,
                 TransformBuffer* tbuf) {
  SparseRow& row = st.rows[r];
  if (row.empty()) {
    st.vanished[r] = 1;
    if (tbuf) {
      tbuf->start(r);
      st.transforms[r] = tbuf->materialize(st.red, 1);
    }
    return;
  }
  buf.clear_range();
  buf.load(row);
  if (tbuf) tbuf->start(r);

  std::uint32_t j = buf.lo();
  const std::uint32_t hi_limit = st.ncols;
  while (j < hi_limit && j <= buf.hi()) {
    std::uint32_t v = st.red.reduce(std::uint64_t(buf[j]));
    buf[j] = v;
    if (v == 0) {
      ++j;
      continue;
    }
    std::int32_t pv = (*st.pivots)[j].load(std::memory_order_acquire);
    if (pv < 0) {
      std::uint32_t inv = 1;
      materialize_row(buf, j, buf.hi(), st.red, st.p, row, &inv);
      if (tbuf) st.transforms[r] = tbuf->materialize(st.red, inv);
      std::int32_t expected = -1;
      if ((*st.pivots)[j].compare_exchange_strong(expected,
                                                  static_cast<std::int32_t>(r),
                                                  std::memory_order_acq_rel)) {
        return;  // registered; the row is published and now immutable
      }
      // Lost the race: reload the normalized row and keep reducing.
      buf.clear_range();
      buf.load(row);
      if (tbuf) tbuf->load(st.transforms[r]);
      j = buf.lo();
      continue;
    }
    const SparseRow& prow = st.rows[pv];
    buf[j] = 0;
    buf.fused_subtract(v, prow);
    if (tbuf) tbuf->fused_subtract(v, st.transforms[pv]);
    ++j;
  }
  row.clear();
  st.vanished[r] = 1;
  if (tbuf) st.transforms[r] = tbuf->materialize(st.red, 1);
}

}  // namespace

std::vector<std::uint32_t> staircase_sort(const SparseMatrix& m) {
  std::vector<std::uint32_t> perm(m.rows.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return first_col(m.rows[a]) < first_col(m.rows[b]);
                   });
  return perm;
}

void normalize_row(SparseRow& row, std::uint32_t p) {
  if (row.empty()) throw DomainError("normalize of zero row");
  if (row.vals.front() == 1) return;
  ZpReducer red = ZpReducer::make(p);
  std::uint32_t inv = mod_inverse_u32(row.vals.front(), p);
  for (std::uint32_t& v : row.vals)
    v = red.reduce(std::uint64_t(v) * inv);
}

RrefResult rref_mod_p(const SparseMatrix& a, std::uint32_t p,
                      unsigned thread_count, bool want_transform,
                      const std::vector<std::uint8_t>* drop_rows) {
  if (p >= (1u << 31) || !is_prime_u32(p))
    throw ConfigError("modulus must be a prime < 2^31");
  const auto m = static_cast<std::uint32_t>(a.rows.size());
  const std::uint32_t n = a.ncols;
  if (want_transform) thread_count = 1;  // keep recorded combinations stable

  ForwardState st{.rows = a.rows,
                  .transforms = {},
                  .pivots = nullptr,
                  .vanished = std::vector<std::uint8_t>(m, 0),
                  .ncols = n,
                  .p = p,
                  .red = ZpReducer::make(p),
                  .want_transform = want_transform};
  if (drop_rows) {
    for (std::uint32_t r = 0; r < m; ++r)
      if ((*drop_rows)[r]) st.rows[r].clear();
  }
  if (want_transform) st.transforms.resize(m);

  std::vector<std::atomic<std::int32_t>> pivots(n);
  for (auto& x : pivots) x.store(-1, std::memory_order_relaxed);
  st.pivots = &pivots;

  std::vector<std::uint32_t> order(m);
  for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t x, std::uint32_t y) {
                     return first_col(st.rows[x]) < first_col(st.rows[y]);
                   });

  if (thread_count <= 1 || m < 2) {
    DenseBuffer buf(n, p);
    TransformBuffer tbuf(m, p);
    for (std::uint32_t k = 0; k < m; ++k)
      process_row(order[k], st, buf, want_transform ? &tbuf : nullptr);
  } else {
    std::atomic<std::uint32_t> cursor{0};
    auto work = [&]() {
      DenseBuffer buf(n, p);
      for (;;) {
        std::uint32_t k = cursor.fetch_add(1, std::memory_order_relaxed);
        if (k >= m) break;
        process_row(order[k], st, buf, nullptr);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Backward pass: each pivot row is swept once against the (now frozen)
  // forward registry, which clears every other pivot column it touches.
  std::vector<std::uint32_t> pivot_cols;
  for (std::uint32_t j = 0; j < n; ++j)
    if (pivots[j].load(std::memory_order_relaxed) >= 0) pivot_cols.push_back(j);

  RrefResult out;
  out.m.ncols = n;
  out.m.rows.resize(m);
  out.vanished = st.vanished;
  if (want_transform) out.transform.resize(m);

  auto sweep_row = [&](std::uint32_t out_idx, DenseBuffer& buf,
                       TransformBuffer* tbuf) {
    std::uint32_t j = pivot_cols[out_idx];
    auto src = static_cast<std::uint32_t>(
        pivots[j].load(std::memory_order_relaxed));
    buf.clear_range();
    buf.load(st.rows[src]);
    if (tbuf) tbuf->load(st.transforms[src]);
    for (std::uint32_t k = j + 1; k <= buf.hi() && k < n; ++k) {
      std::uint32_t v = st.red.reduce(std::uint64_t(buf[k]));
      buf[k] = v;
      if (v == 0) continue;
      std::int32_t pv = pivots[k].load(std::memory_order_relaxed);
      if (pv < 0 || pv == static_cast<std::int32_t>(src)) continue;
      buf[k] = 0;
      buf.fused_subtract(v, st.rows[pv]);
      if (tbuf) tbuf->fused_subtract(v, st.transforms[pv]);
    }
    SparseRow& dst = out.m.rows[out_idx];
    dst.clear();
    for (std::uint32_t k = j; k <= buf.hi() && k < n; ++k) {
      std::uint32_t v = st.red.reduce(std::uint64_t(buf[k]));
      if (v != 0) {
        dst.cols.push_back(k);
        dst.vals.push_back(v);
      }
    }
    if (tbuf) out.transform[out_idx] = tbuf->materialize(st.red, 1);
  };

  auto rank = static_cast<std::uint32_t>(pivot_cols.size());
  if (thread_count <= 1 || rank < 2) {
    DenseBuffer buf(n, p);
    TransformBuffer tbuf(m, p);
    for (std::uint32_t i = 0; i < rank; ++i)
      sweep_row(i, buf, want_transform ? &tbuf : nullptr);
  } else {
    std::atomic<std::uint32_t> cursor{0};
    auto work = [&]() {
      DenseBuffer buf(n, p);
      for (;;) {
        std::uint32_t i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= rank) break;
        sweep_row(i, buf, nullptr);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Zero rows pad the bottom; their transforms record the vanished input
  // rows' combinations in ascending input order.
  if (want_transform) {
    std::uint32_t at = rank;
    for (std::uint32_t r = 0; r < m; ++r) {
      if (st.vanished[r]) out.transform[at++] = st.transforms[r];
    }
  }
  return out;
}

}  // namespace freegb::linalg
