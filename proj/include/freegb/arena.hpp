#pragma once

#include <cstring>
#include <memory>
#include <optional>
#include <vector>

#include "freegb/common.hpp"

namespace freegb {

// Bump allocator over large fixed chunks. Committed data never moves, so
// pointers and spans into the arena stay valid for the arena's lifetime.
template <class T>
class ChunkArena {
 public:
  explicit ChunkArena(std::size_t chunk_cap = (std::size_t(1) << 20))
      : chunk_cap_(chunk_cap) {}

  // Space for n elements at the tip, without advancing it. The region is
  // the scratch space; it is clobbered by the next reserve unless committed.
  T* reserve(std::size_t n) {
    if (chunks_.empty() || used_ + n > cap_) {
      std::size_t cap = std::max(chunk_cap_, n);
      chunks_.push_back(std::make_unique<T[]>(cap));
      cap_ = cap;
      used_ = 0;
    }
    return chunks_.back().get() + used_;
  }

  void commit(std::size_t n) { used_ += n; }

 private:
  std::size_t chunk_cap_;
  std::size_t cap_ = 0;
  std::size_t used_ = 0;
  std::vector<std::unique_ptr<T[]>> chunks_;
};

// Open-addressing hash index mapping precomputed 64-bit hashes to element
// indices. Equality of candidates is resolved by the caller's predicate,
// so the table itself never touches keys.
class ProbeTable {
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

 public:
  ProbeTable() { slots_.resize(64, Slot{0, kEmpty}); }

  template <class Eq>
  std::optional<std::uint32_t> find(std::uint64_t hash, Eq&& eq) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
      const Slot& s = slots_[i];
      if (s.idx == kEmpty) return std::nullopt;
      if (s.hash == hash && eq(s.idx)) return s.idx;
    }
  }

  void insert(std::uint64_t hash, std::uint32_t idx) {
    if ((count_ + 1) * 8 > slots_.size() * 5) grow();
    insert_slot(hash, idx);
    ++count_;
  }

 private:
  struct Slot {
    std::uint64_t hash;
    std::uint32_t idx;
  };

  void insert_slot(std::uint64_t hash, std::uint32_t idx) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash & mask;
    while (slots_[i].idx != kEmpty) i = (i + 1) & mask;
    slots_[i] = Slot{hash, idx};
  }

  void grow() {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(old.size() * 2, Slot{0, kEmpty});
    for (const Slot& s : old)
      if (s.idx != kEmpty) insert_slot(s.hash, s.idx);
  }

  std::vector<Slot> slots_;
  std::size_t count_ = 0;
};

// Append-only interning store for monomials (words over variable ids).
// Equal words always map to equal indices, and an index never changes
// meaning once handed out. Products are assembled in the scratch region
// at the arena tip and committed only when the word is new.
class MonomialStore {
 public:
  MonomialStore() { one_ = intern(Word{}); }

  std::size_t size() const { return entries_.size(); }

  MonIdx one() const { return one_; }

  Word word(MonIdx i) const {
    const Entry& e = entries_[i];
    return Word(e.data, e.len);
  }

  std::uint32_t length(MonIdx i) const { return entries_[i].len; }

  // Lookup-or-insert. Throws InputError if the word mentions id 0 or an
  // id above the declared variable cap (when one was set).
  MonIdx intern(Word w);

  // Concatenation; scratch-built, committed only if new.
  MonIdx concat(MonIdx a, MonIdx b);

  // left * m * right in one pass; the workhorse of row generation.
  MonIdx concat3(MonIdx left, MonIdx m, MonIdx right);

  // Word formed from a slice of an existing monomial.
  MonIdx intern_slice(MonIdx m, std::uint32_t begin, std::uint32_t end);

  // Optional guard used by the CLI: ids must be in [1, cap].
  void set_variable_cap(std::uint32_t cap) { var_cap_ = cap; }

 private:
  struct Entry {
    const Var* data;
    std::uint32_t len;
  };

  MonIdx intern_scratch(const Var* scratch, std::size_t len);
  void check_vars(Word w) const;

  ChunkArena<Var> arena_;
  std::vector<Entry> entries_;
  ProbeTable index_;
  std::uint32_t var_cap_ = 0;  // 0 = unchecked
  MonIdx one_ = 0;
};

// Deduplicated coefficient sequences. Polynomials that are monomial
// multiples of one another share a single sequence.
template <class Field>
class CoeffPool {
 public:
  using Elem = typename Field::Elem;

  CoeffHandle intern(std::span<const Elem> seq) {
    std::uint64_t h = hash_seq(seq);
    auto hit = index_.find(h, [&](std::uint32_t idx) {
      const std::vector<Elem>& s = seqs_[idx];
      if (s.size() != seq.size()) return false;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (!Field::eq(s[i], seq[i])) return false;
      return true;
    });
    if (hit) return *hit;
    auto idx = static_cast<CoeffHandle>(seqs_.size());
    seqs_.emplace_back(seq.begin(), seq.end());
    index_.insert(h, idx);
    return idx;
  }

  std::span<const Elem> seq(CoeffHandle h) const {
    return std::span<const Elem>(seqs_[h].data(), seqs_[h].size());
  }

  std::size_t size() const { return seqs_.size(); }

 private:
  static std::uint64_t hash_seq(std::span<const Elem> seq) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (const Elem& e : seq) {
      std::uint64_t eh = Field::hash(e);
      h = hash_bytes(&eh, sizeof eh, h);
    }
    return h;
  }

  std::vector<std::vector<Elem>> seqs_;
  ProbeTable index_;
};

// Append-only polynomial store. A polynomial is a descending-sorted list
// of monomial indices plus a handle into the coefficient pool; the leading
// term is the first entry of both.
template <class Field>
class PolyStore {
 public:
  struct View {
    std::span<const MonIdx> mons;
    CoeffHandle coeffs;
    std::uint32_t len() const { return static_cast<std::uint32_t>(mons.size()); }
  };

  // Monomials must already be strictly descending; the caller (Context)
  // sorts and validates.
  PolyIdx intern_sorted(std::span<const MonIdx> mons, CoeffHandle coeffs) {
    std::uint64_t h =
        hash_bytes(mons.data(), mons.size_bytes(),
                   0x9e3779b97f4a7c15ULL ^ (std::uint64_t(coeffs) << 1));
    auto hit = index_.find(h, [&](std::uint32_t idx) {
      const Entry& e = entries_[idx];
      if (e.coeffs != coeffs || e.len != mons.size()) return false;
      return std::memcmp(e.mons, mons.data(), mons.size_bytes()) == 0;
    });
    if (hit) return *hit;
    MonIdx* dst = arena_.reserve(mons.size());
    std::memcpy(dst, mons.data(), mons.size_bytes());
    arena_.commit(mons.size());
    auto idx = static_cast<PolyIdx>(entries_.size());
    entries_.push_back(Entry{dst, static_cast<std::uint32_t>(mons.size()), coeffs});
    index_.insert(h, idx);
    return idx;
  }

  View view(PolyIdx i) const {
    const Entry& e = entries_[i];
    return View{std::span<const MonIdx>(e.mons, e.len), e.coeffs};
  }

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    const MonIdx* mons;
    std::uint32_t len;
    CoeffHandle coeffs;
  };

  ChunkArena<MonIdx> arena_;
  std::vector<Entry> entries_;
  ProbeTable index_;
};

}  // namespace freegb
