#include "freegb/arena.hpp"

namespace freegb {

void MonomialStore::check_vars(Word w) const {
  for (Var v : w) {
    if (v == 0 || (var_cap_ != 0 && v > var_cap_))
      throw InputError("undeclared variable id " + std::to_string(v));
  }
}

MonIdx MonomialStore::intern_scratch(const Var* scratch, std::size_t len) {
  Word w(scratch, len);
  std::uint64_t h = hash_word(w);
  auto hit = index_.find(
      h, [&](std::uint32_t idx) { return words_equal(word(idx), w); });
  if (hit) return *hit;  // discard scratch: tip untouched, store unchanged
  arena_.commit(len);
  auto idx = static_cast<MonIdx>(entries_.size());
  entries_.push_back(Entry{scratch, static_cast<std::uint32_t>(len)});
  index_.insert(h, idx);
  return idx;
}

MonIdx MonomialStore::intern(Word w) {
  check_vars(w);
  Var* scratch = arena_.reserve(w.size());
  std::memcpy(scratch, w.data(), w.size_bytes());
  return intern_scratch(scratch, w.size());
}

MonIdx MonomialStore::concat(MonIdx a, MonIdx b) {
  const Entry& ea = entries_[a];
  const Entry& eb = entries_[b];
  std::size_t len = std::size_t(ea.len) + eb.len;
  Var* scratch = arena_.reserve(len);
  // reserve() may have opened a fresh chunk, but committed entries never
  // move, so ea/eb data stays readable while we assemble the product.
  std::memcpy(scratch, ea.data, ea.len * sizeof(Var));
  std::memcpy(scratch + ea.len, eb.data, eb.len * sizeof(Var));
  return intern_scratch(scratch, len);
}

MonIdx MonomialStore::concat3(MonIdx left, MonIdx m, MonIdx right) {
  const Entry& el = entries_[left];
  const Entry& em = entries_[m];
  const Entry& er = entries_[right];
  std::size_t len = std::size_t(el.len) + em.len + er.len;
  Var* scratch = arena_.reserve(len);
  std::memcpy(scratch, el.data, el.len * sizeof(Var));
  std::memcpy(scratch + el.len, em.data, em.len * sizeof(Var));
  std::memcpy(scratch + el.len + em.len, er.data, er.len * sizeof(Var));
  return intern_scratch(scratch, len);
}

MonIdx MonomialStore::intern_slice(MonIdx m, std::uint32_t begin,
                                   std::uint32_t end) {
  const Entry& e = entries_[m];
  std::size_t len = end - begin;
  Var* scratch = arena_.reserve(len);
  std::memcpy(scratch, e.data + begin, len * sizeof(Var));
  return intern_scratch(scratch, len);
}

}  // namespace freegb
