#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace freegb {

// Variables are 1-based; ids are assigned in ascending order of the
// monomial ordering (smallest variable gets id 1).
using Var = std::uint32_t;

// Stable handles into the append-only stores.
using MonIdx = std::uint32_t;
using PolyIdx = std::uint32_t;
using CoeffHandle = std::uint32_t;

// A monomial is a word over variable ids; views point into store memory
// and stay valid for the lifetime of the store.
using Word = std::span<const Var>;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse diagnostics carry the 1-based input line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

inline std::uint64_t hash_bytes(const void* data, std::size_t len,
                                std::uint64_t seed = 0xcbf29ce484222325ULL) {
  // FNV-1a, then a final mix so short keys spread over the high bits too.
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

inline std::uint64_t hash_word(Word w) {
  return hash_bytes(w.data(), w.size_bytes());
}

inline bool words_equal(Word a, Word b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace freegb
