#include "freegb/field.hpp"

namespace freegb {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::uint32_t mod_inverse_u32(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw DomainError("inverse of zero");
  std::int64_t t = 0, nt = 1;
  std::int64_t r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace freegb
