#include "boundrank/combinatorics.hpp"

#include <limits>

#include "boundrank/error.hpp"

namespace boundrank {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::size_t lehmer_rank(std::span<const int> perm) {
  const int m = static_cast<int>(perm.size());
  std::size_t rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < m; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank = rank * (m - i) + smaller;
  }
  return rank;
}

std::vector<int> lehmer_unrank(std::size_t rank, int m) {
  std::vector<int> digits(m);
  for (int i = m - 1; i >= 0; --i) {
    const int base = m - i;
    digits[i] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::vector<int> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = i;
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) {
    perm[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return perm;
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

int permutation_sign(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[j] < perm[i]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > max / a) return max;
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace boundrank
