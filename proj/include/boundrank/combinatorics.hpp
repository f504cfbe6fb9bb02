#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace boundrank {

/// Visits every m-subset of {0..n-1} as an increasing index array, in
/// lexicographic order. The callback returns false to stop early; the
/// function returns false iff it was stopped.
template <typename Fn>
bool for_each_combination(int n, int m, Fn&& fn) {
  if (m < 0 || m > n) return true;
  std::vector<int> idx(m);
  for (int a = 0; a < m; ++a) idx[a] = a;
  while (true) {
    if (!fn(std::span<const int>(idx))) return false;
    int a = m - 1;
    while (a >= 0 && idx[a] == n - m + a) --a;
    if (a < 0) return true;
    ++idx[a];
    for (int b = a + 1; b < m; ++b) idx[b] = idx[b - 1] + 1;
  }
}

std::uint64_t binomial(int n, int k);
std::uint64_t factorial(int n);

/// Lexicographic (Lehmer) rank of a permutation of {0..m-1}.
std::size_t lehmer_rank(std::span<const int> perm);
std::vector<int> lehmer_unrank(std::size_t rank, int m);
std::vector<int> inverse_permutation(std::span<const int> perm);
/// +1 or -1.
int permutation_sign(std::span<const int> perm);

/// Saturating integer power, returns UINT64_MAX on overflow.
std::uint64_t checked_pow(std::uint64_t base, int exp);
/// Saturating add/mul for enumeration counts.
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);

}  // namespace boundrank
