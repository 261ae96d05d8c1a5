#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace gradedpi {

/// +1 or -1 by inversion count.
inline int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  }
  return inv % 2 ? -1 : 1;
}

/// Calls fn(perm, sign) for every permutation of {0..n-1} in lexicographic order.
/// Stops early when fn returns false.
template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!fn(static_cast<const std::vector<int>&>(p), permutation_sign(p))) return;
  } while (std::next_permutation(p.begin(), p.end()));
}

/// Calls fn(subset) for every k-subset of {0..n-1} (sorted) in lexicographic order.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    if (!fn(static_cast<const std::vector<int>&>(c))) return;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace gradedpi
