// Exact rank of large rational matrices by multi-modular elimination.
//
// rank over Q >= rank mod p for every prime p, and if every (r+1)-minor vanishes
// modulo primes whose product exceeds the Hadamard bound of those minors, the
// minors vanish over Z. So the running maximum of the modular ranks is certified
// once enough primes have been used.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <vector>

#include "sosgram/linalg.hpp"

namespace sosgram {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The i-th prime below 2^62, descending.
inline std::uint64_t large_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<std::uint64_t> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::uint64_t cand = cache.empty() ? (1ull << 62) - 1 : cache.back() - 2;
  while (cache.size() <= i) {
    while (!is_prime_u64(cand)) cand -= 2;
    cache.push_back(cand);
    cand -= 2;
  }
  return cache[i];
}

inline std::size_t rank_mod_p(const IntegerRows& rows, std::size_t cols, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> a(rows.size(), std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = sgn(rows[i][j]) == 0 ? 0 : mpz_fdiv_ui(rows[i][j].get_mpz_t(), p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = powmod(a[r][c], p - 2, p);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const std::uint64_t f = a[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (a[r][j] == 0) continue;
        std::uint64_t sub = mulmod(f, a[r][j], p);
        a[i][j] = a[i][j] >= sub ? a[i][j] - sub : a[i][j] + p - sub;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace detail

struct ModularRank {
  std::size_t rank = 0;
  std::size_t primes_used = 0;
};

/// Exact rank of an integer-row matrix, certified by the Hadamard bound.
inline ModularRank certified_rank(detail::IntegerRows rows, std::size_t cols) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const std::vector<Integer>& r) {
                              return std::all_of(r.begin(), r.end(), [](const Integer& x) { return sgn(x) == 0; });
                            }),
             rows.end());
  ModularRank out;
  if (rows.empty() || cols == 0) return out;
  const std::size_t full = std::min(rows.size(), cols);

  // log2 of row Euclidean norms, largest first.
  std::vector<double> lognorm;
  lognorm.reserve(rows.size());
  for (auto& r : rows) {
    Integer s = 0;
    for (auto& x : r)
      if (sgn(x) != 0) s += x * x;
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, s.get_mpz_t());
    lognorm.push_back(0.5 * (std::log2(mant) + static_cast<double>(exp2)));
  }
  std::sort(lognorm.begin(), lognorm.end(), std::greater<>());
  std::vector<double> prefix(lognorm.size() + 1, 0.0);
  for (std::size_t i = 0; i < lognorm.size(); ++i) prefix[i + 1] = prefix[i] + lognorm[i];

  double bits = 0.0;
  for (std::size_t i = 0;; ++i) {
    const std::uint64_t p = detail::large_prime(i);
    out.rank = std::max(out.rank, detail::rank_mod_p(rows, cols, p));
    out.primes_used = i + 1;
    bits += std::log2(static_cast<double>(p)) - 1e-9;
    if (out.rank == full) return out;
    if (bits > prefix[out.rank + 1] + 1.0) return out;
  }
}

inline ModularRank certified_rank(const RationalMatrix& m) {
  return certified_rank(detail::integer_rows(m), m.cols());
}

}  // namespace sosgram
