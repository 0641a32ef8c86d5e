// Divisor counts of extremal monomials and the resulting thresholds.
//
// For d <= k <= n(d-1) write k = q(d-1) + r with 0 <= r < d-1. The monomial
// x1^{d-1}...xq^{d-1} x_{q+1}^r has the fewest degree-d divisors among degree-k
// monomials with exponents < d, namely C = binom(q+d,d) - binom(q+d-r-1,q) - q.
// Any N = binom(n+d-1,d) - C + 1 degree-d forms with leading powers generate
// all of H_{n,k}.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/ideals.hpp"
#include "sosgram/monomial.hpp"
#include "sosgram/rational.hpp"

namespace sosgram {

struct BoundData {
  int n = 0, d = 0, k = 0;
  int q = 0, r = 0;
  Monomial extremal;
  long C = 0;
  long N = 0;
};

inline void check_bound_range(int n, int d, int k) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (d < 2) throw DomainError("d must be >= 2 (d = 1 is trivial)");
  if (k < d || k > n * (d - 1))
    throw DomainError("k = " + std::to_string(k) + " outside [" + std::to_string(d) + ", " +
                      std::to_string(n * (d - 1)) + "]");
}

inline BoundData bound_data(int n, int d, int k) {
  check_bound_range(n, d, k);
  BoundData b;
  b.n = n;
  b.d = d;
  b.k = k;
  b.q = k / (d - 1);
  b.r = k % (d - 1);
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < b.q; ++i) e[static_cast<std::size_t>(i)] = d - 1;
  if (b.r > 0) e[static_cast<std::size_t>(b.q)] = b.r;  // q < n whenever r > 0
  b.extremal = Monomial(e);
  b.C = binom(b.q + d, d) - binom(b.q + d - b.r - 1, b.q) - b.q;
  b.N = binom(n + d - 1, d) - b.C + 1;
  return b;
}

/// Brute-force count of degree-d monomials dividing m.
inline long divisor_count_oracle(const Monomial& m, int d) {
  if (d > m.degree()) throw DomainError("divisor degree exceeds monomial degree");
  long count = 0;
  for (auto& c : enumerate_monomials(m.nvars(), d))
    if (divides(c, m)) ++count;
  return count;
}

/// The N-1 degree-d monomials that do not divide the extremal monomial.
inline MonomialIdeal witness_ideal(int n, int d, int k) {
  const auto b = bound_data(n, d, k);
  std::vector<Monomial> gens;
  for (auto& m : enumerate_monomials(n, d))
    if (!divides(m, b.extremal)) gens.push_back(m);
  return MonomialIdeal(n, gens);
}

/// N(n,d,k) = HF_k(<x1^d..xn^d>) + n in the top range of k.
inline bool hf_identity_check(int n, int d, int k) {
  check_bound_range(n, d, k);
  if (k <= std::max(n * (d - 1) - d, d)) throw DomainError("k below the range of the identity");
  return bound_data(n, d, k).N == hf_monomial(powers_ideal(n, d), k) + n;
}

struct TableNRow {
  int n = 0, two_d = 0;
  long n_minus_one = 0;  // N(n,d,2d) - 1
  long dim_h = 0;        // binom(n+d-1,d)
  std::optional<int> p_lower, p_upper;
};

/// Known bounds on the Pythagoras number p(n,2d); data, not computed.
inline std::optional<std::pair<int, int>> pythagoras_bounds(int n, int two_d) {
  static const std::map<std::pair<int, int>, std::pair<int, int>> known{
      {{3, 6}, {4, 4}}, {{4, 4}, {5, 5}}, {{4, 6}, {8, 11}}, {{5, 4}, {7, 11}}, {{6, 4}, {11, 15}}};
  auto it = known.find({n, two_d});
  if (it == known.end()) return std::nullopt;
  return it->second;
}

inline std::vector<std::pair<int, int>> default_table_cases() { return {{3, 6}, {4, 4}, {4, 6}, {5, 4}, {6, 4}}; }

inline std::vector<TableNRow> table_N(const std::vector<std::pair<int, int>>& cases) {
  std::vector<TableNRow> rows;
  for (auto [n, two_d] : cases) {
    if (two_d % 2 != 0) throw DomainError("degree 2d must be even");
    const int d = two_d / 2;
    const auto b = bound_data(n, d, two_d);
    TableNRow row;
    row.n = n;
    row.two_d = two_d;
    row.n_minus_one = b.N - 1;
    row.dim_h = binom(n + d - 1, d);
    if (auto p = pythagoras_bounds(n, two_d)) {
      row.p_lower = p->first;
      row.p_upper = p->second;
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string table_N_text(const std::vector<TableNRow>& rows) {
  auto cell = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::vector<std::vector<std::string>> grid{{"n", "2d", "N(n,d,2d)-1", "dim H_{n,d}", "p(n,2d) >=", "p(n,2d) <="}};
  for (auto& r : rows)
    grid.push_back({std::to_string(r.n), std::to_string(r.two_d), std::to_string(r.n_minus_one),
                    std::to_string(r.dim_h), cell(r.p_lower), cell(r.p_upper)});
  std::vector<std::size_t> w(grid.front().size(), 0);
  for (auto& g : grid)
    for (std::size_t j = 0; j < g.size(); ++j) w[j] = std::max(w[j], g[j].size());
  std::string out;
  for (auto& g : grid) {
    for (std::size_t j = 0; j < g.size(); ++j)
      out += (j ? "  " : "") + std::string(w[j] - g[j].size(), ' ') + g[j];
    out += "\n";
  }
  out += "p(n,2d) columns are published bounds on the Pythagoras number, not computed here.\n";
  return out;
}

}  // namespace sosgram
