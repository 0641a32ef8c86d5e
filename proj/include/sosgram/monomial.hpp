// Exponent-vector monomials and the lex order x1 > x2 > ... > xn.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "sosgram/errors.hpp"

namespace sosgram {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw DomainError("negative exponent");
  }
  /// The constant monomial in n variables.
  static Monomial one(int n) { return Monomial(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  /// x_i^e, with i zero-based.
  static Monomial power(int n, int i, int e) {
    Monomial m = one(n);
    m.exps_.at(static_cast<std::size_t>(i)) = e;
    return m;
  }

  int nvars() const { return static_cast<int>(exps_.size()); }
  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exps_; }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  Monomial operator*(const Monomial& other) const {
    check_same(other);
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
  }

  /// Exact quotient; requires divides(other, *this).
  Monomial operator/(const Monomial& other) const {
    check_same(other);
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      r.exps_[i] -= other.exps_[i];
      if (r.exps_[i] < 0) throw DomainError("monomial quotient is not a monomial");
    }
    return r;
  }

  void check_same(const Monomial& other) const {
    if (other.exps_.size() != exps_.size())
      throw DimensionError("monomials in " + std::to_string(exps_.size()) + " and " +
                           std::to_string(other.exps_.size()) + " variables");
  }

  /// Canonical text: "x1^2*x3", "1" for the constant monomial.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += 'x' + std::to_string(i + 1);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::vector<int> exps_;
};

enum class MonomialOrder { lex };

/// Three-way comparison in the given order; -1 means a < b.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder = MonomialOrder::lex) {
  a.check_same(b);
  for (int i = 0; i < a.nvars(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

/// Strict-weak ordering that sorts monomials in descending lex order.
struct LexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return a.exponents() > b.exponents();
  }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  a.check_same(b);
  for (int i = 0; i < a.nvars(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace detail {
inline void enumerate_rec(int var, int remaining, std::vector<int>& cur, std::vector<Monomial>& out) {
  const int n = static_cast<int>(cur.size());
  if (var == n - 1) {
    cur[static_cast<std::size_t>(var)] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<std::size_t>(var)] = e;
    enumerate_rec(var + 1, remaining - e, cur, out);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}
}  // namespace detail

/// All degree-d monomials in n variables, strictly descending in `order`.
inline std::vector<Monomial> enumerate_monomials(int n, int d, MonomialOrder = MonomialOrder::lex) {
  if (n < 1) throw DomainError("enumerate_monomials needs n >= 1");
  if (d < 0) throw DomainError("enumerate_monomials needs d >= 0");
  std::vector<Monomial> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  detail::enumerate_rec(0, d, cur, out);
  return out;
}

/// Degree-d monomials dividing m.
inline std::vector<Monomial> divisors_of_degree(const Monomial& m, int d) {
  std::vector<Monomial> out;
  for (auto& c : enumerate_monomials(m.nvars(), d))
    if (divides(c, m)) out.push_back(c);
  return out;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ull;
    for (int e : m.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    return h;
  }
};

/// Dense position lookup for the lex-ordered monomial basis of one degree.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d) : n_(n), d_(d), monos_(enumerate_monomials(n, d)) {
    index_.reserve(monos_.size());
    for (std::size_t i = 0; i < monos_.size(); ++i) index_.emplace(monos_[i], i);
  }
  int nvars() const { return n_; }
  int degree() const { return d_; }
  std::size_t size() const { return monos_.size(); }
  const Monomial& operator[](std::size_t i) const { return monos_[i]; }
  const std::vector<Monomial>& monomials() const { return monos_; }
  std::size_t index(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw DomainError("monomial " + m.to_string() + " not in basis");
    return it->second;
  }

 private:
  int n_, d_;
  std::vector<Monomial> monos_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

}  // namespace sosgram
