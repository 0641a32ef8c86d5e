// Gram matrices of forms of degree 2d over the lex monomial frame of degree d.
//
// f = v^T Q v with v the frame vector; the Gram spectrahedron of f is
// {Q0 + sum_j y_j B_j : Q PSD} where v^T B_j v = 0.
#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/linalg.hpp"
#include "sosgram/polynomial.hpp"
#include "sosgram/symmetric.hpp"

namespace sosgram {

class NotPsdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// f = sum_i w_i p_i^2. Weights are all 1 unless an exact factorization
/// produced a non-square pivot; `weights` is then parallel to `polys`.
struct SosDecomposition {
  int n = 0, d = 0;
  std::vector<Polynomial> polys;
  std::vector<Rational> weights;

  SosDecomposition() = default;
  explicit SosDecomposition(std::vector<Polynomial> ps, std::vector<Rational> ws = {})
      : polys(std::move(ps)), weights(std::move(ws)) {
    if (polys.empty()) throw DomainError("empty sum of squares");
    n = polys.front().nvars();
    d = polys.front().degree();
    for (auto& p : polys) {
      if (p.nvars() != n) throw DimensionError("squares in different rings");
      if (p.degree() != d) throw DegreeError("squares of different degrees", d, p.degree());
    }
    if (!weights.empty() && weights.size() != polys.size()) throw DimensionError("weights/polys length mismatch");
    for (auto& w : weights)
      if (sgn(w) <= 0) throw DomainError("weights must be positive");
  }

  Rational weight(std::size_t i) const { return weights.empty() ? Rational(1) : weights[i]; }
};

struct GramFrame {
  int n = 0, d = 0;
  MonomialBasis basis;
  std::size_t m = 0;

  GramFrame(int n_, int d_) : n(n_), d(d_), basis(n_, d_), m(basis.size()) {}
};

struct GramParam {
  GramFrame frame;
  Polynomial f;
  RationalMatrix Q0;
  std::vector<RationalMatrix> directions;
};

struct GramFromSos {
  RationalMatrix Q0;
  std::size_t rank = 0;
};

inline Polynomial expand_sos(const SosDecomposition& s) {
  Polynomial f(s.n, 2 * s.d);
  for (std::size_t i = 0; i < s.polys.size(); ++i) f += s.weight(i) * (s.polys[i] * s.polys[i]);
  return f;
}

/// v^T Q v as a polynomial of degree 2d.
inline Polynomial quadratic_form(const GramFrame& frame, const RationalMatrix& q) {
  if (q.rows() != frame.m || q.cols() != frame.m) throw DimensionError("Gram matrix does not match frame");
  Polynomial f(frame.n, 2 * frame.d);
  for (std::size_t i = 0; i < frame.m; ++i)
    for (std::size_t j = 0; j < frame.m; ++j)
      if (sgn(q(i, j)) != 0) f.add_term(frame.basis[i] * frame.basis[j], q(i, j));
  return f;
}

inline GramFromSos gram_from_sos(const SosDecomposition& s) {
  GramFrame frame(s.n, s.d);
  std::vector<RationalVector> rows;
  for (auto& p : s.polys) rows.push_back(p.coefficients(frame.basis));
  GramFromSos out;
  out.Q0 = RationalMatrix(frame.m, frame.m);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Rational w = s.weight(k);
    for (std::size_t i = 0; i < frame.m; ++i) {
      if (sgn(rows[k][i]) == 0) continue;
      for (std::size_t j = 0; j < frame.m; ++j)
        if (sgn(rows[k][j]) != 0) out.Q0(i, j) += w * rows[k][i] * rows[k][j];
    }
  }
  out.rank = rank(RationalMatrix::from_rows(rows, frame.m));
  return out;
}

namespace detail {

/// Frame index pairs (i <= j) grouped by the product monomial, groups in lex
/// order of the product, pairs in lex order of (i, j).
inline std::map<Monomial, std::vector<std::pair<std::size_t, std::size_t>>, LexDescending> product_splits(
    const GramFrame& frame) {
  std::map<Monomial, std::vector<std::pair<std::size_t, std::size_t>>, LexDescending> groups;
  for (std::size_t i = 0; i < frame.m; ++i)
    for (std::size_t j = i; j < frame.m; ++j) groups[frame.basis[i] * frame.basis[j]].emplace_back(i, j);
  return groups;
}

/// Symmetric placement whose quadratic form is exactly the product monomial.
inline void add_placement(RationalMatrix& b, std::pair<std::size_t, std::size_t> ij, const Rational& c) {
  auto [i, j] = ij;
  if (i == j) {
    b(i, i) += c;
  } else {
    const Rational h = c / 2;
    b(i, j) += h;
    b(j, i) += h;
  }
}

}  // namespace detail

/// Basis of {B symmetric : v^T B v = 0}. For each product monomial with splits
/// s_0 < ... < s_K the rows are E(s_k) - E(s_K), k < K (already in rref).
inline std::vector<RationalMatrix> kernel_directions(const GramFrame& frame) {
  std::vector<RationalMatrix> out;
  for (auto& [mono, splits] : detail::product_splits(frame)) {
    const auto last = splits.back();
    for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
      RationalMatrix b(frame.m, frame.m);
      detail::add_placement(b, splits[k], 1);
      detail::add_placement(b, last, -1);
      out.push_back(std::move(b));
    }
  }
  return out;
}

inline GramParam spectrahedron(const SosDecomposition& s) {
  GramFrame frame(s.n, s.d);
  auto g = gram_from_sos(s);
  return GramParam{frame, expand_sos(s), std::move(g.Q0), kernel_directions(frame)};
}

/// Particular solution: each coefficient placed on the first split of its monomial.
inline GramParam spectrahedron(const Polynomial& f) {
  if (f.degree() % 2 != 0) throw DomainError("Gram matrices need a form of even degree");
  GramFrame frame(f.nvars(), f.degree() / 2);
  RationalMatrix q0(frame.m, frame.m);
  auto splits = detail::product_splits(frame);
  for (auto& [mono, c] : f.terms()) detail::add_placement(q0, splits.at(mono).front(), c);
  return GramParam{frame, f, std::move(q0), kernel_directions(frame)};
}

inline RationalMatrix point_of(const GramParam& p, const std::vector<Rational>& y) {
  if (y.size() != p.directions.size()) throw DimensionError("parameter vector length mismatch");
  RationalMatrix q = p.Q0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (sgn(y[k]) == 0) continue;
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t j = 0; j < q.cols(); ++j)
        if (sgn(p.directions[k](i, j)) != 0) q(i, j) += y[k] * p.directions[k](i, j);
  }
  return q;
}

/// Exact congruence diagonalization Q = sum_k w_k c_k c_k^T, pivoting on the
/// first positive diagonal entry. Square pivots are folded into the polynomial.
inline SosDecomposition sos_from_psd(const RationalMatrix& q, const GramFrame& frame) {
  if (!q.is_symmetric() || q.rows() != frame.m) throw DimensionError("Gram matrix does not match frame");
  RationalMatrix a = q;
  const std::size_t m = frame.m;
  std::vector<bool> used(m, false);
  std::vector<Polynomial> polys;
  std::vector<Rational> weights;
  bool any_weight = false;
  for (;;) {
    std::size_t piv = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      if (sgn(a(i, i)) < 0) throw NotPsdError("negative pivot: matrix is not positive semidefinite");
      if (sgn(a(i, i)) > 0 && piv == m) piv = i;
    }
    if (piv == m) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (!used[i] && !used[j] && sgn(a(i, j)) != 0)
            throw NotPsdError("zero diagonal with nonzero row: matrix is not positive semidefinite");
      break;
    }
    const Rational w = a(piv, piv);
    RationalVector c(m);
    for (std::size_t j = 0; j < m; ++j)
      if (!used[j]) c[j] = a(piv, j) / w;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || sgn(c[i]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!used[j] && sgn(c[j]) != 0) a(i, j) -= w * c[i] * c[j];
    }
    used[piv] = true;
    Rational root;
    if (rational_sqrt(w, root)) {
      for (auto& x : c) x *= root;
      weights.push_back(1);
    } else {
      weights.push_back(w);
      any_weight = true;
    }
    polys.push_back(Polynomial::from_coefficients(frame.basis, c));
  }
  if (polys.empty()) throw DomainError("zero Gram matrix has no square decomposition");
  return SosDecomposition(std::move(polys), any_weight ? std::move(weights) : std::vector<Rational>{});
}

/// Eigen-factorization of a numerically PSD matrix: one square per eigenvalue
/// above tol_rank * max(1, lambda_max). Coefficients are the exact binary values
/// of the floating-point factors.
inline SosDecomposition sos_from_psd(const SymMatrixF& q, const GramFrame& frame, double tol_rank = 1e-6) {
  if (q.dim() != frame.m) throw DimensionError("Gram matrix does not match frame");
  auto e = eigen_sym(q);
  const double top = e.values(e.values.size() - 1);
  const double cut = tol_rank * std::max(1.0, top);
  if (e.values(0) < -cut) throw NotPsdError("lambda_min = " + std::to_string(e.values(0)) + " below -tolerance");
  std::vector<Polynomial> polys;
  for (Eigen::Index k = e.values.size() - 1; k >= 0; --k) {
    if (e.values(k) <= cut) break;
    const double s = std::sqrt(e.values(k));
    RationalVector c(frame.m);
    for (std::size_t j = 0; j < frame.m; ++j) c[j] = Rational(s * e.vectors(static_cast<Eigen::Index>(j), k));
    polys.push_back(Polynomial::from_coefficients(frame.basis, c));
  }
  if (polys.empty()) throw DomainError("zero Gram matrix has no square decomposition");
  return SosDecomposition(std::move(polys));
}

inline Rational max_abs_coefficient(const Polynomial& f) {
  Rational best = 0;
  for (auto& [m, c] : f.terms())
    if (abs(c) > best) best = abs(c);
  return best;
}

}  // namespace sosgram
