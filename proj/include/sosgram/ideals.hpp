// Hilbert functions of graded ideals.
//
// Polynomial ideals are handled degree by degree: I_k is spanned by the
// products m*g of generators g with monomials m of degree k - deg g, and
// HF_k(I) = dim H_{n,k} - rank of that product matrix. No Groebner engine.
#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/linalg.hpp"
#include "sosgram/modular.hpp"
#include "sosgram/polynomial.hpp"

namespace sosgram {

/// Monomial ideal with a minimal generating set.
class MonomialIdeal {
 public:
  MonomialIdeal(int n, std::vector<Monomial> gens) : n_(n) {
    if (n < 1) throw DomainError("monomial ideal needs n >= 1");
    for (auto& g : gens)
      if (g.nvars() != n) throw DimensionError("generator in wrong ring");
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
      return a.degree() != b.degree() ? a.degree() < b.degree() : LexDescending{}(a, b);
    });
    for (auto& g : gens) {
      bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& h) { return divides(h, g); });
      if (!redundant) gens_.push_back(g);
    }
  }

  int nvars() const { return n_; }
  const std::vector<Monomial>& generators() const { return gens_; }

  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return divides(g, m); });
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ">";
  }

 private:
  int n_;
  std::vector<Monomial> gens_;
};

/// Ideal generated by homogeneous polynomials of one common degree d.
class IdealGens {
 public:
  IdealGens(int n, int d, std::vector<Polynomial> gens) : n_(n), d_(d), gens_(std::move(gens)) {
    if (n < 1) throw DomainError("ideal needs n >= 1");
    if (d < 1) throw DomainError("ideal generators must have degree >= 1");
    for (auto& g : gens_) {
      if (g.nvars() != n) throw DimensionError("generator in wrong ring");
      if (g.is_zero()) throw DomainError("zero generator");
      if (g.degree() != d)
        throw DegreeError("generator of degree " + std::to_string(g.degree()) + " in ideal of degree " +
                              std::to_string(d),
                          d, g.degree());
    }
  }
  /// Infers n and d from the generators.
  explicit IdealGens(std::vector<Polynomial> gens)
      : IdealGens(gens.empty() ? throw DomainError("empty generator list") : gens.front().nvars(),
                  gens.front().degree(), gens) {}

  static IdealGens from_monomials(const MonomialIdeal& m) {
    std::vector<Polynomial> gens;
    for (auto& g : m.generators()) gens.push_back(Polynomial::monomial(g));
    if (gens.empty()) throw DomainError("empty monomial ideal");
    return IdealGens(gens);
  }

  int nvars() const { return n_; }
  int degree() const { return d_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  IdealGens with(const Polynomial& extra) const {
    auto g = gens_;
    g.push_back(extra);
    return IdealGens(n_, d_, g);
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + format_poly(gens_[i]);
    return s + ">";
  }

 private:
  int n_, d_;
  std::vector<Polynomial> gens_;
};

struct HilbertTable {
  std::string ideal;
  std::vector<std::pair<int, long>> values;

  std::vector<long> hf() const {
    std::vector<long> out;
    for (auto& [k, v] : values) out.push_back(v);
    return out;
  }

  /// Two aligned rows, k and HF_k.
  std::string to_text() const {
    std::vector<std::string> ks, vs;
    std::size_t w = 1;
    for (auto& [k, v] : values) {
      ks.push_back(std::to_string(k));
      vs.push_back(std::to_string(v));
      w = std::max({w, ks.back().size(), vs.back().size()});
    }
    auto pad = [w](const std::string& s) { return std::string(w - s.size(), ' ') + s; };
    std::string out = "Hilbert function of " + ideal + "\n";
    out += "k    |";
    for (auto& s : ks) out += " " + pad(s);
    out += "\nHF_k |";
    for (auto& s : vs) out += " " + pad(s);
    return out + "\n";
  }
};

struct GradedBasis {
  int k = 0;
  RationalMatrix basis;  // rref rows over the lex basis of H_{n,k}
  std::vector<Monomial> leading;
  std::size_t dim() const { return basis.rows(); }
};

// ---------------------------------------------------------------- monomial

inline long hf_monomial(const MonomialIdeal& m, int k) {
  if (k < 0) throw DomainError("negative degree");
  long count = 0;
  for (auto& mono : enumerate_monomials(m.nvars(), k))
    if (!m.contains(mono)) ++count;
  return count;
}

inline MonomialIdeal powers_ideal(int n, int d) {
  std::vector<Monomial> g;
  for (int i = 0; i < n; ++i) g.push_back(Monomial::power(n, i, d));
  return MonomialIdeal(n, g);
}

/// <x1^d..xn^d> plus the lex-first degree-s monomials outside it, as many as
/// needed to bring HF_s down to target_hf.
inline MonomialIdeal lpp_ideal(int n, int d, int s, long target_hf) {
  if (n < 1 || d < 2 || s < d) throw DomainError("lpp_ideal needs n >= 1, d >= 2, s >= d");
  auto powers = powers_ideal(n, d);
  std::vector<Monomial> outside;
  for (auto& m : enumerate_monomials(n, s))
    if (!powers.contains(m)) outside.push_back(m);
  const long top = static_cast<long>(outside.size());
  if (target_hf < 0 || target_hf > top)
    throw DomainError("target HF_" + std::to_string(s) + " = " + std::to_string(target_hf) +
                      " unreachable (range 0.." + std::to_string(top) + ")");
  std::vector<Monomial> gens = powers.generators();
  gens.insert(gens.end(), outside.begin(), outside.begin() + (top - target_hf));
  return MonomialIdeal(n, gens);
}

/// Same construction, parametrized by the number of lex-segment generators.
inline MonomialIdeal lpp_ideal_by_count(int n, int d, int s, long count) {
  const long top = hf_monomial(powers_ideal(n, d), s);
  if (count < 0 || count > top) throw DomainError("lex segment count out of range");
  return lpp_ideal(n, d, s, top - count);
}

// -------------------------------------------------------------- polynomial

namespace detail {

/// Rows m*g for all generators g and all monomials m of degree k - d.
inline RationalMatrix product_matrix(const std::vector<Polynomial>& gens, int n, int k) {
  MonomialBasis target(n, k);
  std::vector<RationalVector> rows;
  for (auto& g : gens) {
    if (k < g.degree()) continue;
    for (auto& m : enumerate_monomials(n, k - g.degree())) {
      RationalVector row(target.size());
      for (auto& [mono, c] : g.terms()) row[target.index(mono * m)] = c;
      rows.push_back(std::move(row));
    }
  }
  return RationalMatrix::from_rows(rows, target.size());
}

}  // namespace detail

inline GradedBasis graded_basis(const IdealGens& ideal, int k) {
  if (k < ideal.degree()) throw DomainError("graded_basis needs k >= d");
  const int n = ideal.nvars();
  auto r = rref(detail::product_matrix(ideal.generators(), n, k));
  MonomialBasis basis(n, k);
  GradedBasis out;
  out.k = k;
  out.basis = RationalMatrix(r.rank, basis.size());
  for (std::size_t i = 0; i < r.rank; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) out.basis(i, j) = r.reduced(i, j);
    out.leading.push_back(basis[r.pivots[i]]);
  }
  return out;
}

inline long hf_poly(const IdealGens& ideal, int k) {
  if (k < 0) throw DomainError("negative degree");
  const int n = ideal.nvars();
  const long full = binom(n + k - 1, k);
  if (k < ideal.degree()) return full;
  return full - static_cast<long>(certified_rank(detail::product_matrix(ideal.generators(), n, k)).rank);
}

inline std::vector<Monomial> leading_monomials_d(const IdealGens& ideal) {
  return graded_basis(ideal, ideal.degree()).leading;
}

/// True iff every pure power x_i^d is a leading monomial of I_d (lex).
inline bool is_leading_powers(const IdealGens& ideal) {
  auto lead = leading_monomials_d(ideal);
  for (int i = 0; i < ideal.nvars(); ++i) {
    auto p = Monomial::power(ideal.nvars(), i, ideal.degree());
    if (std::find(lead.begin(), lead.end(), p) == lead.end()) return false;
  }
  return true;
}

/// Whether the ideal contains a sequence of parameters of degree d.
///
/// Tested as HF_{n(d-1)+1}(I) = 0. If I contains a sequence of parameters its
/// Hilbert function is bounded by that of the complete intersection, which
/// vanishes above the socle degree n(d-1). Conversely HF vanishing in some
/// degree means I is primary to the irrelevant ideal, so n generic
/// combinations of the generators form a sequence of parameters.
inline bool contains_sop(const IdealGens& ideal) {
  const int k = ideal.nvars() * (ideal.degree() - 1) + 1;
  return hf_poly(ideal, k) == 0;
}

inline HilbertTable hilbert_table(const MonomialIdeal& m, int kmax) {
  if (kmax < 0) throw DomainError("kmax must be >= 0");
  HilbertTable t{m.to_string(), {}};
  for (int k = 0; k <= kmax; ++k) t.values.emplace_back(k, hf_monomial(m, k));
  return t;
}

inline HilbertTable hilbert_table(const IdealGens& ideal, int kmax) {
  if (kmax < 0) throw DomainError("kmax must be >= 0");
  HilbertTable t{ideal.to_string(), {}};
  for (int k = 0; k <= kmax; ++k) t.values.emplace_back(k, hf_poly(ideal, k));
  return t;
}

// ------------------------------------------------------------ colon ideals

struct ColonComponent {
  int t = 0;
  long ideal_dim = 0;  // dim (J:I)_t
  long hf = 0;         // HF_t((J:I)) = dim H_{n,t} - ideal_dim
};

class ContainmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Exact reduction modulo a graded piece J_k: either J_k = H_k (everything
/// reduces to zero) or an rref basis whose non-pivot coordinates give the
/// normal form.
class GradedReducer {
 public:
  GradedReducer(const IdealGens& j, int k) : n_(j.nvars()), k_(k) {
    const long full = binom(n_ + k - 1, k);
    if (k < j.degree()) {
      free_cols_.resize(static_cast<std::size_t>(full));
      for (std::size_t i = 0; i < free_cols_.size(); ++i) free_cols_[i] = i;
      return;
    }
    auto prod = product_matrix(j.generators(), n_, k);
    if (static_cast<long>(certified_rank(prod).rank) == full) return;
    auto r = rref(prod);
    basis_ = RationalMatrix(r.rank, prod.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t c = 0; c < prod.cols(); ++c) basis_(i, c) = r.reduced(i, c);
    pivots_ = r.pivots;
    std::vector<bool> piv(prod.cols(), false);
    for (auto p : pivots_) piv[p] = true;
    for (std::size_t c = 0; c < prod.cols(); ++c)
      if (!piv[c]) free_cols_.push_back(c);
  }

  std::size_t quotient_dim() const { return free_cols_.size(); }

  /// Normal-form coordinates of v (a coefficient vector over H_k).
  RationalVector reduce(RationalVector v) const {
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      Rational c = v[pivots_[i]];
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(basis_(i, j)) != 0) v[j] -= c * basis_(i, j);
    }
    RationalVector out;
    out.reserve(free_cols_.size());
    for (auto c : free_cols_) out.push_back(v[c]);
    return out;
  }

 private:
  int n_, k_;
  RationalMatrix basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_cols_;
};

}  // namespace detail

/// Graded component (J:I)_t = {f in H_{n,t} : f*g in J for every generator g of I}.
inline ColonComponent colon_component(const IdealGens& j, const IdealGens& i, int t) {
  if (t < 0) throw DomainError("negative degree");
  if (j.nvars() != i.nvars()) throw DimensionError("ideals in different rings");
  const int n = j.nvars();
  const int e = i.degree();
  if (e > j.degree()) throw ContainmentError("J is not contained in I: I has generators of larger degree");
  {
    detail::GradedReducer ri(i, j.degree());
    MonomialBasis bd(n, j.degree());
    for (auto& g : j.generators()) {
      auto nf = ri.reduce(g.coefficients(bd));
      if (std::any_of(nf.begin(), nf.end(), [](const Rational& q) { return sgn(q) != 0; }))
        throw ContainmentError("generator " + format_poly(g) + " of J is not in I");
    }
  }
  detail::GradedReducer rj(j, t + e);
  MonomialBasis src(n, t), dst(n, t + e);
  ColonComponent out;
  out.t = t;
  const long full = static_cast<long>(src.size());
  if (rj.quotient_dim() == 0) {
    out.ideal_dim = full;
    out.hf = 0;
    return out;
  }
  // Row per monomial of degree t: concatenated normal forms of m*g over all g.
  std::vector<RationalVector> rows;
  for (auto& m : src.monomials()) {
    RationalVector row;
    for (auto& g : i.generators()) {
      auto prod = (Polynomial::monomial(m) * g).coefficients(dst);
      auto nf = rj.reduce(std::move(prod));
      row.insert(row.end(), nf.begin(), nf.end());
    }
    rows.push_back(std::move(row));
  }
  const std::size_t cols = rows.front().size();
  auto rk = certified_rank(RationalMatrix::from_rows(rows, cols)).rank;
  out.ideal_dim = full - static_cast<long>(rk);
  out.hf = full - out.ideal_dim;
  return out;
}

}  // namespace sosgram
