// Linear functionals on forms of degree 2d, their moment matrices, and exact
// certificates that a sum of squares lies on the boundary of the SOS cone.
//
// A functional l with l(p_i q) = 0 for every generator p_i and every monomial q
// of degree d, and with PSD moment matrix Q_l, satisfies l(f) = sum l(p_i^2) = 0.
// When ker Q_l is exactly span(p_i), every Gram matrix of f has its range in
// that span, so the Gram matrix is unique.
#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sosgram/gram.hpp"
#include "sosgram/linalg.hpp"
#include "sosgram/polynomial.hpp"

namespace sosgram {

class SearchFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ker Q_l differs from span(polys); both row spaces are carried in rref.
class CertificateInvalidError : public std::runtime_error {
 public:
  CertificateInvalidError(const std::string& what, RationalMatrix expected_span, RationalMatrix kernel_span)
      : std::runtime_error(what), expected(std::move(expected_span)), found(std::move(kernel_span)) {}
  RationalMatrix expected;
  RationalMatrix found;
};

struct DualCertificate {
  int n = 0, d = 0;
  RationalVector l;                    // over the lex basis of degree 2d
  RationalMatrix Q_l;                  // over the lex frame of degree d
  std::vector<RationalVector> kernel;  // rref basis of ker Q_l
  bool psd_proved = false;
  std::vector<Monomial> probes;        // probes whose functional was kept
  std::vector<Rational> charpoly;      // det(xI - Q_l), coefficients c_0..c_m
};

/// Basis of {l : l(p_i q) = 0 for all i and all monomials q of degree d}.
inline std::vector<RationalVector> functional_space(const std::vector<Polynomial>& polys, int n, int d) {
  MonomialBasis target(n, 2 * d);
  MonomialBasis frame(n, d);
  std::vector<RationalVector> rows;
  for (auto& p : polys) {
    if (p.nvars() != n) throw DimensionError("generator in a different ring");
    if (p.degree() != d) throw DegreeError("generator of wrong degree", d, p.degree());
    for (auto& q : frame.monomials()) rows.push_back((p * Polynomial::monomial(q)).coefficients(target));
  }
  if (rows.empty()) {
    std::vector<RationalVector> all;
    for (std::size_t i = 0; i < target.size(); ++i) {
      RationalVector e(target.size());
      e[i] = 1;
      all.push_back(std::move(e));
    }
    return all;
  }
  return nullspace(RationalMatrix::from_rows(rows, target.size()));
}

/// (Q_l)_{ab} = l(x^{a+b}) over the degree-d frame.
inline RationalMatrix moment_matrix(const RationalVector& l, int n, int d) {
  MonomialBasis target(n, 2 * d);
  MonomialBasis frame(n, d);
  if (l.size() != target.size()) throw DimensionError("functional length does not match degree 2d basis");
  RationalMatrix q(frame.size(), frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i; j < frame.size(); ++j) q(i, j) = q(j, i) = l[target.index(frame[i] * frame[j])];
  return q;
}

/// l(f) for f of degree 2d.
inline Rational apply_functional(const RationalVector& l, const Polynomial& f) {
  MonomialBasis target(f.nvars(), f.degree());
  return dot(l, f.coefficients(target));
}

/// Coefficients c_0..c_m of det(xI - Q) by Faddeev-LeVerrier:
/// M_1 = I, c_{m-k} = -tr(Q M_k) / k, M_{k+1} = Q M_k + c_{m-k} I.
inline std::vector<Rational> charpoly(const RationalMatrix& q) {
  if (q.rows() != q.cols()) throw DimensionError("characteristic polynomial of a non-square matrix");
  const std::size_t m = q.rows();
  std::vector<Rational> c(m + 1);
  c[m] = 1;
  RationalMatrix mk = RationalMatrix::identity(m);
  for (std::size_t k = 1; k <= m; ++k) {
    RationalMatrix qm = q * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < m; ++i) tr += qm(i, i);
    c[m - k] = -tr / static_cast<long>(k);
    if (k == m) break;
    mk = std::move(qm);
    for (std::size_t i = 0; i < m; ++i) mk(i, i) += c[m - k];
  }
  return c;
}

/// Exact: a real symmetric Q is PSD iff (-1)^{m-i} c_i >= 0 for all i.
inline bool psd_exact(const RationalMatrix& q) {
  if (!q.is_symmetric()) throw DomainError("psd_exact needs a symmetric matrix");
  const auto c = charpoly(q);
  const std::size_t m = q.rows();
  for (std::size_t i = 0; i <= m; ++i) {
    const int s = sgn(c[i]);
    if (((m - i) % 2 == 0 ? s : -s) < 0) return false;
  }
  return true;
}

inline std::vector<Monomial> default_probes(int n, int d) {
  std::vector<Monomial> out;
  for (int i = 0; i < n; ++i) out.push_back(Monomial::power(n, i, d));
  return out;
}

/// Sums the one-dimensional functional spaces of polys + {probe}, each signed
/// so its moment matrix is PSD, and checks ker Q_l = span(polys) exactly.
inline DualCertificate certificate_search(const std::vector<Polynomial>& polys, const std::vector<Monomial>& probes) {
  if (polys.empty()) throw DomainError("certificate search needs generators");
  const int n = polys.front().nvars(), d = polys.front().degree();
  MonomialBasis target(n, 2 * d);
  DualCertificate cert;
  cert.n = n;
  cert.d = d;
  cert.l.assign(target.size(), Rational(0));
  for (auto& probe : probes) {
    auto with_probe = polys;
    with_probe.push_back(Polynomial::monomial(probe));
    auto space = functional_space(with_probe, n, d);
    if (space.size() != 1) continue;
    auto lj = space.front();
    if (!psd_exact(moment_matrix(lj, n, d))) {
      for (auto& x : lj) x = -x;
      if (!psd_exact(moment_matrix(lj, n, d))) continue;
    }
    for (std::size_t i = 0; i < lj.size(); ++i) cert.l[i] += lj[i];
    cert.probes.push_back(probe);
  }
  if (cert.probes.empty()) throw SearchFailedError("no probe gives a one-dimensional functional space with a PSD moment matrix");

  cert.Q_l = moment_matrix(cert.l, n, d);
  cert.charpoly = charpoly(cert.Q_l);
  cert.psd_proved = psd_exact(cert.Q_l);
  if (!cert.psd_proved) throw CertificateInvalidError("summed moment matrix is not PSD", {}, {});

  GramFrame frame(n, d);
  std::vector<RationalVector> rows;
  for (auto& p : polys) rows.push_back(p.coefficients(frame.basis));
  const auto expected = row_space(RationalMatrix::from_rows(rows, frame.m));
  cert.kernel.clear();
  auto ker = nullspace(cert.Q_l);
  const auto found = ker.empty() ? RationalMatrix(0, frame.m) : row_space(RationalMatrix::from_rows(ker, frame.m));
  for (std::size_t i = 0; i < found.rows(); ++i) cert.kernel.push_back(found.row(i));
  if (!(expected == found))
    throw CertificateInvalidError("ker Q_l has dimension " + std::to_string(found.rows()) + ", span of generators " +
                                      std::to_string(expected.rows()),
                                  expected, found);
  return cert;
}

/// Human-readable proof: l's nonzero coordinates, the characteristic
/// polynomial sign pattern, and the kernel basis.
inline std::string proof_transcript(const DualCertificate& c, const std::vector<Polynomial>& polys) {
  MonomialBasis target(c.n, 2 * c.d);
  GramFrame frame(c.n, c.d);
  std::ostringstream out;
  out << "Functional l on forms of degree " << 2 * c.d << " in " << c.n << " variables";
  out << " (sum over probes:";
  for (auto& p : c.probes) out << ' ' << p.to_string();
  out << ")\n";
  for (std::size_t i = 0; i < c.l.size(); ++i)
    if (sgn(c.l[i]) != 0) out << "  l(" << target[i].to_string() << ") = " << to_string(c.l[i]) << '\n';
  out << "l(p*q) = 0 for every generator p and every monomial q of degree " << c.d << ":\n";
  for (auto& p : polys) out << "  p = " << format_poly(p) << '\n';
  const std::size_t m = c.Q_l.rows();
  out << "Moment matrix Q_l is " << m << "x" << m << "; det(xI - Q_l) = sum c_i x^i with\n";
  for (std::size_t i = 0; i <= m; ++i) {
    const int s = sgn(c.charpoly[i]);
    const char* sign = s > 0 ? "+" : s < 0 ? "-" : "0";
    out << "  c_" << i << " sign " << sign << "  (required " << ((m - i) % 2 == 0 ? "+ or 0" : "- or 0") << ")\n";
  }
  out << "Q_l is " << (c.psd_proved ? "" : "NOT ") << "positive semidefinite (exact sign test)\n";
  out << "ker Q_l has dimension " << c.kernel.size() << " and equals the span of the generators:\n";
  for (auto& v : c.kernel) out << "  " << format_poly(Polynomial::from_coefficients(frame.basis, v)) << '\n';
  return out.str();
}

}  // namespace sosgram
