// Dense floating-point symmetric matrices and a cyclic Jacobi eigensolver.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/linalg.hpp"

namespace sosgram {

/// Symmetric by construction: the input is replaced by (A + A^T) / 2.
class SymMatrixF {
 public:
  SymMatrixF() = default;
  explicit SymMatrixF(std::size_t m) : a_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m))) {}
  explicit SymMatrixF(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw DimensionError("symmetric matrix must be square");
    a_ = 0.5 * (a + a.transpose());
  }

  static SymMatrixF identity(std::size_t m) {
    return SymMatrixF(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
  }

  static SymMatrixF from_rational(const RationalMatrix& q) {
    if (q.rows() != q.cols()) throw DimensionError("symmetric matrix must be square");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(q.rows()), static_cast<Eigen::Index>(q.cols()));
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t j = 0; j < q.cols(); ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = q(i, j).get_d();
    return SymMatrixF(a);
  }

  std::size_t dim() const { return static_cast<std::size_t>(a_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return a_; }
  double max_abs() const { return a_.size() ? a_.cwiseAbs().maxCoeff() : 0.0; }

  friend SymMatrixF operator+(const SymMatrixF& x, const SymMatrixF& y) { return SymMatrixF(x.a_ + y.a_); }
  friend SymMatrixF operator-(const SymMatrixF& x, const SymMatrixF& y) { return SymMatrixF(x.a_ - y.a_); }
  friend SymMatrixF operator*(double s, const SymMatrixF& x) { return SymMatrixF(s * x.a_); }

 private:
  Eigen::MatrixXd a_;
};

inline double inner(const SymMatrixF& x, const SymMatrixF& y) { return x.matrix().cwiseProduct(y.matrix()).sum(); }

struct SymEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j belongs to values[j]
};

/// Cyclic Jacobi; rotations stop once the off-diagonal mass is below 1e-13 * ||A||_F.
inline SymEigen eigen_sym(const SymMatrixF& input) {
  const Eigen::Index m = static_cast<Eigen::Index>(input.dim());
  Eigen::MatrixXd a = input.matrix();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(m, m);
  const double norm = a.norm();
  const double thresh = 1e-13 * norm;
  auto off = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < 100 && norm > 0.0 && off() > thresh; ++sweep) {
    for (Eigen::Index p = 0; p < m - 1; ++p)
      for (Eigen::Index q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  SymEigen out;
  out.values.resize(m);
  out.vectors.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.values(j) = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

/// Eigenvalues above tol_rank * max(1, lambda_max).
inline int numeric_rank(const SymMatrixF& q, double tol_rank = 1e-6) {
  if (q.dim() == 0) return 0;
  auto e = eigen_sym(q);
  const double cut = tol_rank * std::max(1.0, e.values(e.values.size() - 1));
  int r = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) > cut) ++r;
  return r;
}

}  // namespace sosgram
