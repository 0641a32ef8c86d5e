// Dense log-det barrier solver for small affine matrix inequalities.
//
// Problems have the form: maximize c^T x subject to S(x) = F0 + sum_k x_k F_k
// positive definite, solved by Newton steps on -tau c^T x - log det S(x) with
// tau increased tenfold after each centering. At a centered point the matrix
// Z = S^{-1} / tau is dual feasible and the duality gap is exactly m / tau.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/symmetric.hpp"

namespace sosgram {

/// A0 + sum_j lambda_j A_j over m x m symmetric matrices.
struct LmiModel {
  std::size_t m = 0;
  SymMatrixF A0;
  std::vector<SymMatrixF> A;

  LmiModel() = default;
  LmiModel(SymMatrixF a0, std::vector<SymMatrixF> dirs) : m(a0.dim()), A0(std::move(a0)), A(std::move(dirs)) {
    for (auto& a : A)
      if (a.dim() != m) throw DimensionError("LMI direction has wrong size");
  }

  SymMatrixF at(const std::vector<double>& lambda) const {
    if (lambda.size() != A.size()) throw DimensionError("parameter vector length mismatch");
    Eigen::MatrixXd q = A0.matrix();
    for (std::size_t j = 0; j < A.size(); ++j) q += lambda[j] * A[j].matrix();
    return SymMatrixF(q);
  }
};

struct SdpOptions {
  double eps_gap = 1e-9;
  double eps_feas = 1e-8;
  double tol_rank = 1e-6;
  int max_iter = 200;
  std::uint64_t seed = 42;
};

enum class SdpStatus { optimal, infeasible, max_iter, unbounded };

inline std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

struct SdpOutcome {
  SdpStatus status = SdpStatus::max_iter;
  std::vector<double> lambda;
  double value = 0.0;
  SymMatrixF Q;                     // A0 + sum lambda_j A_j
  std::vector<double> eigenvalues;  // of Q, ascending
  SymMatrixF dual;                  // S^{-1}/tau at the last centered point
  double gap = 0.0;                 // m / tau at the last centered point
  int iterations = 0;
};

namespace detail {

struct BarrierProblem {
  Eigen::MatrixXd F0;
  std::vector<Eigen::MatrixXd> F;
  Eigen::VectorXd c;
  double radius = 0.0;  // > 0 adds -log(radius^2 - |x|^2)
};

struct BarrierResult {
  SdpStatus status = SdpStatus::max_iter;
  Eigen::VectorXd x;
  Eigen::MatrixXd Z;
  double gap = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

inline Eigen::MatrixXd slack(const BarrierProblem& p, const Eigen::VectorXd& x) {
  Eigen::MatrixXd s = p.F0;
  for (Eigen::Index k = 0; k < x.size(); ++k) s += x(k) * p.F[static_cast<std::size_t>(k)];
  return s;
}

/// Minimizes -tau c^T x - log det S(x) along the tau schedule from a strictly
/// feasible x0.
inline BarrierResult barrier_solve(const BarrierProblem& p, Eigen::VectorXd x, const SdpOptions& opts,
                                   double tau = 1.0) {
  const Eigen::Index m = p.F0.rows();
  const Eigen::Index nv = x.size();
  BarrierResult res;
  auto phi = [&](const Eigen::VectorXd& y, double t, bool& ok) {
    Eigen::LLT<Eigen::MatrixXd> llt(slack(p, y));
    ok = llt.info() == Eigen::Success;
    if (!ok) return std::numeric_limits<double>::infinity();
    const auto& l = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double d = l(i, i);
      if (!(d > 0.0) || !std::isfinite(d)) {
        ok = false;
        return std::numeric_limits<double>::infinity();
      }
      logdet += 2.0 * std::log(d);
    }
    if (p.radius > 0.0) {
      const double room = p.radius * p.radius - y.squaredNorm();
      if (!(room > 0.0)) {
        ok = false;
        return std::numeric_limits<double>::infinity();
      }
      logdet += std::log(room);
    }
    return -t * p.c.dot(y) - logdet;
  };

  bool ok = true;
  phi(x, tau, ok);
  if (!ok) throw DomainError("barrier start point is not strictly feasible");

  Eigen::MatrixXd sinv;
  for (;;) {
    // Centering.
    bool centered = false;
    while (res.iterations < opts.max_iter) {
      ++res.iterations;
      Eigen::LLT<Eigen::MatrixXd> llt(slack(p, x));
      Eigen::MatrixXd linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(m, m));
      sinv = linv.transpose() * linv;
      std::vector<Eigen::MatrixXd> g(static_cast<std::size_t>(nv));
      Eigen::VectorXd grad(nv);
      for (Eigen::Index k = 0; k < nv; ++k) {
        auto& gk = g[static_cast<std::size_t>(k)];
        gk = linv * p.F[static_cast<std::size_t>(k)] * linv.transpose();
        grad(k) = -tau * p.c(k) - gk.trace();
      }
      Eigen::MatrixXd h(nv, nv);
      for (Eigen::Index k = 0; k < nv; ++k)
        for (Eigen::Index l = k; l < nv; ++l)
          h(k, l) = h(l, k) = g[static_cast<std::size_t>(k)].cwiseProduct(g[static_cast<std::size_t>(l)]).sum();
      if (p.radius > 0.0 && nv > 0) {
        const double room = p.radius * p.radius - x.squaredNorm();
        grad += (2.0 / room) * x;
        h += (2.0 / room) * Eigen::MatrixXd::Identity(nv, nv) + (4.0 / (room * room)) * x * x.transpose();
      }
      Eigen::VectorXd dx;
      if (nv > 0) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        dx = -ldlt.solve(grad);
        if (ldlt.info() != Eigen::Success || !dx.allFinite()) {
          const double ridge = 1e-14 * std::max(1.0, h.diagonal().maxCoeff());
          dx = -(h + ridge * Eigen::MatrixXd::Identity(nv, nv)).ldlt().solve(grad);
        }
      } else {
        dx = Eigen::VectorXd(0);
      }
      const double dec2 = nv > 0 ? -grad.dot(dx) : 0.0;
      if (!(dec2 >= 0.0) || dec2 < 1e-6) {
        centered = true;
        break;
      }
      const double f0 = phi(x, tau, ok);
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-10) {
        Eigen::VectorXd y = x + alpha * dx;
        const double f1 = phi(y, tau, ok);
        if (ok && f1 <= f0 - 0.25 * alpha * dec2) {
          x = y;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (x.norm() > 1e8) {
        res.status = SdpStatus::unbounded;
        res.x = x;
        res.Z = sinv / tau;
        return res;
      }
      // No further progress possible in floating point: either the line search
      // failed outright, or it collapsed with the decrement already small.
      if (!moved || (alpha < 1e-3 && dec2 < 1e-3)) {
        centered = true;
        break;
      }
    }
    if (!centered) {
      res.status = SdpStatus::max_iter;
      break;
    }
    res.gap = static_cast<double>(m + (p.radius > 0.0 ? 1 : 0)) / tau;
    res.Z = sinv / tau;
    if (res.gap <= opts.eps_gap) {
      res.status = SdpStatus::optimal;
      break;
    }
    tau *= 10.0;
  }
  res.x = x;
  if (res.Z.size() == 0) res.Z = sinv / tau;
  return res;
}

/// Orthonormal basis (Frobenius) of span{A_j} and the map back to the A_j coordinates.
struct OrthoDirections {
  std::vector<Eigen::MatrixXd> W;
  Eigen::MatrixXd stacked;  // columns vec(A_j)
};

inline OrthoDirections orthonormalize(const LmiModel& model) {
  OrthoDirections out;
  const Eigen::Index m2 = static_cast<Eigen::Index>(model.m * model.m);
  const Eigen::Index s = static_cast<Eigen::Index>(model.A.size());
  out.stacked.resize(m2, s);
  for (Eigen::Index j = 0; j < s; ++j)
    out.stacked.col(j) = Eigen::Map<const Eigen::VectorXd>(model.A[static_cast<std::size_t>(j)].matrix().data(), m2);
  if (s == 0) return out;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(out.stacked);
  qr.setThreshold(1e-12);
  const Eigen::Index r = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m2, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    Eigen::MatrixXd w = Eigen::Map<const Eigen::MatrixXd>(q.col(k).data(), static_cast<Eigen::Index>(model.m),
                                                          static_cast<Eigen::Index>(model.m));
    out.W.push_back(0.5 * (w + w.transpose()));
  }
  return out;
}

inline std::vector<double> original_coordinates(const OrthoDirections& o, const LmiModel& model,
                                                const Eigen::MatrixXd& q) {
  const Eigen::Index m2 = static_cast<Eigen::Index>(model.m * model.m);
  if (o.stacked.cols() == 0) return {};
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(Eigen::MatrixXd(q - model.A0.matrix()).data(), m2);
  Eigen::VectorXd lam = o.stacked.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(lam.data(), lam.data() + lam.size());
}

inline void fill_outcome(SdpOutcome& out, const LmiModel& model, const OrthoDirections& o, const Eigen::MatrixXd& q) {
  out.Q = SymMatrixF(q);
  out.lambda = original_coordinates(o, model, out.Q.matrix());
  auto e = eigen_sym(out.Q);
  out.eigenvalues.assign(e.values.data(), e.values.data() + e.values.size());
}

}  // namespace detail

/// Maximizes t subject to A0 + sum lambda_j A_j - t I PSD. `value` is t.
inline SdpOutcome max_min_eig(const LmiModel& model, const SdpOptions& opts = {}) {
  const auto o = detail::orthonormalize(model);
  const std::size_t r = o.W.size();
  const Eigen::Index m = static_cast<Eigen::Index>(model.m);
  detail::BarrierProblem p;
  // Shift A0 by its projection onto the directions; the shift is undone when
  // lambda is recovered from Q.
  p.F0 = model.A0.matrix();
  for (auto& w : o.W) p.F0 -= w.cwiseProduct(model.A0.matrix()).sum() * w;
  p.F = o.W;
  p.F.push_back(-Eigen::MatrixXd::Identity(m, m));
  p.c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r + 1));
  p.c(static_cast<Eigen::Index>(r)) = 1.0;

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(r + 1));
  const double lmin = eigen_sym(SymMatrixF(p.F0)).values(0);
  x0(static_cast<Eigen::Index>(r)) = lmin - 1.0;
  // The optimal set may be unbounded even when t* is finite (a ray of optimal
  // lambda); a remote ball keeps the barrier bounded below. A t near the ball
  // means t* itself is unbounded.
  p.radius = 1e6 * std::max({1.0, p.F0.norm(), std::abs(lmin) + 1.0});

  auto res = detail::barrier_solve(p, x0, opts);
  SdpOutcome out;
  out.status = res.status;
  if (std::abs(res.x(static_cast<Eigen::Index>(r))) > 0.5 * p.radius) out.status = SdpStatus::unbounded;
  out.iterations = res.iterations;
  out.gap = res.gap;
  out.dual = SymMatrixF(res.Z);
  Eigen::MatrixXd q = p.F0;
  for (std::size_t k = 0; k < r; ++k) q += res.x(static_cast<Eigen::Index>(k)) * o.W[k];
  detail::fill_outcome(out, model, o, q);
  out.value = res.x(static_cast<Eigen::Index>(r));
  return out;
}

/// Maximizes <C, A0 + sum lambda_j A_j> over the PSD points of the family.
///
/// A phase-1 max_min_eig call supplies the start. When the family has no
/// positive definite point the constraint is relaxed to Q - delta I PSD with
/// delta = t_phase1 - eps_feas / 2, so returned points satisfy
/// lambda_min(Q) >= -eps_feas.
inline SdpOutcome optimize_linear(const LmiModel& model, const SymMatrixF& C, const SdpOptions& opts = {}) {
  if (C.dim() != model.m) throw DimensionError("objective has wrong size");
  auto phase1 = max_min_eig(model, opts);
  if (phase1.status == SdpStatus::unbounded) return phase1;
  if (phase1.value < -opts.eps_feas) {
    phase1.status = SdpStatus::infeasible;
    return phase1;
  }
  const auto o = detail::orthonormalize(model);
  const std::size_t r = o.W.size();
  const Eigen::Index m = static_cast<Eigen::Index>(model.m);
  const double delta = phase1.value > 0.0 ? 0.0 : phase1.value - 0.5 * opts.eps_feas;

  detail::BarrierProblem p;
  p.F0 = model.A0.matrix() - delta * Eigen::MatrixXd::Identity(m, m);
  p.F = o.W;
  p.c = Eigen::VectorXd(static_cast<Eigen::Index>(r));
  for (std::size_t k = 0; k < r; ++k) p.c(static_cast<Eigen::Index>(k)) = o.W[k].cwiseProduct(C.matrix()).sum();
  if (r == 0 || p.c.norm() == 0.0) {
    phase1.value = inner(C, phase1.Q);
    return phase1;
  }
  // Start from the phase-1 point expressed in the orthonormal directions.
  Eigen::VectorXd x0(static_cast<Eigen::Index>(r));
  const Eigen::MatrixXd diff = phase1.Q.matrix() - model.A0.matrix();
  for (std::size_t k = 0; k < r; ++k) x0(static_cast<Eigen::Index>(k)) = o.W[k].cwiseProduct(diff).sum();

  auto res = detail::barrier_solve(p, x0, opts, static_cast<double>(model.m) / std::max(1.0, p.c.norm()));
  SdpOutcome out;
  out.status = res.status;
  out.iterations = res.iterations + phase1.iterations;
  out.gap = res.gap;
  out.dual = SymMatrixF(res.Z);
  Eigen::MatrixXd q = model.A0.matrix();
  for (std::size_t k = 0; k < r; ++k) q += res.x(static_cast<Eigen::Index>(k)) * o.W[k];
  detail::fill_outcome(out, model, o, q);
  out.value = inner(C, out.Q);
  return out;
}

/// Seeded random symmetric matrix with unit Frobenius norm.
inline SymMatrixF random_objective(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd c(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = g(rng);
  SymMatrixF s(c);
  const double n = s.matrix().norm();
  return n > 0 ? (1.0 / n) * s : s;
}

}  // namespace sosgram
