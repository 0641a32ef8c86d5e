// Numeric analyses of a Gram spectrahedron: boundary membership, strict
// positivity, maximum rank and uniqueness.
//
// Rank and uniqueness come from facial reduction. The dual matrix Z of the
// max-min-eigenvalue problem certifies that every feasible Q vanishes on the
// directions where Z is large and the slack is tiny; restricting to the
// remaining directions V gives a smaller family V U V^T, and the process
// repeats until the family has a positive definite point. Its dimension is
// then the maximum rank, and the point is unique iff the reduced family has no
// free directions.
//
// Exposure is decided per eigenvector of Z by the complementarity ratio z/s.
// Directions where z and s are both of order sqrt(gap) are left in place: they
// come from non-strictly complementary optima and are exposed in a later round,
// where they become strictly complementary.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "sosgram/dual.hpp"
#include "sosgram/gram.hpp"
#include "sosgram/sdp.hpp"

namespace sosgram {

struct AnalyzeOptions {
  double tol_boundary = 1e-6;
  double tol_width = 1e-6;
  double tol_positive = 1e-6;  // sphere minimum above this counts as strictly positive
  int sphere_starts = 64;      // multistart count for the sphere minimum
  double expose_ratio = 1e4;   // z/s needed to expose a direction
  double expose_floor = 1e-6;  // z must also exceed this fraction of max z
  double face_tol = 1e-4;      // reduced t above this (relative) means a PD point exists
  int max_rounds = 32;
};

enum class BoundaryVerdict { boundary, interior, ambiguous };

inline std::string to_string(BoundaryVerdict v) {
  switch (v) {
    case BoundaryVerdict::boundary: return "boundary";
    case BoundaryVerdict::interior: return "interior";
    case BoundaryVerdict::ambiguous: return "ambiguous";
  }
  return "unknown";
}

struct SpectraReport {
  Polynomial f;
  double t_star = 0.0;   // certified upper bound on max lambda_min over the spectrahedron
  double t_lower = 0.0;  // lambda_min of the best primal point found
  BoundaryVerdict boundary = BoundaryVerdict::ambiguous;
  bool on_boundary = false;
  double sphere_min = 0.0;
  bool strictly_positive = false;
  int max_rank = 0;
  bool unique_point = false;
  std::vector<std::pair<double, double>> widths;  // [min, max] of <B_j, Q>
  int face_dim = 0;
  int face_rounds = 0;
  bool face_resolved = false;  // reduction ended at a family with a PD point
  std::vector<int> observed_ranks;
  std::uint64_t seed = 0;
};

/// Floating-point copy of a Gram parametrization.
inline LmiModel numeric_model(const GramParam& p) {
  std::vector<SymMatrixF> dirs;
  dirs.reserve(p.directions.size());
  for (auto& b : p.directions) dirs.push_back(SymMatrixF::from_rational(b));
  return LmiModel(SymMatrixF::from_rational(p.Q0), std::move(dirs));
}

/// The spectrahedron restricted to Q = V U V^T, parametrized over U.
struct FaceReduction {
  Eigen::MatrixXd V;  // m x r, orthonormal columns
  LmiModel model;     // over U, r x r
  SdpOutcome first;   // max-min-eig on the full family
  double t_face = 0.0;
  int rounds = 0;
  bool resolved = false;

  SymMatrixF lift(const SymMatrixF& u) const { return SymMatrixF(V * u.matrix() * V.transpose()); }
};

namespace detail {

struct ExpansionMap {
  MonomialBasis target;
  std::vector<std::vector<std::size_t>> index;  // frame pair -> target monomial
  Eigen::VectorXd f;
};

inline ExpansionMap expansion_map(const GramParam& p) {
  ExpansionMap e{MonomialBasis(p.frame.n, 2 * p.frame.d), {}, {}};
  e.index.assign(p.frame.m, std::vector<std::size_t>(p.frame.m));
  for (std::size_t i = 0; i < p.frame.m; ++i)
    for (std::size_t j = 0; j < p.frame.m; ++j) e.index[i][j] = e.target.index(p.frame.basis[i] * p.frame.basis[j]);
  auto fc = p.f.coefficients(e.target);
  e.f.resize(static_cast<Eigen::Index>(fc.size()));
  for (std::size_t i = 0; i < fc.size(); ++i) e.f(static_cast<Eigen::Index>(i)) = fc[i].get_d();
  return e;
}

/// Affine family {U : v^T V U V^T v = f} by least squares. Small singular
/// values separated from the rest by three decades count as zero, since V is
/// only accurate to roughly sqrt(gap).
inline LmiModel reduced_family(const ExpansionMap& e, const Eigen::MatrixXd& v) {
  const Eigen::Index r = v.cols();
  const Eigen::Index m = v.rows();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = a; b < r; ++b) pairs.emplace_back(a, b);
  Eigen::MatrixXd map = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(e.target.size()),
                                              static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    auto [a, b] = pairs[c];
    Eigen::MatrixXd outer = v.col(a) * v.col(b).transpose();
    if (a != b) outer += outer.transpose().eval();
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        map(static_cast<Eigen::Index>(e.index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]),
            static_cast<Eigen::Index>(c)) += outer(i, j);
  }
  auto to_sym = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(r, r);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      auto [a, b] = pairs[c];
      u(a, b) = u(b, a) = x(static_cast<Eigen::Index>(c));
    }
    return SymMatrixF(u);
  };
  if (pairs.empty()) return LmiModel(SymMatrixF(std::size_t{0}), {});
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(map, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  Eigen::Index rk = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-9 * smax) ++rk;
  for (Eigen::Index k = 0; k + 1 < sv.size(); ++k)
    if (sv(k + 1) < 1e-3 * smax && sv(k) > 1e3 * sv(k + 1)) {
      rk = k + 1;
      break;
    }
  Eigen::VectorXd y = svd.matrixU().leftCols(rk).transpose() * e.f;
  for (Eigen::Index k = 0; k < rk; ++k) y(k) /= sv(k);
  const Eigen::VectorXd u0 = svd.matrixV().leftCols(rk) * y;
  std::vector<SymMatrixF> dirs;
  for (Eigen::Index k = rk; k < static_cast<Eigen::Index>(pairs.size()); ++k) dirs.push_back(to_sym(svd.matrixV().col(k)));
  return LmiModel(to_sym(u0), std::move(dirs));
}

/// Columns of the eigenvectors of Z that are not exposed by complementarity.
inline Eigen::MatrixXd unexposed_directions(const SdpOutcome& out, const AnalyzeOptions& a) {
  const Eigen::Index r = static_cast<Eigen::Index>(out.Q.dim());
  auto ze = eigen_sym(out.dual);
  const Eigen::MatrixXd s = out.Q.matrix() - out.value * Eigen::MatrixXd::Identity(r, r);
  const double zmax = r > 0 ? ze.values.maxCoeff() : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < r; ++k) {
    const Eigen::VectorXd u = ze.vectors.col(k);
    const double z = ze.values(k);
    const double sk = std::max(u.dot(s * u), 1e-300);
    const bool exposed = zmax > 0 && z >= a.expose_floor * zmax && z >= a.expose_ratio * sk;
    if (!exposed) keep.push_back(k);
  }
  Eigen::MatrixXd w(r, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = ze.vectors.col(keep[k]);
  return w;
}

}  // namespace detail

inline FaceReduction face_reduce(const GramParam& param, const SdpOptions& opts = {}, const AnalyzeOptions& a = {}) {
  const auto emap = detail::expansion_map(param);
  FaceReduction fr;
  fr.V = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(param.frame.m), static_cast<Eigen::Index>(param.frame.m));
  fr.model = numeric_model(param);
  for (;;) {
    if (fr.model.m == 0) {
      fr.resolved = true;
      fr.t_face = 0.0;
      break;
    }
    auto out = max_min_eig(fr.model, opts);
    if (fr.rounds == 0) fr.first = out;
    fr.t_face = out.value;
    if (out.status == SdpStatus::unbounded) throw DomainError("Gram family is unbounded");
    if (out.value > a.face_tol * std::max(1.0, fr.model.A0.max_abs())) {
      fr.resolved = true;
      break;
    }
    if (fr.rounds >= a.max_rounds) break;
    const Eigen::MatrixXd w = detail::unexposed_directions(out, a);
    if (w.cols() == static_cast<Eigen::Index>(fr.model.m)) break;
    fr.V = fr.V * w;
    fr.model = detail::reduced_family(emap, fr.V);
    ++fr.rounds;
  }
  return fr;
}

namespace detail {

/// Double-factorial Gaussian moments: a positive definite moment functional.
inline RationalVector gaussian_functional(const MonomialBasis& target) {
  RationalVector g(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    Integer v = 1;
    bool even = true;
    for (int e : target[i].exponents()) {
      if (e % 2) even = false;
      for (int k = e - 1; k > 0; k -= 2) v *= k;
    }
    g[i] = even ? Rational(v) : Rational(0);
  }
  return g;
}

/// Exact PSD test by symmetric elimination; cheaper than the characteristic
/// polynomial for matrices with long binary entries.
inline bool psd_by_pivots(RationalMatrix a) {
  const std::size_t m = a.rows();
  std::vector<bool> used(m, false);
  for (;;) {
    std::size_t piv = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      if (sgn(a(i, i)) < 0) return false;
      if (sgn(a(i, i)) > 0 && piv == m) piv = i;
    }
    if (piv == m) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (!used[i] && !used[j] && sgn(a(i, j)) != 0) return false;
      return true;
    }
    const Rational w = a(piv, piv);
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || i == piv || sgn(a(i, piv)) == 0) continue;
      const Rational c = a(i, piv) / w;
      for (std::size_t j = 0; j < m; ++j)
        if (!used[j] && sgn(a(piv, j)) != 0) a(i, j) -= c * a(piv, j);
    }
    used[piv] = true;
  }
}

}  // namespace detail

struct DualBound {
  double bound = std::numeric_limits<double>::infinity();  // certified t* <= bound
  std::vector<double> l;                                   // over the lex basis of degree 2d
  SdpStatus status = SdpStatus::max_iter;
};

/// Weak duality: for Q in the spectrahedron and Q_l PSD, <Q_l, Q - tI> >= 0
/// gives t* <= l(f) / tr Q_l. l is found by minimizing l(f) over trace-one PSD
/// moment matrices with the barrier solver, so Q_l is strictly positive
/// definite in floating point. The bound is then re-derived in rational
/// arithmetic from the exact binary value of l, shifted toward the Gaussian
/// functional if the exact PSD test needs it.
inline DualBound dual_upper_bound(const GramParam& p, const SdpOptions& opts = {}) {
  const GramFrame& fr = p.frame;
  MonomialBasis target(fr.n, 2 * fr.d);
  const Eigen::Index m = static_cast<Eigen::Index>(fr.m);
  std::vector<std::vector<std::size_t>> idx(fr.m, std::vector<std::size_t>(fr.m));
  for (std::size_t i = 0; i < fr.m; ++i)
    for (std::size_t j = 0; j < fr.m; ++j) idx[i][j] = target.index(fr.basis[i] * fr.basis[j]);
  auto moment = [&](const std::vector<double>& x) {
    Eigen::MatrixXd q(m, m);
    for (std::size_t i = 0; i < fr.m; ++i)
      for (std::size_t j = 0; j < fr.m; ++j)
        q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[idx[i][j]];
    return SymMatrixF(q);
  };
  const auto gauss = detail::gaussian_functional(target);
  std::vector<double> gv(target.size());
  for (std::size_t g = 0; g < gauss.size(); ++g) gv[g] = gauss[g].get_d();
  const SymMatrixF gm = moment(gv);
  const double gtrace = gm.matrix().trace();

  const SymMatrixF a0 = (1.0 / gtrace) * gm;
  std::vector<SymMatrixF> dirs;
  for (std::size_t g = 0; g < target.size(); ++g) {
    std::vector<double> e(target.size(), 0.0);
    e[g] = 1.0;
    const SymMatrixF mg = moment(e);
    dirs.push_back(mg - mg.matrix().trace() * a0);
  }
  auto res = optimize_linear(LmiModel(a0, std::move(dirs)), -1.0 * SymMatrixF::from_rational(p.Q0), opts);

  DualBound out;
  out.status = res.status;
  out.l.assign(target.size(), 0.0);
  std::vector<int> count(target.size(), 0);
  for (std::size_t i = 0; i < fr.m; ++i)
    for (std::size_t j = 0; j < fr.m; ++j) {
      out.l[idx[i][j]] += res.Q(i, j);
      ++count[idx[i][j]];
    }
  for (std::size_t g = 0; g < target.size(); ++g) out.l[g] /= count[g];

  const double lmin = eigen_sym(moment(out.l)).values(0);
  const double gmin = eigen_sym(gm).values(0);
  double delta = 0.0;
  const auto fc = p.f.coefficients(target);
  for (int attempt = 0; attempt < 80; ++attempt) {
    RationalVector lq(target.size());
    for (std::size_t g = 0; g < target.size(); ++g) lq[g] = Rational(out.l[g]) + Rational(delta) * gauss[g];
    auto q = moment_matrix(lq, fr.n, fr.d);
    Rational tr = 0;
    for (std::size_t i = 0; i < fr.m; ++i) tr += q(i, i);
    if (sgn(tr) > 0 && detail::psd_by_pivots(q)) {
      const Rational bound = dot(lq, fc) / tr;
      out.bound = std::nextafter(bound.get_d(), std::numeric_limits<double>::infinity());
      break;
    }
    delta = delta == 0.0 ? std::max(0.0, -lmin) / gmin + 1e-15 : 2.0 * delta;
  }
  return out;
}

/// Minimum of f on the unit sphere by multistart projected gradient descent
/// with Armijo backtracking along the great-circle retraction.
inline double strict_positivity(const Polynomial& f, int starts, std::uint64_t seed) {
  if (f.degree() % 2 != 0) throw DomainError("sphere minimum needs a form of even degree");
  const int n = f.nvars();
  std::vector<std::vector<int>> exps;
  std::vector<double> coef;
  for (auto& [mono, c] : f.terms()) {
    exps.push_back(mono.exponents());
    coef.push_back(c.get_d());
  }
  auto value_grad = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    double v = 0.0;
    if (grad) grad->setZero(n);
    for (std::size_t t = 0; t < coef.size(); ++t) {
      double term = coef[t];
      for (int i = 0; i < n; ++i) term *= std::pow(x(i), exps[t][static_cast<std::size_t>(i)]);
      v += term;
      if (!grad) continue;
      for (int i = 0; i < n; ++i) {
        const int e = exps[t][static_cast<std::size_t>(i)];
        if (e == 0) continue;
        double d = coef[t] * e * std::pow(x(i), e - 1);
        for (int k = 0; k < n; ++k)
          if (k != i) d *= std::pow(x(k), exps[t][static_cast<std::size_t>(k)]);
        (*grad)(i) += d;
      }
    }
    return v;
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(1, starts); ++s) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = g(rng);
    if (x.norm() == 0.0) x(0) = 1.0;
    x.normalize();
    Eigen::VectorXd grad(n);
    double fx = value_grad(x, &grad);
    double step = 1.0;
    for (int it = 0; it < 2000; ++it) {
      Eigen::VectorXd pg = grad - grad.dot(x) * x;
      const double pn2 = pg.squaredNorm();
      if (pn2 < 1e-26) break;
      bool moved = false;
      for (step = std::min(1e6, 2.0 * step); step > 1e-16; step *= 0.5) {
        Eigen::VectorXd y = (x - step * pg).normalized();
        const double fy = value_grad(y, nullptr);
        if (fy <= fx - 0.3 * step * pn2) {
          x = y;
          moved = true;
          break;
        }
      }
      if (!moved) break;
      fx = value_grad(x, &grad);
    }
    best = std::min(best, fx);
  }
  return best;
}

struct RankSample {
  int max_rank = 0;
  std::vector<int> observed;  // ranks of the individual lifted points, then of their average
};

/// Averages the phase-1 point and R random linear optima of the reduced
/// family, lifted back to Gram matrices; returns the numeric rank of the average.
inline RankSample max_rank_sample(const FaceReduction& fr, int restarts, const SdpOptions& opts) {
  RankSample out;
  const Eigen::Index m = fr.V.rows();
  if (fr.model.m == 0) {
    out.observed.push_back(0);
    return out;
  }
  std::vector<SymMatrixF> points;
  points.push_back(fr.lift(max_min_eig(fr.model, opts).Q));
  std::mt19937_64 rng(opts.seed);
  for (int k = 0; k < restarts && !fr.model.A.empty(); ++k) {
    auto res = optimize_linear(fr.model, random_objective(fr.model.m, rng), opts);
    if (res.status == SdpStatus::optimal) points.push_back(fr.lift(res.Q));
  }
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(m, m);
  for (auto& q : points) {
    out.observed.push_back(numeric_rank(q, opts.tol_rank));
    avg += q.matrix();
  }
  avg /= static_cast<double>(points.size());
  out.max_rank = numeric_rank(SymMatrixF(avg), opts.tol_rank);
  out.observed.push_back(out.max_rank);
  return out;
}

inline int max_rank_estimate(const GramParam& param, int restarts, const SdpOptions& opts = {},
                             const AnalyzeOptions& a = {}) {
  return max_rank_sample(face_reduce(param, opts, a), restarts, opts).max_rank;
}

/// [min, max] of <B_j, Q> over the reduced family for every kernel direction.
inline std::vector<std::pair<double, double>> direction_widths(const GramParam& param, const FaceReduction& fr,
                                                               const SdpOptions& opts) {
  std::vector<std::pair<double, double>> out;
  const SymMatrixF base = fr.lift(fr.model.A0);
  for (auto& b : param.directions) {
    const SymMatrixF bf = SymMatrixF::from_rational(b);
    const double at = inner(bf, base);
    const SymMatrixF c(fr.V.transpose() * bf.matrix() * fr.V);
    double reach = 0.0;
    for (auto& a : fr.model.A) reach = std::max(reach, std::abs(inner(c, a)));
    if (fr.model.A.empty() || reach <= 1e-12 * std::max(1.0, c.max_abs())) {
      out.emplace_back(at, at);
      continue;
    }
    auto hi = optimize_linear(fr.model, c, opts);
    auto lo = optimize_linear(fr.model, -1.0 * c, opts);
    out.emplace_back(-lo.value, hi.value);
  }
  return out;
}

inline SpectraReport analyze(const SosDecomposition& input, const SdpOptions& opts = {}, int restarts = 8,
                             const AnalyzeOptions& a = {}) {
  const GramParam param = spectrahedron(input);
  SpectraReport rep;
  rep.f = param.f;
  rep.seed = opts.seed;

  const FaceReduction fr = face_reduce(param, opts, a);
  rep.t_lower = fr.first.eigenvalues.empty() ? 0.0 : fr.first.eigenvalues.front();
  rep.t_star = dual_upper_bound(param, opts).bound;
  if (rep.t_lower > a.tol_boundary)
    rep.boundary = BoundaryVerdict::interior;
  else if (rep.t_star >= 0.0 && rep.t_star <= a.tol_boundary)
    rep.boundary = BoundaryVerdict::boundary;
  else
    rep.boundary = BoundaryVerdict::ambiguous;
  rep.on_boundary = rep.boundary == BoundaryVerdict::boundary;

  rep.sphere_min = strict_positivity(param.f, std::max(restarts, a.sphere_starts), opts.seed);
  rep.strictly_positive = rep.sphere_min > a.tol_positive;

  rep.face_dim = static_cast<int>(fr.V.cols());
  rep.face_rounds = fr.rounds;
  rep.face_resolved = fr.resolved;
  auto ranks = max_rank_sample(fr, restarts, opts);
  rep.max_rank = ranks.max_rank;
  rep.observed_ranks = ranks.observed;

  rep.widths = direction_widths(param, fr, opts);
  rep.unique_point = std::all_of(rep.widths.begin(), rep.widths.end(), [&](const std::pair<double, double>& w) {
    return w.second - w.first <= a.tol_width;
  });
  return rep;
}

}  // namespace sosgram
