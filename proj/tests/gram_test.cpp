#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sosgram/gram.hpp"
#include "sosgram/registry.hpp"

using namespace sosgram;

namespace {

Polynomial P(const std::string& s, int n) { return parse_poly(s, n); }

/// Nullity of the map Sym(m) -> H_{n,2d}, Q -> v^T Q v, from its exact rank.
std::size_t expansion_nullity(int n, int d) {
  GramFrame frame(n, d);
  MonomialBasis target(n, 2 * d);
  std::vector<RationalVector> cols;
  for (std::size_t i = 0; i < frame.m; ++i)
    for (std::size_t j = i; j < frame.m; ++j) {
      RationalVector c(target.size());
      c[target.index(frame.basis[i] * frame.basis[j])] = i == j ? 1 : 2;
      cols.push_back(c);
    }
  auto map = RationalMatrix::from_rows(cols, target.size()).transpose();
  return cols.size() - rank(map);
}

RationalVector vectorize(const RationalMatrix& b) {
  RationalVector v;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = i; j < b.cols(); ++j) v.push_back(b(i, j));
  return v;
}

RationalMatrix coefficient_rows(const std::vector<Polynomial>& ps, const GramFrame& frame) {
  std::vector<RationalVector> rows;
  for (auto& p : ps) rows.push_back(p.coefficients(frame.basis));
  return RationalMatrix::from_rows(rows, frame.m);
}

}  // namespace

TEST(ExpandSos, Trivial) {
  SosDecomposition s({P("x1^2", 2), P("x2^2", 2)});
  EXPECT_EQ(expand_sos(s), P("x1^4 + x2^4", 2));
}

TEST(ExpandSos, SexticMatchesIndependentEvaluation) {
  auto f = expand_sos(find_example("reznick46").decomposition);
  EXPECT_EQ(f.coeff(Monomial({6, 0, 0, 0})), make_rational(9, 4));
  EXPECT_EQ(f.degree(), 6);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x{g(rng), g(rng), g(rng), g(rng)};
    double s2 = 0;
    for (double xi : x) s2 += xi * xi;
    double ref = 0;
    for (double xi : x) {
      double p = xi * (1.5 * xi * xi - (s2 - xi * xi));
      ref += p * p;
    }
    EXPECT_NEAR(f.evaluate(x), ref, 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST(ExpandSos, QuarticFifthSquare) {
  auto f = expand_sos(find_example("ex1:54").decomposition);
  EXPECT_EQ(f.coeff(Monomial::power(5, 4, 4)), 1);
  EXPECT_EQ(f.degree(), 4);
}

TEST(GramFromSos, Ranks) {
  EXPECT_EQ(gram_from_sos(SosDecomposition({P("x1^2", 2), P("x2^2", 2), P("x1*x2", 2)})).rank, 3u);
  EXPECT_EQ(gram_from_sos(SosDecomposition({P("x1^2", 2), P("2*x1^2", 2)})).rank, 1u);
  EXPECT_EQ(gram_from_sos(find_example("ex1:54").decomposition).rank, 5u);
}

TEST(GramFromSos, QuadraticFormReproducesF) {
  for (auto& e : example_registry()) {
    auto g = gram_from_sos(e.decomposition);
    GramFrame frame(e.decomposition.n, e.decomposition.d);
    EXPECT_TRUE(g.Q0.is_symmetric());
    EXPECT_EQ(quadratic_form(frame, g.Q0), expand_sos(e.decomposition)) << e.key;
    EXPECT_EQ(g.rank, rank(coefficient_rows(e.decomposition.polys, frame))) << e.key;
    EXPECT_EQ(g.rank, rank(g.Q0)) << e.key;
  }
}

TEST(KernelDirections, DimensionsMatchExpansionNullity) {
  const std::vector<std::tuple<int, int, std::size_t>> cases{{5, 2, 50}, {4, 3, 126}, {6, 2, 105}, {1, 3, 0}, {3, 3, 27}};
  for (auto [n, d, dim] : cases) {
    GramFrame frame(n, d);
    auto dirs = kernel_directions(frame);
    EXPECT_EQ(dirs.size(), dim) << n << "," << d;
    EXPECT_EQ(expansion_nullity(n, d), dim) << n << "," << d;
    EXPECT_EQ(dirs.size(), frame.m * (frame.m + 1) / 2 - static_cast<std::size_t>(binom(n + 2 * d - 1, 2 * d)));
  }
}

TEST(KernelDirections, EveryDirectionIsInTheKernelAndIndependent) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{5, 2}, {4, 3}, {6, 2}, {2, 2}}) {
    GramFrame frame(n, d);
    auto dirs = kernel_directions(frame);
    std::vector<RationalVector> rows;
    for (auto& b : dirs) {
      ASSERT_TRUE(b.is_symmetric());
      ASSERT_TRUE(quadratic_form(frame, b).is_zero());
      rows.push_back(vectorize(b));
    }
    if (rows.empty()) continue;
    EXPECT_EQ(rank(RationalMatrix::from_rows(rows, rows.front().size())), dirs.size());
  }
}

TEST(KernelDirections, Deterministic) {
  GramFrame frame(3, 2);
  EXPECT_EQ(kernel_directions(frame), kernel_directions(frame));
  // First product with two splits: x1^2*x2^2 = (x1^2)(x2^2) = (x1x2)^2.
  auto dirs = kernel_directions(frame);
  ASSERT_FALSE(dirs.empty());
  EXPECT_EQ(dirs.front()(0, 3), make_rational(1, 2));
  EXPECT_EQ(dirs.front()(3, 0), make_rational(1, 2));
  EXPECT_EQ(dirs.front()(1, 1), -1);
}

TEST(Spectrahedron, FromDecomposition) {
  auto p = spectrahedron(find_example("ex1:54").decomposition);
  EXPECT_EQ(rank(p.Q0), 5u);
  EXPECT_EQ(p.directions.size(), 50u);
  EXPECT_EQ(quadratic_form(p.frame, p.Q0), p.f);
  EXPECT_EQ(spectrahedron(find_example("reznick46").decomposition).directions.size(), 126u);
}

TEST(Spectrahedron, FromPolynomial) {
  auto p = spectrahedron(P("x1^4", 1));
  EXPECT_EQ(p.Q0, RationalMatrix::from_rows({{1}}, 1));
  EXPECT_TRUE(p.directions.empty());
  EXPECT_THROW(spectrahedron(P("x1^3", 1)), DomainError);
  for (auto& e : example_registry()) {
    auto f = expand_sos(e.decomposition);
    auto q = spectrahedron(f);
    EXPECT_EQ(quadratic_form(q.frame, q.Q0), f) << e.key;
    std::vector<Rational> y(q.directions.size());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = make_rational(static_cast<long>(k % 7) - 3, 5);
    EXPECT_EQ(quadratic_form(q.frame, point_of(q, y)), f) << e.key;
  }
}

TEST(SosFromPsd, ExactRoundTripOnRegistry) {
  for (auto& e : example_registry()) {
    auto g = gram_from_sos(e.decomposition);
    GramFrame frame(e.decomposition.n, e.decomposition.d);
    auto back = sos_from_psd(g.Q0, frame);
    EXPECT_EQ(expand_sos(back), expand_sos(e.decomposition)) << e.key;
    EXPECT_EQ(back.polys.size(), g.rank) << e.key;
    EXPECT_TRUE(same_row_space(coefficient_rows(back.polys, frame), coefficient_rows(e.decomposition.polys, frame)))
        << e.key;
  }
}

TEST(SosFromPsd, SmallCases) {
  GramFrame frame(1, 2);
  auto s = sos_from_psd(RationalMatrix::from_rows({{4}}, 1), frame);
  ASSERT_EQ(s.polys.size(), 1u);
  EXPECT_EQ(s.polys.front(), P("2*x1^2", 1));
  EXPECT_TRUE(s.weights.empty());

  GramFrame f2(2, 1);
  EXPECT_THROW(sos_from_psd(RationalMatrix::from_rows({{1, 0}, {0, -1}}, 2), f2), NotPsdError);
  EXPECT_THROW(sos_from_psd(RationalMatrix::from_rows({{0, 1}, {1, 0}}, 2), f2), NotPsdError);
  EXPECT_THROW(sos_from_psd(RationalMatrix::from_rows({{1, 2}, {2, 1}}, 2), f2), NotPsdError);

  // A non-square pivot is kept as a weight.
  auto w = sos_from_psd(RationalMatrix::from_rows({{2, 0}, {0, 3}}, 2), f2);
  ASSERT_EQ(w.weights.size(), 2u);
  EXPECT_EQ(expand_sos(w), P("2*x1^2 + 3*x2^2", 2));
}

TEST(SosFromPsd, NumericRoundTripOnRegistry) {
  for (auto& e : example_registry()) {
    auto g = gram_from_sos(e.decomposition);
    GramFrame frame(e.decomposition.n, e.decomposition.d);
    auto back = sos_from_psd(SymMatrixF::from_rational(g.Q0), frame, 1e-6);
    EXPECT_EQ(back.polys.size(), g.rank) << e.key;
    auto err = max_abs_coefficient(expand_sos(back) - expand_sos(e.decomposition));
    EXPECT_LE(err.get_d(), 1e-8) << e.key;
  }
  GramFrame f2(2, 1);
  EXPECT_THROW(sos_from_psd(SymMatrixF(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix()), f2), NotPsdError);
}
