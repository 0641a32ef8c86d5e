#include <gtest/gtest.h>

#include "sosgram/io.hpp"
#include "sosgram/registry.hpp"

using namespace sosgram;

namespace {

template <class T>
T round_trip(const T& x) {
  return json::parse(json(x).dump()).get<T>();
}

}  // namespace

TEST(HilbertTableJson, Schema) {
  auto t = hilbert_table(powers_ideal(3, 3), 6);
  json j = t;
  EXPECT_EQ(j.at("ideal"), "<x1^3, x2^3, x3^3>");
  EXPECT_EQ(j.at("values").size(), 7u);
  EXPECT_EQ(j.at("values")[3], json({3, 7}));
}

TEST(HilbertTableJson, RoundTrip) {
  auto t = hilbert_table(powers_ideal(4, 3), 8);
  auto u = round_trip(t);
  EXPECT_EQ(u.ideal, t.ideal);
  EXPECT_EQ(u.values, t.values);
}

TEST(TableNJson, RoundTripKeepsMissingBoundsNull) {
  auto rows = table_N({{4, 6}, {5, 6}});
  json j = rows;
  EXPECT_EQ(j[0].at("N-1"), 13);
  EXPECT_TRUE(j[1].at("p_lower").is_null());
  auto back = json::parse(j.dump()).get<std::vector<TableNRow>>();
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].n_minus_one, 13);
  EXPECT_EQ(back[0].p_lower, 8);
  EXPECT_EQ(back[0].p_upper, 11);
  EXPECT_FALSE(back[1].p_lower.has_value());
  EXPECT_EQ(back[1].dim_h, rows[1].dim_h);
}

TEST(MatrixJson, RationalEntriesAreExact) {
  GramFrame frame(2, 2);
  RationalMatrix q(3, 3);
  q(0, 0) = Rational(1, 3);
  q(1, 2) = q(2, 1) = Rational(-7, 2);
  json j = matrix_json(frame.basis, q);
  EXPECT_EQ(j.at("basis"), json({"x1^2", "x1*x2", "x2^2"}));
  EXPECT_EQ(j.at("entries")[0], "1/3");
  EXPECT_EQ(j.at("entries")[5], "-7/2");
  EXPECT_EQ(rational_matrix_from_json(json::parse(j.dump())), q);
}

TEST(MatrixJson, SizeMismatchThrows) {
  json j = {{"basis", {"x1", "x2"}}, {"entries", {"1", "0", "0"}}};
  EXPECT_THROW(rational_matrix_from_json(j), DimensionError);
}

TEST(SdpOutcomeJson, RoundTrip) {
  auto param = spectrahedron(find_example("ex1:54").decomposition);
  auto out = max_min_eig(numeric_model(param));
  auto back = sdp_outcome_from_json(json::parse(sdp_outcome_json(out, param.frame.basis).dump()));
  EXPECT_EQ(back.status, out.status);
  EXPECT_EQ(back.value, out.value);
  EXPECT_EQ(back.lambda, out.lambda);
  EXPECT_EQ(back.eigenvalues, out.eigenvalues);
  EXPECT_TRUE(back.Q.matrix() == out.Q.matrix());
  EXPECT_TRUE(back.dual.matrix() == out.dual.matrix());
  EXPECT_EQ(back.gap, out.gap);
  EXPECT_EQ(back.iterations, out.iterations);
}

TEST(SpectraReportJson, RoundTripCarriesSeedAndVerdict) {
  SdpOptions opts;
  opts.seed = 7;
  auto rep = analyze(find_example("reznick46").decomposition, opts, 2);
  json j = rep;
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_EQ(j.at("boundary"), "boundary");
  auto back = round_trip(rep);
  EXPECT_EQ(back.f, rep.f);
  EXPECT_EQ(back.t_star, rep.t_star);
  EXPECT_EQ(back.t_lower, rep.t_lower);
  EXPECT_EQ(back.boundary, rep.boundary);
  EXPECT_EQ(back.on_boundary, rep.on_boundary);
  EXPECT_EQ(back.sphere_min, rep.sphere_min);
  EXPECT_EQ(back.strictly_positive, rep.strictly_positive);
  EXPECT_EQ(back.max_rank, rep.max_rank);
  EXPECT_EQ(back.unique_point, rep.unique_point);
  EXPECT_EQ(back.widths, rep.widths);
  EXPECT_EQ(back.face_dim, rep.face_dim);
  EXPECT_EQ(back.face_rounds, rep.face_rounds);
  EXPECT_EQ(back.face_resolved, rep.face_resolved);
  EXPECT_EQ(back.observed_ranks, rep.observed_ranks);
  EXPECT_EQ(back.seed, 7u);
}

TEST(SpectraReportJson, UnknownVerdictIsRejected) {
  SpectraReport rep;
  rep.f = Polynomial::power(1, 0, 2);
  json j = rep;
  j["boundary"] = "maybe";
  EXPECT_THROW(j.get<SpectraReport>(), ParseError);
}

TEST(DualCertificateJson, RoundTrip) {
  const auto& polys = find_example("reznick46").decomposition.polys;
  auto cert = certificate_search(polys, default_probes(4, 3));
  json j = cert;
  EXPECT_EQ(j.at("l").at("basis").size(), 84u);
  EXPECT_EQ(j.at("Q_l").at("basis").size(), 20u);
  EXPECT_EQ(j.at("kernel").at("rows").size(), 4u);
  auto back = round_trip(cert);
  EXPECT_EQ(back.n, cert.n);
  EXPECT_EQ(back.d, cert.d);
  EXPECT_EQ(back.l, cert.l);
  EXPECT_EQ(back.Q_l, cert.Q_l);
  EXPECT_EQ(back.kernel, cert.kernel);
  EXPECT_EQ(back.psd_proved, cert.psd_proved);
  EXPECT_EQ(back.probes, cert.probes);
  EXPECT_EQ(back.charpoly, cert.charpoly);
  EXPECT_TRUE(psd_exact(back.Q_l));
}

TEST(ParseMonomial, RejectsPolynomials) {
  EXPECT_EQ(parse_monomial("x1^2*x3", 3), Monomial({2, 0, 1}));
  EXPECT_THROW(parse_monomial("x1 + x2", 2), ParseError);
  EXPECT_THROW(parse_monomial("2*x1", 2), ParseError);
}
