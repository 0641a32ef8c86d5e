// JSON schemas for reports and tables. Rationals travel as strings ("p/q"),
// floats as numbers; every to_json has a matching from_json.
#pragma once

#include "json.hpp"  // vendored nlohmann/json

#include <string>
#include <vector>

#include "sosgram/analyze.hpp"
#include "sosgram/bounds.hpp"
#include "sosgram/dual.hpp"
#include "sosgram/ideals.hpp"
#include "sosgram/sdp.hpp"

namespace sosgram {

using nlohmann::json;

inline json basis_json(const MonomialBasis& b) {
  json out = json::array();
  for (auto& m : b.monomials()) out.push_back(m.to_string());
  return out;
}

inline Monomial parse_monomial(const std::string& s, int n) {
  auto p = parse_poly(s, n);
  if (p.size() != 1 || p.terms().begin()->second != 1) throw ParseError("not a monomial: " + s, 0);
  return p.leading_monomial();
}

/// Row-major {"basis", "entries"}; rational entries as strings.
inline json matrix_json(const MonomialBasis& b, const RationalMatrix& q) {
  json e = json::array();
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) e.push_back(to_string(q(i, j)));
  return {{"basis", basis_json(b)}, {"entries", e}};
}

inline json matrix_json(const MonomialBasis& b, const SymMatrixF& q) {
  json e = json::array();
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) e.push_back(q(i, j));
  return {{"basis", basis_json(b)}, {"entries", e}};
}

inline RationalMatrix rational_matrix_from_json(const json& j) {
  const auto& e = j.at("entries");
  const std::size_t m = j.at("basis").size();
  if (e.size() != m * m) throw DimensionError("matrix entries do not match basis size");
  RationalMatrix q(m, m);
  for (std::size_t k = 0; k < e.size(); ++k) q(k / m, k % m) = parse_rational(e[k].get<std::string>());
  return q;
}

inline SymMatrixF float_matrix_from_json(const json& j) {
  const auto& e = j.at("entries");
  const auto m = static_cast<Eigen::Index>(j.at("basis").size());
  if (static_cast<Eigen::Index>(e.size()) != m * m) throw DimensionError("matrix entries do not match basis size");
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index k = 0; k < m * m; ++k) a(k / m, k % m) = e[static_cast<std::size_t>(k)].get<double>();
  return SymMatrixF(a);
}

inline json rational_vector_json(const RationalVector& v) {
  json out = json::array();
  for (auto& x : v) out.push_back(to_string(x));
  return out;
}

inline RationalVector rational_vector_from_json(const json& j) {
  RationalVector v;
  for (auto& x : j) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

inline void to_json(json& j, const HilbertTable& t) {
  json values = json::array();
  for (auto& [k, v] : t.values) values.push_back({k, v});
  j = {{"ideal", t.ideal}, {"values", values}};
}

inline void from_json(const json& j, HilbertTable& t) {
  t.ideal = j.at("ideal").get<std::string>();
  t.values.clear();
  for (auto& kv : j.at("values")) t.values.emplace_back(kv.at(0).get<int>(), kv.at(1).get<long>());
}

inline void to_json(json& j, const TableNRow& r) {
  j = {{"n", r.n}, {"2d", r.two_d}, {"N-1", r.n_minus_one}, {"dim_H", r.dim_h},
       {"p_lower", r.p_lower ? json(*r.p_lower) : json(nullptr)},
       {"p_upper", r.p_upper ? json(*r.p_upper) : json(nullptr)}};
}

inline void from_json(const json& j, TableNRow& r) {
  r.n = j.at("n").get<int>();
  r.two_d = j.at("2d").get<int>();
  r.n_minus_one = j.at("N-1").get<long>();
  r.dim_h = j.at("dim_H").get<long>();
  r.p_lower = j.at("p_lower").is_null() ? std::nullopt : std::optional<int>(j.at("p_lower").get<int>());
  r.p_upper = j.at("p_upper").is_null() ? std::nullopt : std::optional<int>(j.at("p_upper").get<int>());
}

inline SdpStatus sdp_status_from_string(const std::string& s) {
  for (auto st : {SdpStatus::optimal, SdpStatus::infeasible, SdpStatus::max_iter, SdpStatus::unbounded})
    if (to_string(st) == s) return st;
  throw ParseError("unknown solver status: " + s, 0);
}

/// The Gram basis labels Q and dual; it is not stored in SdpOutcome itself.
inline json sdp_outcome_json(const SdpOutcome& o, const MonomialBasis& b) {
  return {{"status", to_string(o.status)}, {"value", o.value},           {"lambda", o.lambda},
          {"Q", matrix_json(b, o.Q)},      {"eigenvalues", o.eigenvalues}, {"dual", matrix_json(b, o.dual)},
          {"gap", o.gap},                  {"iterations", o.iterations}};
}

inline SdpOutcome sdp_outcome_from_json(const json& j) {
  SdpOutcome o;
  o.status = sdp_status_from_string(j.at("status").get<std::string>());
  o.value = j.at("value").get<double>();
  o.lambda = j.at("lambda").get<std::vector<double>>();
  o.Q = float_matrix_from_json(j.at("Q"));
  o.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  o.dual = float_matrix_from_json(j.at("dual"));
  o.gap = j.at("gap").get<double>();
  o.iterations = j.at("iterations").get<int>();
  return o;
}

inline BoundaryVerdict boundary_verdict_from_string(const std::string& s) {
  for (auto v : {BoundaryVerdict::boundary, BoundaryVerdict::interior, BoundaryVerdict::ambiguous})
    if (to_string(v) == s) return v;
  throw ParseError("unknown boundary verdict: " + s, 0);
}

inline void to_json(json& j, const SpectraReport& r) {
  json widths = json::array();
  for (auto& [lo, hi] : r.widths) widths.push_back({lo, hi});
  j = {{"n", r.f.nvars()},
       {"degree", r.f.degree()},
       {"f", format_poly(r.f)},
       {"t_star", r.t_star},
       {"t_lower", r.t_lower},
       {"boundary", to_string(r.boundary)},
       {"on_boundary", r.on_boundary},
       {"sphere_min", r.sphere_min},
       {"strictly_positive", r.strictly_positive},
       {"max_rank", r.max_rank},
       {"unique_point", r.unique_point},
       {"widths", widths},
       {"face_dim", r.face_dim},
       {"face_rounds", r.face_rounds},
       {"face_resolved", r.face_resolved},
       {"observed_ranks", r.observed_ranks},
       {"seed", r.seed}};
}

inline void from_json(const json& j, SpectraReport& r) {
  const int n = j.at("n").get<int>();
  const auto f = j.at("f").get<std::string>();
  r.f = f == "0" ? Polynomial(n, j.at("degree").get<int>()) : parse_poly(f, n);
  r.t_star = j.at("t_star").get<double>();
  r.t_lower = j.at("t_lower").get<double>();
  r.boundary = boundary_verdict_from_string(j.at("boundary").get<std::string>());
  r.on_boundary = j.at("on_boundary").get<bool>();
  r.sphere_min = j.at("sphere_min").get<double>();
  r.strictly_positive = j.at("strictly_positive").get<bool>();
  r.max_rank = j.at("max_rank").get<int>();
  r.unique_point = j.at("unique_point").get<bool>();
  r.widths.clear();
  for (auto& w : j.at("widths")) r.widths.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
  r.face_dim = j.at("face_dim").get<int>();
  r.face_rounds = j.at("face_rounds").get<int>();
  r.face_resolved = j.at("face_resolved").get<bool>();
  r.observed_ranks = j.at("observed_ranks").get<std::vector<int>>();
  r.seed = j.at("seed").get<std::uint64_t>();
}

inline void to_json(json& j, const DualCertificate& c) {
  const MonomialBasis target(c.n, 2 * c.d);
  const GramFrame frame(c.n, c.d);
  json kernel = json::array();
  for (auto& v : c.kernel) kernel.push_back(rational_vector_json(v));
  json probes = json::array();
  for (auto& p : c.probes) probes.push_back(p.to_string());
  j = {{"n", c.n},
       {"d", c.d},
       {"l", {{"basis", basis_json(target)}, {"values", rational_vector_json(c.l)}}},
       {"Q_l", matrix_json(frame.basis, c.Q_l)},
       {"kernel", {{"basis", basis_json(frame.basis)}, {"rows", kernel}}},
       {"psd_proved", c.psd_proved},
       {"probes", probes},
       {"charpoly", rational_vector_json(c.charpoly)}};
}

inline void from_json(const json& j, DualCertificate& c) {
  c.n = j.at("n").get<int>();
  c.d = j.at("d").get<int>();
  c.l = rational_vector_from_json(j.at("l").at("values"));
  c.Q_l = rational_matrix_from_json(j.at("Q_l"));
  c.kernel.clear();
  for (auto& row : j.at("kernel").at("rows")) c.kernel.push_back(rational_vector_from_json(row));
  c.psd_proved = j.at("psd_proved").get<bool>();
  c.probes.clear();
  for (auto& p : j.at("probes")) c.probes.push_back(parse_monomial(p.get<std::string>(), c.n));
  c.charpoly = rational_vector_from_json(j.at("charpoly"));
}

}  // namespace sosgram
