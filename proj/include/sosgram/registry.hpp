// Named sum-of-squares examples on the boundary of the SOS cone, with the
// verdicts each one is expected to produce.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sosgram/analyze.hpp"
#include "sosgram/gram.hpp"
#include "sosgram/polynomial.hpp"

namespace sosgram {

/// Claims the source makes about an example; unset fields are not claimed.
struct ExpectedVerdict {
  bool on_boundary = true;
  bool strictly_positive = true;
  std::optional<int> max_rank;
  std::optional<bool> unique_point;
};

struct ExampleEntry {
  std::string key;
  std::string title;
  SosDecomposition decomposition;
  ExpectedVerdict expected;
};

namespace detail {

inline SosDecomposition sos_of(int n, const std::vector<std::string>& polys) {
  std::vector<Polynomial> ps;
  for (auto& s : polys) ps.push_back(parse_poly(s, n));
  return SosDecomposition(std::move(ps));
}

inline std::vector<std::string> quartic_base() {
  return {"x1^2 - x4^2", "x2^2 - x4^2", "x3^2 - x4^2",
          "-x1^2 - x1*x2 - x1*x3 + x1*x4 - x2*x3 + x2*x4 + x3*x4"};
}

inline std::vector<std::string> sextic_base() {
  return {"3/2*x^3 - x*y^2 - x*z^2 - x*w^2", "3/2*y^3 - x^2*y - y*z^2 - y*w^2",
          "3/2*z^3 - x^2*z - y^2*z - z*w^2", "3/2*w^3 - x^2*w - y^2*w - z^2*w"};
}

inline std::vector<std::string> plus(std::vector<std::string> base, std::initializer_list<const char*> extra) {
  for (auto e : extra) base.emplace_back(e);
  return base;
}

}  // namespace detail

inline const std::vector<ExampleEntry>& example_registry() {
  using detail::plus;
  static const std::vector<ExampleEntry> entries = [] {
    const auto q = detail::quartic_base();
    const auto s = detail::sextic_base();
    std::vector<ExampleEntry> e{
        {"ex1:54", "quartic in 5 variables, 5 squares, unique decomposition",
         detail::sos_of(5, plus(q, {"x5^2"})), {true, true, 5, true}},
        {"ex2:54", "quartic in 5 variables, 6 squares, maximum rank 9",
         detail::sos_of(5, plus(q, {"x5^2", "x4*x5"})), {true, true, 9, false}},
        {"ex3:54", "quartic in 5 variables, 6 squares, unique decomposition",
         detail::sos_of(5, plus(q, {"x5^2", "x1*x5 + x4*x5"})), {true, true, 6, true}},
        {"reznick46", "sextic in 4 variables, 4 squares, unique decomposition",
         detail::sos_of(4, s), {true, true, 4, true}},
        {"ex1:46", "perturbed sextic in 4 variables, 4 squares, unique decomposition",
         detail::sos_of(4, {s[0], s[1], "3/2*z^3 - y^2*z - z*w^2", "w^3 - x^2*w - z^2*w"}), {true, true, 4, true}},
        {"ex2:46", "sextic in 4 variables, 5 squares, unique decomposition",
         detail::sos_of(4, plus(s, {"y*z*w"})), {true, true, 5, true}},
        {"ex3:46", "sextic in 4 variables, 5 squares, maximum rank 8",
         detail::sos_of(4, plus(s, {"y^2*z"})), {true, true, 8, false}},
        {"ex4:46", "sextic in 4 variables, 5 squares, maximum rank 13",
         detail::sos_of(4, plus(s, {"z^3"})), {true, true, 13, false}},
        // Only boundary membership and positivity are claimed: (x5^2 + x6^2)^2 =
        // (x5^2 - x6^2)^2 + (2*x5*x6)^2, so the decomposition is not unique.
        {"ex1:64", "quartic in 6 variables, 5 squares with a common complex zero",
         detail::sos_of(6, plus(q, {"x5^2 + x6^2"})), {true, true, std::nullopt, std::nullopt}},
        {"ex2:64a", "quartic in 6 variables, 5 squares, unique decomposition",
         detail::sos_of(6, plus(q, {"x5^2 + x6^2 - x4^2"})), {true, true, 5, true}},
        {"ex2:64b", "quartic in 6 variables, 6 squares, unique decomposition",
         detail::sos_of(6, plus(q, {"x5^2 - x4^2", "x6^2"})), {true, true, 6, true}},
        {"ex2:64c", "quartic in 6 variables, 7 squares, maximum rank 11",
         detail::sos_of(6, plus(q, {"x5^2", "x6^2", "x5*x6 + x1*x5"})), {true, true, 11, false}},
        {"ex2:64d", "quartic in 6 variables, 8 squares, maximum rank 15",
         detail::sos_of(6, plus(q, {"x5^2", "x6^2", "x5*x6 + x1*x5", "x2*x6"})), {true, true, 15, false}},
    };
    return e;
  }();
  return entries;
}

inline const ExampleEntry& find_example(const std::string& key) {
  const auto& reg = example_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const ExampleEntry& e) { return e.key == key; });
  if (it == reg.end()) throw std::invalid_argument("unknown example key: " + key);
  return *it;
}

/// Names of the claimed fields the report disagrees with; empty means a match.
inline std::vector<std::string> expectation_mismatches(const ExpectedVerdict& e, const SpectraReport& r) {
  std::vector<std::string> out;
  if (e.on_boundary != r.on_boundary) out.push_back("on_boundary");
  if (e.strictly_positive != r.strictly_positive) out.push_back("strictly_positive");
  if (e.max_rank && *e.max_rank != r.max_rank) out.push_back("max_rank");
  if (e.unique_point && *e.unique_point != r.unique_point) out.push_back("unique_point");
  return out;
}

inline std::string describe(const ExpectedVerdict& e) {
  std::string s = e.on_boundary ? "boundary" : "interior";
  s += e.strictly_positive ? ", positive" : ", has real zero";
  if (e.max_rank) s += ", rank " + std::to_string(*e.max_rank);
  if (e.unique_point) s += *e.unique_point ? ", unique" : ", not unique";
  return s;
}

}  // namespace sosgram
