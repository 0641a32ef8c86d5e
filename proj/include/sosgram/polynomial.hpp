// Sparse homogeneous polynomials with exact rational coefficients.
#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/monomial.hpp"
#include "sosgram/rational.hpp"

namespace sosgram {

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, LexDescending>;

  Polynomial() = default;
  /// Zero polynomial of the given homogeneous degree.
  Polynomial(int n, int degree) : n_(n), degree_(degree) {
    if (n < 1) throw DomainError("polynomial needs n >= 1");
    if (degree < 0) throw DomainError("negative degree");
  }

  static Polynomial monomial(const Monomial& m, const Rational& c = 1) {
    Polynomial p(m.nvars(), m.degree());
    p.add_term(m, c);
    return p;
  }
  /// c * x_i^e with zero-based i.
  static Polynomial power(int n, int i, int e, const Rational& c = 1) {
    return monomial(Monomial::power(n, i, e), c);
  }

  int nvars() const { return n_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Leading monomial in lex; requires a nonzero polynomial.
  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading monomial");
    return terms_.begin()->first;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.nvars() != n_) throw DimensionError("term has " + std::to_string(m.nvars()) +
                                              " variables, polynomial has " + std::to_string(n_));
    if (m.degree() != degree_)
      throw DegreeError("term of degree " + std::to_string(m.degree()) +
                            " in polynomial of degree " + std::to_string(degree_),
                        degree_, m.degree());
    if (sosgram::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sosgram::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& g) {
    check_additive(g);
    for (auto& [m, c] : g.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& g) {
    check_additive(g);
    for (auto& [m, c] : g.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (sosgram::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(Polynomial f, const Rational& s) { return f *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial f) { return f *= s; }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    if (f.n_ != g.n_) throw DimensionError("multiplying polynomials in different rings");
    Polynomial r(f.n_, f.degree_ + g.degree_);
    for (auto& [a, ca] : f.terms_)
      for (auto& [b, cb] : g.terms_) r.add_term(a * b, ca * cb);
    return r;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return f.n_ == g.n_ && f.degree_ == g.degree_ && f.terms_ == g.terms_;
  }

  /// Coefficient vector over an explicit monomial basis of this degree.
  std::vector<Rational> coefficients(const MonomialBasis& basis) const {
    if (basis.degree() != degree_ || basis.nvars() != n_)
      throw DimensionError("basis does not match polynomial degree");
    std::vector<Rational> v(basis.size());
    for (auto& [m, c] : terms_) v[basis.index(m)] = c;
    return v;
  }

  static Polynomial from_coefficients(const MonomialBasis& basis, const std::vector<Rational>& v) {
    if (v.size() != basis.size()) throw DimensionError("coefficient vector length mismatch");
    Polynomial p(basis.nvars(), basis.degree());
    for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis[i], v[i]);
    return p;
  }

  double evaluate(const std::vector<double>& x) const;

 private:
  // A zero operand adopts the other operand's degree.
  void check_additive(const Polynomial& g) {
    if (g.n_ != n_) throw DimensionError("adding polynomials in different rings");
    if (g.degree_ != degree_ && !g.is_zero() && !is_zero())
      throw DegreeError("adding polynomials of degree " + std::to_string(degree_) + " and " +
                            std::to_string(g.degree_),
                        degree_, g.degree_);
    if (g.degree_ != degree_ && is_zero()) degree_ = g.degree_;
  }

  int n_ = 1;
  int degree_ = 0;
  Terms terms_;
};

inline double Polynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("evaluation point dimension");
  double acc = 0.0;
  for (auto& [m, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < n_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x[static_cast<std::size_t>(i)];
    acc += t;
  }
  return acc;
}

enum class PolyOp { add, sub, mul };

inline Polynomial poly_arith(PolyOp op, const Polynomial& f, const Polynomial& g) {
  switch (op) {
    case PolyOp::add: return f + g;
    case PolyOp::sub: return f - g;
    case PolyOp::mul: return f * g;
  }
  return f;
}

inline Polynomial poly_scale(const Polynomial& f, const Rational& s) { return f * s; }

/// Canonical text form, e.g. "-x1^2 - x1*x2 + 3/2*x4^2"; the zero polynomial prints "0".
inline std::string format_poly(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : f.terms()) {
    Rational a = abs(c);
    const bool neg = sgn(c) < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const bool constant = m.degree() == 0;
    if (constant) {
      out += to_string(a);
    } else if (a == 1) {
      out += m.to_string();
    } else {
      out += to_string(a) + "*" + m.to_string();
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, int n) : s_(text), n_(n) {}

  Polynomial parse() {
    struct Term {
      Monomial m;
      Rational c;
      std::size_t pos;
    };
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      const std::size_t start = pos_;
      auto [m, c] = parse_term();
      terms.push_back({m, c * sign, start});
      skip_ws();
    }
    const int deg = terms.front().m.degree();
    Polynomial p(n_, deg);
    for (auto& t : terms) {
      if (t.m.degree() != deg)
        throw DegreeError("non-homogeneous polynomial: degrees " + std::to_string(deg) + " and " +
                              std::to_string(t.m.degree()) + " (term at position " +
                              std::to_string(t.pos) + ")",
                          deg, t.m.degree());
      p.add_term(t.m, t.c);
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += s_[pos_++];
    return out;
  }

  bool at_variable() const {
    char c = peek();
    return c == 'x' || (n_ <= 4 && (c == 'y' || c == 'z' || c == 'w'));
  }

  std::pair<Monomial, Rational> parse_term() {
    Rational coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        std::string den = digits();
        if (den.empty()) throw ParseError("expected denominator", at);
        if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", at);
        num += "/" + den;
      }
      coeff = parse_rational(num);
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (!at_variable()) throw ParseError("expected variable after '*'", pos_);
      }
    }
    std::vector<int> exps(static_cast<std::size_t>(n_), 0);
    bool have_var = false;
    while (at_variable()) {
      int var = parse_variable();
      skip_ws();
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        std::string ds = digits();
        if (ds.empty()) throw ParseError("expected exponent", at);
        e = std::stoi(ds);
        skip_ws();
      }
      exps[static_cast<std::size_t>(var)] += e;
      have_var = true;
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (!at_variable()) throw ParseError("expected variable after '*'", pos_);
      }
    }
    if (!have_var && !have_coeff) throw ParseError("expected coefficient or variable", pos_);
    return {Monomial(std::move(exps)), coeff};
  }

  int parse_variable() {
    const std::size_t at = pos_;
    char c = s_[pos_++];
    if (c == 'x' && std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string ds = digits();
      int idx = std::stoi(ds);
      if (idx < 1 || idx > n_)
        throw ParseError("variable x" + ds + " out of range for n=" + std::to_string(n_), at);
      return idx - 1;
    }
    if (n_ > 4) throw ParseError("aliases x,y,z,w need n <= 4", at);
    int idx = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3;
    if (idx >= n_) throw ParseError(std::string("alias ") + c + " out of range", at);
    return idx;
  }

  std::string_view s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the polynomial grammar: terms joined by +/-, term = [coef][*]monomial,
/// coef = integer or p/q, monomial = product of xi or xi^e with optional '*'.
/// Throws ParseError with a position, or DegreeError for non-homogeneous input.
inline Polynomial parse_poly(std::string_view text, int n) {
  if (n < 1) throw DomainError("parse_poly needs n >= 1");
  return detail::PolyParser(text, n).parse();
}

}  // namespace sosgram
