// Exact rational scalars used by every exact routine in sosgram.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sosgram {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (GMP canonical form). Zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p" or "p/q" (optional sign on p). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Exact square root when q is the square of a rational.
inline bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  Integer rn, rd;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  mpz_sqrt(rn.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Binomial coefficient for small arguments, as a plain integer.
inline long binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r = binomial(n, k);
  if (!r.fits_slong_p()) throw std::overflow_error("binomial overflow");
  return r.get_si();
}

}  // namespace sosgram
