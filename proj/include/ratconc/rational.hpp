#pragma once

// Exact rational and big-integer scalars used throughout ratconc.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratconc {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
  BigInt v(std::string(text.substr(i)));
  return text[0] == '-' ? BigInt(-v) : v;
}

/// Parses "n" or "n/d" (d != 0). The result is always reduced.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

/// Floor of the exact k-th root of n >= 0.
inline BigInt integer_root(const BigInt& n, unsigned k) {
  if (n < 0) throw std::domain_error("integer_root of a negative number");
  if (n < 2 || k == 1) return n;
  BigInt lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, k) <= n) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, k) <= n) lo = mid; else hi = mid;
  }
  return lo;
}

/// True iff q = r^k for some rational r.
inline bool is_rational_power(const Rational& q, unsigned k) {
  if (q == 0) return true;
  if (q.sign() < 0) {
    if (k % 2 == 0) return false;
    return is_rational_power(Rational(-q), k);
  }
  BigInt n = numerator(q), d = denominator(q);
  BigInt rn = integer_root(n, k), rd = integer_root(d, k);
  return boost::multiprecision::pow(rn, k) == n && boost::multiprecision::pow(rd, k) == d;
}

}  // namespace ratconc
