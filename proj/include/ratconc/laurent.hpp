#pragma once

// Laurent polynomials over Q in a single variable (s or t), plus the
// Euclidean machinery of Q[t] lifted to the Laurent ring Q[t^{+-1}].

#include "ratconc/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ratconc {

enum class Var { s, t };

inline char var_name(Var v) { return v == Var::s ? 's' : 't'; }

class VariableMismatch : public std::invalid_argument {
 public:
  VariableMismatch() : std::invalid_argument("polynomials live in different variables") {}
};

class LaurentPoly {
 public:
  using Terms = std::map<int, Rational>;

  explicit LaurentPoly(Var v = Var::t) : var_(v) {}
  LaurentPoly(Terms terms, Var v) : terms_(std::move(terms)), var_(v) { prune(); }

  static LaurentPoly constant(const Rational& c, Var v = Var::t) { return monomial(c, 0, v); }
  static LaurentPoly one(Var v = Var::t) { return constant(Rational(1), v); }
  static LaurentPoly variable(Var v = Var::t) { return monomial(Rational(1), 1, v); }
  static LaurentPoly monomial(const Rational& c, int exponent, Var v = Var::t) {
    LaurentPoly p(v);
    if (c != 0) p.terms_.emplace(exponent, c);
    return p;
  }
  /// Coefficients listed from exponent `low` upward.
  static LaurentPoly from_coeffs(const std::vector<Rational>& ascending, Var v = Var::t, int low = 0) {
    LaurentPoly p(v);
    for (std::size_t i = 0; i < ascending.size(); ++i)
      if (ascending[i] != 0) p.terms_.emplace(low + static_cast<int>(i), ascending[i]);
    return p;
  }
  static LaurentPoly from_ints(std::initializer_list<long> ascending, Var v = Var::t, int low = 0) {
    std::vector<Rational> cs;
    for (long x : ascending) cs.emplace_back(x);
    return from_coeffs(cs, v, low);
  }

  Var var() const { return var_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// A unit of the Laurent ring: a single nonzero term q*t^k.
  bool is_unit() const { return terms_.size() == 1; }
  bool is_constant() const { return is_zero() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  int degree() const { require_nonzero(); return terms_.rbegin()->first; }
  int low() const { require_nonzero(); return terms_.begin()->first; }
  /// Degree after shifting the lowest exponent to 0; -1 for zero.
  int span() const { return is_zero() ? -1 : degree() - low(); }
  const Rational& leading() const { require_nonzero(); return terms_.rbegin()->second; }
  const Rational& trailing() const { require_nonzero(); return terms_.begin()->second; }
  Rational coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentPoly with_var(Var v) const { LaurentPoly p = *this; p.var_ = v; return p; }

  LaurentPoly shifted(int k) const {
    Terms out;
    for (const auto& [e, c] : terms_) out.emplace(e + k, c);
    return LaurentPoly(std::move(out), var_);
  }

  /// t -> t^c; c = -1 is the involution t -> t^{-1}.
  LaurentPoly substitute_power(int c) const {
    if (c == 0) throw std::invalid_argument("substitute_power: exponent must be nonzero");
    Terms out;
    for (const auto& [e, co] : terms_) out.emplace(e * c, co);
    return LaurentPoly(std::move(out), var_);
  }
  LaurentPoly conj() const { return substitute_power(-1); }

  /// Lowest exponent 0 and leading coefficient 1.
  LaurentPoly monic() const {
    if (is_zero()) return *this;
    LaurentPoly p = shifted(-low());
    return p * Rational(Rational(1) / p.leading());
  }

  /// Lowest exponent 0, coprime integer coefficients, positive leading coefficient.
  LaurentPoly primitive() const {
    if (is_zero()) return *this;
    BigInt den = 1, num = 0;
    for (const auto& [e, c] : terms_) den = lcm(den, denominator(c));
    for (const auto& [e, c] : terms_) num = gcd(num, numerator(c) * (den / denominator(c)));
    Rational scale(den, num);
    if (leading().sign() < 0) scale = -scale;
    return shifted(-low()) * scale;
  }

  /// The integer coefficient list (ascending) of primitive(); only valid on primitive polys.
  std::vector<BigInt> integer_coeffs() const {
    std::vector<BigInt> out;
    if (is_zero()) return out;
    out.assign(static_cast<std::size_t>(span() + 1), BigInt(0));
    for (const auto& [e, c] : terms_) {
      if (!is_integer(c)) throw std::logic_error("integer_coeffs on non-integral polynomial");
      out[static_cast<std::size_t>(e - low())] = numerator(c);
    }
    return out;
  }

  LaurentPoly derivative() const {
    Terms out;
    for (const auto& [e, c] : terms_)
      if (e != 0) out.emplace(e - 1, c * e);
    return LaurentPoly(std::move(out), var_);
  }

  Rational evaluate(const Rational& x) const {
    if (!is_zero() && low() < 0 && x == 0) throw std::domain_error("evaluating a Laurent polynomial at 0");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) acc += c * pow_int(x, e);
    return acc;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_var(o);
    for (const auto& [e, c] : o.terms_) {
      auto [it, inserted] = terms_.emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly& operator*=(const Rational& q) {
    if (q == 0) { terms_.clear(); return *this; }
    for (auto& [e, c] : terms_) c *= q;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return a * Rational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& q) { return a *= q; }
  friend LaurentPoly operator*(const Rational& q, LaurentPoly a) { return a *= q; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_var(b);
    Terms out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out[ea + eb] += ca * cb;
    return LaurentPoly(std::move(out), a.var_);
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.var_ == b.var_ && a.terms_ == b.terms_;
  }

  void check_var(const LaurentPoly& o) const {
    if (var_ != o.var_) throw VariableMismatch();
  }

  /// Descending human-readable form, e.g. "2t^2 - 5t + 2".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      if (first) { if (c.sign() < 0) os << "-"; }
      else os << (c.sign() < 0 ? " - " : " + ");
      first = false;
      bool unit_coeff = (mag == 1);
      if (e == 0) { os << ratconc::to_string(mag); continue; }
      if (!unit_coeff) {
        if (is_integer(mag)) os << ratconc::to_string(mag);
        else os << "(" << ratconc::to_string(mag) << ")";
      }
      os << var_name(var_);
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

 private:
  static Rational pow_int(const Rational& x, int e) {
    Rational base = e < 0 ? Rational(Rational(1) / x) : x;
    unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
    Rational acc = 1;
    while (n) {
      if (n & 1u) acc *= base;
      base *= base;
      n >>= 1u;
    }
    return acc;
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = (it->second == 0) ? terms_.erase(it) : std::next(it);
  }
  void require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("operation undefined on the zero polynomial");
  }

  Terms terms_;
  Var var_;
};

/// Deterministic total order: by span, then coefficients from the lowest exponent up.
inline bool poly_less(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.span() != b.span()) return a.span() < b.span();
  if (a.is_zero()) return false;
  for (int k = 0; k <= a.span(); ++k) {
    Rational ca = a.coeff(a.low() + k), cb = b.coeff(b.low() + k);
    if (ca != cb) return ca < cb;
  }
  return a.low() < b.low();
}

/// Ordinary polynomial division; both operands must have no negative exponents.
inline std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_var(b);
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if ((!a.is_zero() && a.low() < 0) || b.low() < 0)
    throw std::domain_error("poly_divmod requires ordinary polynomials");
  LaurentPoly q(a.var()), r = a;
  const int db = b.degree();
  const Rational lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    LaurentPoly term = LaurentPoly::monomial(r.leading() / lb, r.degree() - db, a.var());
    q += term;
    r -= term * b;
  }
  return {q, r};
}

/// Canonical representative of a modulo the ideal (d) of the Laurent ring:
/// exponents in [0, span(d)). Zero when d is a unit.
inline LaurentPoly mod_laurent(const LaurentPoly& a, const LaurentPoly& d) {
  a.check_var(d);
  if (d.is_zero()) throw std::domain_error("reduction modulo zero");
  LaurentPoly d0 = d.shifted(-d.low());
  if (d0.span() == 0 || a.is_zero()) return LaurentPoly(a.var());
  const int lo = a.low();
  LaurentPoly r = poly_divmod(lo < 0 ? a.shifted(-lo) : a, d0).second;
  if (lo >= 0) return r;
  // t^{-1} = -q / d0(0) modulo d0, where d0 = d0(0) + t*q.
  Rational c0 = d0.coeff(0);
  LaurentPoly q = (d0 - LaurentPoly::constant(c0, a.var())).shifted(-1);
  LaurentPoly t_inv = q * Rational(Rational(-1) / c0);
  for (int k = 0; k < -lo; ++k) r = poly_divmod(r * t_inv, d0).second;
  return r;
}

/// a / b when b divides a in the Laurent ring; throws otherwise.
inline LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_var(b);
  if (b.is_zero()) throw std::domain_error("exact_divide by zero");
  if (a.is_zero()) return a;
  auto [q, r] = poly_divmod(a.shifted(-a.low()), b.shifted(-b.low()));
  if (!r.is_zero()) throw std::domain_error("exact_divide: divisor does not divide dividend");
  return q.shifted(a.low() - b.low());
}

inline bool divides(const LaurentPoly& d, const LaurentPoly& a) {
  return mod_laurent(a, d).is_zero();
}

/// Monic generator of the ideal (a, b); 1 when coprime, 0 when both vanish.
inline LaurentPoly gcd_laurent(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_var(b);
  LaurentPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    LaurentPoly r = poly_divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? r : r.monic();
  }
  return x.is_zero() ? x : x.monic();
}

struct XgcdResult {
  LaurentPoly gcd, u, v;  // u*a + v*b == gcd
};

/// Extended Euclid in the Laurent ring: returns (g, u, v) with u*a + v*b = g = gcd_laurent(a, b).
inline XgcdResult xgcd_laurent(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_var(b);
  const Var v = a.var();
  if (a.is_zero() && b.is_zero()) return {LaurentPoly(v), LaurentPoly(v), LaurentPoly(v)};
  // Work on low-exponent-0 shifts; undo the unit shift on the cofactors.
  const int sa = a.is_zero() ? 0 : a.low();
  const int sb = b.is_zero() ? 0 : b.low();
  LaurentPoly r0 = a.shifted(-sa), r1 = b.shifted(-sb);
  LaurentPoly s0 = LaurentPoly::one(v), s1(v), t0(v), t1 = LaurentPoly::one(v);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  Rational inv = Rational(1) / r0.leading();
  LaurentPoly g = r0 * inv;
  int shift = g.low();
  return {g.shifted(-shift), (s0 * inv).shifted(-sa - shift), (t0 * inv).shifted(-sb - shift)};
}

/// Inverse of a in Q[t^{+-1}]/(d); throws when a and d are not coprime.
inline LaurentPoly inverse_mod(const LaurentPoly& a, const LaurentPoly& d) {
  auto [g, u, v] = xgcd_laurent(mod_laurent(a, d), d);
  if (g.span() != 0) throw std::domain_error("inverse_mod: element is not invertible");
  return mod_laurent(u * Rational(Rational(1) / g.leading()), d);
}

inline LaurentPoly pow(const LaurentPoly& p, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  LaurentPoly acc = LaurentPoly::one(p.var());
  for (int i = 0; i < n; ++i) acc = acc * p;
  return acc;
}

/// Equality up to a unit q*t^k of the Laurent ring.
inline bool associates(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.monic() == b.monic();
}

}  // namespace ratconc
