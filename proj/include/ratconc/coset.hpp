#pragma once

// Elements of Q(t)/Q[t^{+-1}], the value group of linking forms.

#include "ratconc/laurent.hpp"

#include <string>

namespace ratconc {

/// numerator/denominator modulo Q[t^{+-1}], kept in canonical form: the
/// denominator is primitive integral with lowest exponent 0 and positive
/// leading coefficient, the numerator is reduced modulo it (exponents in
/// [0, span(denominator))), and the two are coprime. Zero is 0/1.
class FracCoset {
 public:
  explicit FracCoset(Var v = Var::t)
      : num_(v), den_(LaurentPoly::one(v)) {}

  static FracCoset reduce(const LaurentPoly& n, const LaurentPoly& d) {
    n.check_var(d);
    if (d.is_zero()) throw std::domain_error("coset_reduce: zero denominator");
    FracCoset out(d.var());
    if (n.is_zero()) return out;
    LaurentPoly dp = d.primitive();
    // d = unit * dp with unit = q * t^k.
    Rational q = d.leading() / dp.leading();
    LaurentPoly np = (n * Rational(Rational(1) / q)).shifted(-(d.low()));
    LaurentPoly r = mod_laurent(np, dp);
    if (r.is_zero()) return out;
    LaurentPoly g = gcd_laurent(r, dp);
    if (g.span() > 0) {
      r = exact_divide(r, g);
      dp = exact_divide(dp, g);
      LaurentPoly dpp = dp.primitive();
      r = r * Rational(dpp.leading() / dp.leading());
      dp = dpp;
      r = mod_laurent(r, dp);
    }
    out.num_ = std::move(r);
    out.den_ = std::move(dp);
    return out;
  }

  Var var() const { return den_.var(); }
  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  FracCoset conj() const { return reduce(num_.conj(), den_.conj()); }

  /// The map induced by s -> t^c (variable retagged to `target`).
  FracCoset substitute_power(int c, Var target) const {
    return reduce(num_.substitute_power(c).with_var(target), den_.substitute_power(c).with_var(target));
  }

  friend FracCoset operator+(const FracCoset& a, const FracCoset& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return reduce(a.num_ + b.num_, a.den_);
    return reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FracCoset operator-(const FracCoset& a) { return reduce(-a.num_, a.den_); }
  friend FracCoset operator-(const FracCoset& a, const FracCoset& b) { return a + (-b); }
  friend FracCoset operator*(const LaurentPoly& f, const FracCoset& a) {
    if (a.is_zero() || f.is_zero()) return FracCoset(a.var());
    return reduce(f * a.num_, a.den_);
  }
  friend FracCoset operator*(const FracCoset& a, const LaurentPoly& f) { return f * a; }
  FracCoset& operator+=(const FracCoset& o) { return *this = *this + o; }

  friend bool operator==(const FracCoset& a, const FracCoset& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  LaurentPoly num_, den_;
};

inline FracCoset coset_reduce(const LaurentPoly& n, const LaurentPoly& d) { return FracCoset::reduce(n, d); }

}  // namespace ratconc
