#pragma once

// Real root isolation for square-free rational polynomials by Sturm sequences.

#include "ratconc/laurent.hpp"

#include <vector>

namespace ratconc {

/// A real root of a square-free polynomial: either exactly `lo` (== hi), or
/// the unique root in the open interval (lo, hi) with p(lo), p(hi) nonzero.
struct RootInterval {
  Rational lo, hi;
  bool exact = false;
};

class SturmSequence {
 public:
  explicit SturmSequence(const LaurentPoly& p) {
    if (p.is_zero() || p.low() < 0) throw std::invalid_argument("Sturm sequence needs a nonzero polynomial");
    seq_.push_back(p);
    if (p.degree() == 0) return;
    seq_.push_back(p.derivative());
    while (seq_.back().degree() > 0) {
      auto r = poly_divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      seq_.push_back(-r);
    }
  }

  int sign_changes(const Rational& x) const {
    int changes = 0, last = 0;
    for (const auto& q : seq_) {
      int s = sign(q.evaluate(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  /// Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return sign_changes(a) - sign_changes(b); }

  const LaurentPoly& poly() const { return seq_.front(); }

 private:
  std::vector<LaurentPoly> seq_;
};

namespace detail {

inline void isolate_into(const SturmSequence& s, const Rational& a, const Rational& b, std::vector<RootInterval>& out) {
  const int n = s.count(a, b);
  if (n == 0) return;
  const Rational m = (a + b) / 2;
  if (n == 1) {
    const auto& p = s.poly();
    if (p.evaluate(b) == 0) {
      out.push_back({b, b, true});
      return;
    }
    if (p.evaluate(a) != 0) {
      out.push_back({a, b, false});
      return;
    }
  }
  isolate_into(s, a, m, out);
  isolate_into(s, m, b, out);
}

}  // namespace detail

/// Isolating intervals, in increasing order, for the distinct roots of a
/// square-free p in (a, b].
inline std::vector<RootInterval> isolate_real_roots(const LaurentPoly& p, const Rational& a, const Rational& b) {
  std::vector<RootInterval> out;
  SturmSequence s(p);
  detail::isolate_into(s, a, b, out);
  return out;
}

/// Halves a non-exact interval, keeping the root; may land on it exactly.
inline void bisect_root(const LaurentPoly& p, RootInterval& r) {
  if (r.exact) return;
  Rational m = (r.lo + r.hi) / 2;
  int sm = sign(p.evaluate(m));
  if (sm == 0) {
    r = {m, m, true};
  } else if (sm == sign(p.evaluate(r.lo))) {
    r.lo = m;
  } else {
    r.hi = m;
  }
}

}  // namespace ratconc
