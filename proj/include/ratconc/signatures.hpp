#pragma once

// Levine-Tristram signatures on the rational parametrization of the circle,
// exact jump isolation, and rho_0 as the integral of the signature function.

#include "ratconc/factor.hpp"
#include "ratconc/gaussian.hpp"
#include "ratconc/seifert.hpp"
#include "ratconc/sturm.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <optional>

namespace ratconc {

class SignatureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PrecisionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// omega(u) = (1 - iu)/(1 + iu); u = nullopt is the point at infinity, omega = -1.
/// For u > 0 the angle theta = 1 - atan(u)/pi lies in (1/2, 1); for u < 0 in (0, 1/2).
struct CirclePoint {
  std::optional<Rational> u;

  static CirclePoint minus_one() { return {std::nullopt}; }
  static CirclePoint at(Rational u) { return {std::move(u)}; }

  /// omega + omega^{-1} = 2(1 - u^2)/(1 + u^2).
  Rational real_trace() const {
    if (!u) return Rational(-2);
    Rational u2 = *u * *u;
    return Rational(2) * (1 - u2) / (1 + u2);
  }
};

/// sigma_omega(V) = signature of (1 - omega)V + (1 - conj omega)V^T. Since
/// (1 + u^2)(1 - omega) = 2u(u + i), that matrix is a positive multiple of
/// (V + V^T) + i w (V - V^T) with w = 1/u.
inline Inertia lt_inertia(const SeifertMatrix& v, const CirclePoint& p) {
  if (p.u && *p.u == 0) throw SignatureError("the signature is not defined at omega = 1");
  const Rational w = p.u ? Rational(1) / *p.u : Rational(0);
  const std::size_t n = v.dim();
  GaussMatrix h(n, std::vector<GaussQ>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h[i][j] = GaussQ(Rational(v(i, j) + v(j, i)), w * Rational(v(i, j) - v(j, i)));
  return hermitian_inertia(std::move(h));
}

inline int lt_signature_at(const SeifertMatrix& v, const CirclePoint& p) {
  Inertia in = lt_inertia(v, p);
  if (in.zero != 0) throw SignatureError("evaluation at a root of the Alexander polynomial (jump point)");
  return in.signature();
}

/// Palindromic f(t) of even degree 2m as P(x) with t^{-m} f(t) = P(t + 1/t), via
/// t^k + t^{-k} = D_k(x), D_0 = 2, D_1 = x, D_{k+1} = x D_k - D_{k-1}.
inline LaurentPoly palindromic_to_trace(const LaurentPoly& f) {
  LaurentPoly g = f.shifted(-f.low());
  const int deg = g.degree();
  if (deg % 2 != 0 || !(g.conj().shifted(deg) == g))
    throw std::invalid_argument("palindromic_to_trace: polynomial is not palindromic of even degree");
  const int m = deg / 2;
  const Var v = Var::t;
  const LaurentPoly x = LaurentPoly::variable(v);
  std::vector<LaurentPoly> d{LaurentPoly::constant(Rational(2), v), x};
  while (static_cast<int>(d.size()) <= m) d.push_back(x * d.back() - d[d.size() - 2]);
  LaurentPoly out = LaurentPoly::constant(g.coeff(m), v);
  for (int k = 1; k <= m; ++k) out += d[static_cast<std::size_t>(k)] * g.coeff(m + k);
  return out;
}

inline Rational interval_width_bound() {
  const char* env = std::getenv("RATCONC_INTERVAL_WIDTH");
  if (env == nullptr || *env == '\0') return Rational(1, 1000000);
  Rational w = parse_rational(env);
  if (w <= 0) throw std::invalid_argument("RATCONC_INTERVAL_WIDTH must be positive");
  return w;
}

/// An angle theta in (0, 1), as an exact rational k/n (cyclotomic roots) or
/// an enclosing interval.
struct AngleDescriptor {
  bool exact = false;
  Rational lower, upper;  // equal when exact
  int order = 0;          // n for a primitive n-th root of unity, else 0

  std::string to_string() const {
    if (exact) return ratconc::to_string(lower);
    return "[" + ratconc::to_string(lower) + ", " + ratconc::to_string(upper) + "]";
  }
};

struct SignatureJump {
  AngleDescriptor theta;
  int jump = 0;
};

/// sigma on (0, 1): values[0] on (0, theta_1), values[i] on (theta_i, theta_{i+1}).
struct SignatureFunction {
  std::vector<SignatureJump> jumps;
  std::vector<int> values{0};

  /// Value at an exact theta that is not inside any jump enclosure.
  int value_at(const Rational& theta) const {
    int v = values.front();
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      const auto& t = jumps[i].theta;
      if (theta >= t.lower && theta <= t.upper)
        throw SignatureError("value_at: theta " + to_string(theta) + " is at a jump");
      if (theta > t.upper) v = values[i + 1];
    }
    return v;
  }
};

class Rho0Value {
 public:
  enum class Kind { exact, interval, symbol };

  static Rho0Value exact(Rational q) { return Rho0Value(Kind::exact, q, q, {}); }
  static Rho0Value interval(Rational lo, Rational hi) {
    if (lo > hi) throw std::invalid_argument("interval lower bound exceeds upper bound");
    return Rho0Value(Kind::interval, std::move(lo), std::move(hi), {});
  }
  static Rho0Value symbol(std::string name) {
    if (name.empty()) throw std::invalid_argument("symbol names must be nonempty");
    return Rho0Value(Kind::symbol, 0, 0, std::move(name));
  }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact; }
  bool is_interval() const { return kind_ == Kind::interval; }
  bool is_symbol() const { return kind_ == Kind::symbol; }
  const Rational& value() const {
    if (!is_exact()) throw std::logic_error("rho_0 value is not exact");
    return lower_;
  }
  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }
  const std::string& name() const { return name_; }
  Rational width() const { return upper_ - lower_; }
  bool contains(const Rational& q) const { return !is_symbol() && lower_ <= q && q <= upper_; }

  Rho0Value operator-() const {
    if (is_symbol()) throw std::logic_error("negate a symbol through RhoExpr");
    return Rho0Value(kind_, -upper_, -lower_, {});
  }
  friend Rho0Value operator+(const Rho0Value& a, const Rho0Value& b) {
    if (a.is_symbol() || b.is_symbol()) throw std::logic_error("add symbols through RhoExpr");
    Kind k = a.is_exact() && b.is_exact() ? Kind::exact : Kind::interval;
    return Rho0Value(k, a.lower_ + b.lower_, a.upper_ + b.upper_, {});
  }
  friend bool operator==(const Rho0Value&, const Rho0Value&) = default;

  std::string to_string() const {
    switch (kind_) {
      case Kind::exact: return ratconc::to_string(lower_);
      case Kind::interval: return "[" + ratconc::to_string(lower_) + ", " + ratconc::to_string(upper_) + "]";
      case Kind::symbol: return name_;
    }
    return {};
  }

 private:
  Rho0Value(Kind k, Rational lo, Rational hi, std::string name)
      : kind_(k), lower_(std::move(lo)), upper_(std::move(hi)), name_(std::move(name)) {}

  Kind kind_ = Kind::exact;
  Rational lower_, upper_;
  std::string name_;
};

namespace detail {

using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>, boost::multiprecision::et_off>;

/// q rounded to a multiple of 2^-200, downward or upward.
inline Rational float_to_rational(const Float& f, bool round_up) {
  namespace mp = boost::multiprecision;
  Float scaled = mp::ldexp(f, 200);
  Float r = round_up ? mp::ceil(scaled) : mp::floor(scaled);
  BigInt n(r.convert_to<mp::cpp_int>().str());
  BigInt d = 1;
  d <<= 200;
  return Rational(n, d);
}

inline Float rational_to_float(const Rational& q) {
  return Float(numerator(q).str()) / Float(denominator(q).str());
}

/// theta(x) = acos(x/2)/(2 pi), decreasing in x; bounds widened by 2^-150.
inline std::pair<Rational, Rational> theta_bounds(const Rational& x_lo, const Rational& x_hi) {
  namespace mp = boost::multiprecision;
  const Float two_pi = 2 * boost::math::constants::pi<Float>();
  const Float margin = mp::ldexp(Float(1), -150);
  Float hi_arg = rational_to_float(x_lo) / 2, lo_arg = rational_to_float(x_hi) / 2;
  auto clamp = [](Float a) { return a > 1 ? Float(1) : (a < -1 ? Float(-1) : a); };
  Float t_lo = mp::acos(clamp(lo_arg)) / two_pi - margin;
  Float t_hi = mp::acos(clamp(hi_arg)) / two_pi + margin;
  Rational lo = float_to_rational(t_lo, false), hi = float_to_rational(t_hi, true);
  if (lo < 0) lo = 0;
  if (hi > Rational(1, 2)) hi = Rational(1, 2);
  return {lo, hi};
}

/// A point u > 0 whose trace x(u) lies strictly inside (a, b), -2 <= a < b <= 2.
inline CirclePoint sample_between(const Rational& a, const Rational& b) {
  auto x = [](const Rational& u) { return CirclePoint::at(u).real_trace(); };
  Rational lo = 0, hi = 1;  // x(lo) >= b, and x decreases in u
  while (x(hi) >= b) {
    lo = hi;
    hi *= 2;
  }
  if (x(hi) > a) return CirclePoint::at(hi);
  for (int it = 0; it < 4096; ++it) {
    Rational mid = (lo + hi) / 2;
    Rational xm = x(mid);
    if (xm > a && xm < b) return CirclePoint::at(mid);
    if (xm >= b) lo = mid;
    else hi = mid;
  }
  throw SignatureError("could not place a sample point between isolated roots");
}

struct TraceRoot {
  LaurentPoly factor;  // square-free factor of P(x) that vanishes here
  RootInterval where;
  int order = 0;       // cyclotomic order n, 0 otherwise
  int k = 0;           // theta = k/n when order > 0
};

}  // namespace detail

/// Jumps on the half circle theta in (0, 1/2), with arc values, kept in a form
/// that can be refined; the full function follows from sigma(theta) = sigma(1 - theta).
class SignatureAnalysis {
 public:
  explicit SignatureAnalysis(const SeifertMatrix& v, int cyclotomic_bound = 120) : v_(v) {
    if (v.dim() == 0) return;
    LaurentPoly delta = alexander_polynomial(v, Var::t);
    LaurentPoly rest = delta;
    std::vector<std::pair<LaurentPoly, int>> pieces;  // trace polynomial, cyclotomic order
    for (int n = 2; n <= cyclotomic_bound; ++n) {
      if (euler_phi(n) > rest.degree()) continue;
      LaurentPoly phi = cyclotomic(n, Var::t);
      if (!divides(phi, rest)) continue;
      while (divides(phi, rest)) rest = exact_divide(rest, phi);
      pieces.push_back({palindromic_to_trace(phi), n});
    }
    if (rest.span() > 0) {
      LaurentPoly sf = LaurentPoly::one(Var::t);
      for (const auto& [f, mult] : squarefree_decomposition(palindromic_to_trace(rest.monic()))) sf = sf * f;
      pieces.push_back({sf.monic(), 0});
    }
    for (const auto& [f, n] : pieces) {
      if (f.evaluate(Rational(2)) == 0 || f.evaluate(Rational(-2)) == 0)
        throw SignatureError("Alexander polynomial vanishes at t = 1 or t = -1");
      auto roots = isolate_real_roots(f, Rational(-2), Rational(2));
      if (n > 0 && static_cast<int>(roots.size()) * 2 != euler_phi(n))
        throw SignatureError("cyclotomic root count mismatch for order " + std::to_string(n));
      std::vector<int> ks;
      for (int k = 1; 2 * k < n; ++k)
        if (std::gcd(k, n) == 1) ks.push_back(k);
      // x = 2cos(2 pi k/n) decreases in k; the isolated roots increase in x.
      for (std::size_t i = 0; i < roots.size(); ++i)
        roots_.push_back({f, roots[i], n, n > 0 ? ks[roots.size() - 1 - i] : 0});
    }
    separate();
    compute_values();
  }

  /// Roots in decreasing x, i.e. increasing theta on (0, 1/2).
  const std::vector<detail::TraceRoot>& roots() const { return roots_; }
  /// values()[0] near theta = 0, values()[i] just after the i-th root.
  const std::vector<int>& half_values() const { return values_; }

  bool all_exact() const {
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if (jump(i) != 0 && roots_[i].order == 0) return false;
    return true;
  }

  int jump(std::size_t i) const { return values_[i + 1] - values_[i]; }

  AngleDescriptor angle(std::size_t i) const {
    const auto& r = roots_[i];
    AngleDescriptor a;
    if (r.order > 0) {
      a.exact = true;
      a.order = r.order;
      a.lower = a.upper = Rational(r.k, r.order);
      return a;
    }
    auto [lo, hi] = r.where.exact ? detail::theta_bounds(r.where.lo, r.where.lo)
                                  : detail::theta_bounds(r.where.lo, r.where.hi);
    a.lower = lo;
    a.upper = hi;
    return a;
  }

  void refine() {
    for (auto& r : roots_)
      if (r.order == 0) bisect_root(r.factor, r.where);
  }

  SignatureFunction function() const {
    SignatureFunction out;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if (jump(i) != 0) live.push_back(i);
    out.values = {0};
    for (auto i : live) {
      out.jumps.push_back({angle(i), jump(i)});
      out.values.push_back(values_[i + 1]);
    }
    for (auto it = live.rbegin(); it != live.rend(); ++it) {
      AngleDescriptor a = angle(*it);
      AngleDescriptor m = a;
      m.lower = 1 - a.upper;
      m.upper = 1 - a.lower;
      if (a.exact) m.order = a.order;
      out.jumps.push_back({m, -jump(*it)});
      out.values.push_back(values_[*it]);
    }
    return out;
  }

  /// rho_0 = 2 (sigma_last / 2 - sum_j J_j theta_j) over jumps theta_j in (0, 1/2).
  Rho0Value rho0_current() const {
    if (roots_.empty()) return Rho0Value::exact(0);
    Rational lo = values_.back(), hi = values_.back();
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      int j = jump(i);
      if (j == 0) continue;
      AngleDescriptor a = angle(i);
      Rational c = Rational(-2 * j);
      if (c > 0) {
        lo += c * a.lower;
        hi += c * a.upper;
      } else {
        lo += c * a.upper;
        hi += c * a.lower;
      }
    }
    return lo == hi && all_exact() ? Rho0Value::exact(lo) : Rho0Value::interval(lo, hi);
  }

  /// Refines until the enclosure, rounded outward to a decimal grid of mesh at
  /// most width/10, is no wider than `width`. Enclosures for smaller widths nest.
  Rho0Value rho0(const Rational& width, int budget = 400) {
    if (width <= 0) throw std::invalid_argument("interval width bound must be positive");
    BigInt grid = 1;
    while (Rational(1, 1) / Rational(grid) > width / 10) grid *= 10;
    auto rounded = [&](const Rho0Value& r) {
      if (!r.is_interval()) return r;
      Rational lo = r.lower() * Rational(grid), hi = r.upper() * Rational(grid);
      BigInt flo = numerator(lo) / denominator(lo), chi = numerator(hi) / denominator(hi);
      if (Rational(flo) > lo) flo -= 1;
      if (Rational(chi) < hi) chi += 1;
      return Rho0Value::interval(Rational(flo, grid), Rational(chi, grid));
    };
    Rho0Value r = rounded(rho0_current());
    for (int it = 0; r.is_interval() && r.width() > width; ++it) {
      if (it >= budget)
        throw PrecisionBudgetExceeded("rho_0 interval width " + to_string(r.width()) + " above bound " +
                                      to_string(width) + " after " + std::to_string(budget) + " refinements");
      refine();
      r = rounded(rho0_current());
    }
    return r;
  }

  const std::vector<CirclePoint>& samples() const { return samples_; }

 private:
  static const Rational& upper(const detail::TraceRoot& r) { return r.where.hi; }
  static const Rational& lower(const detail::TraceRoot& r) { return r.where.lo; }

  /// Makes the enclosures pairwise disjoint and strictly inside (-2, 2) with strict gaps,
  /// then orders them by decreasing x.
  void separate() {
    auto by_x = [](const detail::TraceRoot& a, const detail::TraceRoot& b) { return a.where.lo < b.where.lo; };
    for (int guard = 0;; ++guard) {
      if (guard > 100000) throw SignatureError("root separation did not terminate");
      std::sort(roots_.begin(), roots_.end(), by_x);
      bool changed = false;
      for (auto& r : roots_)
        if (r.where.lo <= -2 || r.where.hi >= 2) {
          bisect_root(r.factor, r.where);
          changed = true;
        }
      for (std::size_t i = 0; i + 1 < roots_.size(); ++i) {
        auto& a = roots_[i];
        auto& b = roots_[i + 1];
        if (upper(a) < lower(b)) continue;
        // overlapping or touching: shrink whichever is not exact (both if needed)
        if (!a.where.exact) bisect_root(a.factor, a.where);
        if (!b.where.exact) bisect_root(b.factor, b.where);
        if (a.where.exact && b.where.exact && a.where.lo == b.where.lo)
          throw SignatureError("two factors share a root");
        changed = true;
      }
      if (!changed) break;
    }
    std::reverse(roots_.begin(), roots_.end());
  }

  void compute_values() {
    values_.assign(1, 0);
    Rational upper_x = 2;
    for (std::size_t i = 0; i <= roots_.size(); ++i) {
      Rational lower_x = i < roots_.size() ? roots_[i].where.hi : Rational(-2);
      CirclePoint p = detail::sample_between(lower_x, upper_x);
      samples_.push_back(p);
      int s = lt_signature_at(v_, p);
      if (i == 0) {
        if (s != 0) throw SignatureError("signature near omega = 1 is nonzero");
      } else {
        values_.push_back(s);
      }
      if (i < roots_.size()) upper_x = roots_[i].where.lo;
    }
  }

  SeifertMatrix v_;
  std::vector<detail::TraceRoot> roots_;
  std::vector<int> values_{0};
  std::vector<CirclePoint> samples_;
};

inline SignatureFunction signature_function(const SeifertMatrix& v) { return SignatureAnalysis(v).function(); }

inline Rho0Value rho0(const SeifertMatrix& v, const Rational& width) { return SignatureAnalysis(v).rho0(width); }
inline Rho0Value rho0(const SeifertMatrix& v) { return rho0(v, interval_width_bound()); }

}  // namespace ratconc
