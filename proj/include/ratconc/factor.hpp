#pragma once

// Factorization of Laurent polynomials over Q.
//
// Pipeline: strip the unit q*t^k, square-free decomposition (Yun), rational
// roots, then the remaining square-free cofactor is settled by degree:
// quadratics by their discriminant, cubics by the absence of rational roots,
// binomials a*t^n + b by the Vahlen-Capelli criterion, and everything else of
// degree <= 8 by Kronecker's interpolation search.

#include "ratconc/laurent.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ratconc {

class FactorizationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFactorDegreeCap = 8;

struct Factor {
  LaurentPoly prime;  // monic, lowest exponent 0
  int multiplicity = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

namespace detail {

inline std::vector<BigInt> positive_divisors(const BigInt& n_in) {
  BigInt n = n_in < 0 ? BigInt(-n_in) : n_in;
  if (n == 0) throw std::domain_error("divisors of zero");
  if (n > BigInt("100000000000000"))
    throw FactorizationCapExceeded("coefficient too large for divisor enumeration: " + n.str());
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Rational roots of a nonzero polynomial (low exponent 0, nonzero constant term).
inline std::vector<Rational> rational_roots(const LaurentPoly& p) {
  std::vector<Rational> roots;
  if (p.span() < 1) return roots;
  auto coeffs = p.primitive().integer_coeffs();
  auto ps = positive_divisors(coeffs.front());
  auto qs = positive_divisors(coeffs.back());
  for (const auto& q : qs)
    for (const auto& n : ps)
      for (int sg : {1, -1}) {
        Rational r(BigInt(n * sg), q);
        if (denominator(r) != q) continue;  // already tried in lower terms
        if (p.evaluate(r) == 0) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Vahlen-Capelli: x^n - r is irreducible over Q iff r is not a p-th power for
/// any prime p | n, and r is not in -4Q^4 when 4 | n.
inline bool binomial_irreducible(int n, const Rational& r) {
  if (r == 0) return n == 1;
  int m = n;
  for (int p = 2; p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    if (is_rational_power(r, static_cast<unsigned>(p))) return false;
  }
  if (n % 4 == 0) {
    Rational s = -r / 4;
    if (s > 0 && is_rational_power(s, 4)) return false;
  }
  return true;
}

inline LaurentPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys, Var v) {
  LaurentPoly acc(v);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    LaurentPoly basis = LaurentPoly::one(v);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * (LaurentPoly::variable(v) - LaurentPoly::constant(xs[j], v));
      denom *= xs[i] - xs[j];
    }
    acc += basis * Rational(ys[i] / denom);
  }
  return acc;
}

/// Kronecker's method: a primitive integral factor of degree d, if any.
inline std::optional<LaurentPoly> kronecker_factor(const LaurentPoly& h, int d) {
  const Var v = h.var();
  LaurentPoly hp = h.primitive();
  // Pick d+1 integer nodes with the fewest divisors of h(x). h has no rational
  // roots, so h(x) != 0 at every node.
  std::vector<std::pair<std::size_t, long>> ranked;
  std::map<long, std::vector<BigInt>> divs_of;
  for (long x = -8; x <= 8; ++x) {
    BigInt y = numerator(hp.evaluate(Rational(x)));
    if (boost::multiprecision::abs(y) > BigInt("1000000000000")) continue;
    divs_of[x] = positive_divisors(y);
    ranked.emplace_back(divs_of[x].size(), x);
  }
  if (ranked.size() < static_cast<std::size_t>(d + 1))
    throw FactorizationCapExceeded("no usable interpolation nodes for " + h.to_string());
  std::sort(ranked.begin(), ranked.end());
  std::vector<Rational> xs;
  std::vector<const std::vector<BigInt>*> ds;
  for (int i = 0; i <= d; ++i) {
    long x = ranked[static_cast<std::size_t>(i)].second;
    xs.emplace_back(x);
    ds.push_back(&divs_of[x]);
  }
  const BigInt lead = hp.integer_coeffs().back();
  std::vector<Rational> ys(xs.size());
  std::optional<LaurentPoly> found;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (found) return;
    if (i == xs.size()) {
      LaurentPoly g = interpolate(xs, ys, v);
      if (g.is_zero() || g.span() != d || g.low() != 0) return;
      for (const auto& [e, c] : g.terms())
        if (!is_integer(c)) return;
      if (lead % numerator(g.leading()) != 0) return;
      if (poly_divmod(hp, g).second.is_zero()) found = g.primitive();
      return;
    }
    for (const auto& dv : *ds[i])
      for (int sg : {1, -1}) {
        if (i == 0 && sg < 0) continue;  // factor fixed up to sign
        ys[i] = Rational(BigInt(dv * sg));
        rec(i + 1);
        if (found) return;
      }
  };
  rec(0);
  return found;
}

inline void factor_squarefree(const LaurentPoly& g, std::vector<LaurentPoly>& out) {
  if (g.span() <= 0) return;
  LaurentPoly h = g.monic();
  if (h.span() == 1) { out.push_back(h); return; }
  for (const auto& r : rational_roots(h)) {
    LaurentPoly lin = LaurentPoly::variable(h.var()) - LaurentPoly::constant(r, h.var());
    out.push_back(lin);
    h = exact_divide(h, lin).monic();
  }
  const int n = h.span();
  if (n <= 0) return;
  if (n == 2) {
    // No rational roots left, so the discriminant is not a rational square.
    Rational b = h.coeff(1), c = h.coeff(0);
    if (is_rational_power(b * b - 4 * c, 2)) throw std::logic_error("quadratic with a rational root survived");
    out.push_back(h);
    return;
  }
  if (n == 3) { out.push_back(h); return; }
  if (h.terms().size() == 2) {
    Rational r = -h.coeff(0) / h.leading();
    if (binomial_irreducible(n, r)) { out.push_back(h); return; }
  }
  if (n > kFactorDegreeCap)
    throw FactorizationCapExceeded("cannot factor degree " + std::to_string(n) + " polynomial " +
                                   h.to_string() + " (cap " + std::to_string(kFactorDegreeCap) + ")");
  for (int d = 2; d <= n / 2; ++d) {
    if (auto f = kronecker_factor(h, d)) {
      factor_squarefree(*f, out);
      factor_squarefree(exact_divide(h, *f), out);
      return;
    }
  }
  out.push_back(h);
}

}  // namespace detail

/// Yun's square-free decomposition of a nonzero polynomial: pairs
/// (square-free monic part, multiplicity) whose product is p up to a unit.
inline std::vector<std::pair<LaurentPoly, int>> squarefree_decomposition(const LaurentPoly& p) {
  if (p.is_zero()) throw std::domain_error("square-free decomposition of zero");
  std::vector<std::pair<LaurentPoly, int>> out;
  LaurentPoly f = p.monic();
  if (f.span() == 0) return out;
  LaurentPoly df = f.derivative();
  LaurentPoly b = gcd_laurent(f, df);
  LaurentPoly c = exact_divide(f, b);
  LaurentPoly d = exact_divide(df, b) - c.derivative();
  for (int i = 1; c.span() > 0; ++i) {
    LaurentPoly a = gcd_laurent(c, d);
    if (a.span() > 0) out.emplace_back(a, i);
    c = exact_divide(c, a);
    d = exact_divide(d, a) - c.derivative();
  }
  return out;
}

/// Irreducible factorization over Q, up to a unit q*t^k. Factors are monic with
/// lowest exponent 0, sorted by degree then coefficients.
inline std::vector<Factor> factor_laurent(const LaurentPoly& p) {
  if (p.is_zero()) throw std::domain_error("factor_laurent: zero polynomial");
  std::vector<Factor> out;
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    std::vector<LaurentPoly> primes;
    detail::factor_squarefree(part, primes);
    for (auto& q : primes) out.push_back({q, mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.prime == b.prime) return a.multiplicity < b.multiplicity;
    return poly_less(a.prime, b.prime);
  });
  return out;
}

inline bool is_irreducible(const LaurentPoly& p) {
  if (p.is_zero() || p.is_unit()) return false;
  auto fs = factor_laurent(p);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

/// Product of the factors with multiplicity (monic).
inline LaurentPoly expand_factors(const std::vector<Factor>& fs, Var v) {
  LaurentPoly acc = LaurentPoly::one(v);
  for (const auto& f : fs) acc = acc * pow(f.prime, f.multiplicity);
  return acc;
}

/// Cyclotomic polynomials Phi_1..Phi_n (index 0 unused).
inline std::vector<LaurentPoly> cyclotomic_table(int n, Var v = Var::t) {
  std::vector<LaurentPoly> phi(static_cast<std::size_t>(n + 1), LaurentPoly(v));
  for (int k = 1; k <= n; ++k) {
    LaurentPoly num = LaurentPoly::monomial(Rational(1), k, v) - LaurentPoly::one(v);
    for (int d = 1; d < k; ++d)
      if (k % d == 0) num = exact_divide(num, phi[static_cast<std::size_t>(d)]);
    phi[static_cast<std::size_t>(k)] = num;
  }
  return phi;
}

inline int moebius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

/// Phi_n as the product of (t^d - 1)^mu(n/d) over d | n.
inline LaurentPoly cyclotomic(int n, Var v = Var::t) {
  if (n < 1) throw std::invalid_argument("cyclotomic: index must be positive");
  LaurentPoly num = LaurentPoly::one(v), den = LaurentPoly::one(v);
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = moebius(n / d);
    if (mu == 0) continue;
    LaurentPoly f = LaurentPoly::monomial(Rational(1), d, v) - LaurentPoly::one(v);
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
  }
  return exact_divide(num, den);
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace ratconc
