#pragma once

// Seifert matrices and the knot calculus they support.

#include "ratconc/laurent.hpp"
#include "ratconc/polymatrix.hpp"
#include "ratconc/qlinear.hpp"

#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratconc {

using IntMatrix = std::vector<std::vector<long>>;

class SeifertInvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A 2g x 2g integer matrix V with det(V - V^T) = +-1.
class SeifertMatrix {
 public:
  SeifertMatrix() = default;  // the unknot
  explicit SeifertMatrix(IntMatrix entries, std::string label = {})
      : entries_(std::move(entries)), label_(std::move(label)) {
    validate();
  }

  const IntMatrix& entries() const { return entries_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return entries_.size(); }
  std::size_t genus() const { return entries_.size() / 2; }
  long operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }

  SeifertMatrix with_label(std::string label) const {
    SeifertMatrix out = *this;
    out.label_ = std::move(label);
    return out;
  }

  friend bool operator==(const SeifertMatrix& a, const SeifertMatrix& b) { return a.entries_ == b.entries_; }

 private:
  void validate() const {
    const std::size_t n = entries_.size();
    for (const auto& row : entries_)
      if (row.size() != n) throw SeifertInvariantError("Seifert matrix must be square");
    if (n % 2 != 0) throw SeifertInvariantError("Seifert matrix must have even dimension");
    QMatrix skew(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) skew[i][j] = Rational(entries_[i][j] - entries_[j][i]);
    Rational d = determinant(skew);
    if (d != 1 && d != -1)
      throw SeifertInvariantError("det(V - V^T) = " + to_string(d) + ", expected +-1");
  }

  IntMatrix entries_;
  std::string label_;
};

enum class KnotOp { mirror, reverse, inverse };

/// mirror: V -> -V, reverse: V -> V^T, inverse (= mirror o reverse): V -> -V^T.
inline SeifertMatrix knot_transform(const SeifertMatrix& v, KnotOp op) {
  const std::size_t n = v.dim();
  IntMatrix out(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      switch (op) {
        case KnotOp::mirror: out[i][j] = -v(i, j); break;
        case KnotOp::reverse: out[i][j] = v(j, i); break;
        case KnotOp::inverse: out[i][j] = -v(j, i); break;
      }
    }
  return SeifertMatrix(std::move(out));
}

/// Block-diagonal sum.
inline SeifertMatrix connected_sum(const std::vector<SeifertMatrix>& vs) {
  if (vs.empty()) throw std::invalid_argument("connected_sum of an empty list");
  std::size_t n = 0;
  for (const auto& v : vs) n += v.dim();
  IntMatrix out(n, std::vector<long>(n, 0));
  std::size_t off = 0;
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < v.dim(); ++i)
      for (std::size_t j = 0; j < v.dim(); ++j) out[off + i][off + j] = v(i, j);
    off += v.dim();
  }
  return SeifertMatrix(std::move(out));
}

/// tV - V^T over Q[x^{+-1}]; its rows are the relations of the Alexander module.
inline PolyMatrix presentation_matrix(const SeifertMatrix& v, Var var = Var::t) {
  const std::size_t n = v.dim();
  PolyMatrix a = poly_zero_matrix(n, n, var);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = LaurentPoly::monomial(Rational(v(i, j)), 1, var) - LaurentPoly::constant(Rational(v(j, i)), var);
  return a;
}

/// det(tV - V^T), shifted to lowest exponent 0 with positive leading coefficient.
inline LaurentPoly alexander_polynomial(const SeifertMatrix& v, Var var = Var::t) {
  LaurentPoly d = determinant(presentation_matrix(v, var), var);
  if (d.is_zero()) throw SeifertInvariantError("degenerate presentation: det(tV - V^T) = 0");
  d = d.shifted(-d.low());
  return d.leading() < 0 ? -d : d;
}

using IntVector2 = std::array<long, 2>;

/// Primitive isotropic vectors of v^T V v on a genus-one surface, up to sign.
/// The form ax^2 + bxy + cy^2 is isotropic over Z iff b^2 - 4ac is a square.
inline std::vector<IntVector2> isotropic_vectors(const SeifertMatrix& v) {
  if (v.dim() != 2) throw std::invalid_argument("metabolizer search needs a genus-one Seifert matrix (2x2), got " +
                                                std::to_string(v.dim()) + "x" + std::to_string(v.dim()));
  const long a = v(0, 0), b = v(0, 1) + v(1, 0), c = v(1, 1);
  std::vector<IntVector2> out;
  auto push = [&](long x, long y) {
    long g = std::gcd(x, y);
    if (g == 0) return;
    x /= g; y /= g;
    if (x < 0 || (x == 0 && y < 0)) { x = -x; y = -y; }
    IntVector2 cand{x, y};
    for (const auto& e : out)
      if (e == cand) return;
    out.push_back(cand);
  };
  if (a == 0) push(1, 0);
  if (c == 0) push(0, 1);
  const long disc = b * b - 4 * a * c;
  if (disc < 0) return out;
  long root = integer_root(BigInt(disc), 2).convert_to<long>();
  if (root * root != disc) return out;
  if (a != 0) {
    push(-b + root, 2 * a);
    push(-b - root, 2 * a);
  } else if (b != 0 || c != 0) {
    push(-c, b);  // y(bx + cy) = 0
  }
  return out;
}

/// A primitive v with v^T V v = 0, when one exists.
inline std::optional<IntVector2> metabolizer_search(const SeifertMatrix& v) {
  auto all = isotropic_vectors(v);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline long quadratic_value(const SeifertMatrix& v, const IntVector2& x) {
  return x[0] * (v(0, 0) * x[0] + v(0, 1) * x[1]) + x[1] * (v(1, 0) * x[0] + v(1, 1) * x[1]);
}

/// An infection curve: its class in the basis of H_1 of the Seifert surface
/// (the basis in which V is written), with coefficients in Q[s^{+-1}].
struct Curve {
  std::string name;
  std::vector<LaurentPoly> coords;
  friend bool operator==(const Curve&, const Curve&) = default;
};

struct PatternKnot {
  SeifertMatrix seifert;
  std::vector<Curve> curves;

  PatternKnot() = default;
  PatternKnot(SeifertMatrix v, std::vector<Curve> cs) : seifert(std::move(v)), curves(std::move(cs)) { validate(); }

  friend bool operator==(const PatternKnot&, const PatternKnot&) = default;

  const Curve& curve(const std::string& name) const {
    for (const auto& c : curves)
      if (c.name == name) return c;
    throw std::out_of_range("pattern has no curve named '" + name + "'");
  }

  void validate() const {
    std::set<std::string> names;
    for (const auto& c : curves) {
      if (c.name.empty()) throw std::invalid_argument("curve names must be nonempty");
      if (!names.insert(c.name).second) throw std::invalid_argument("duplicate curve name '" + c.name + "'");
      if (c.coords.size() != seifert.dim())
        throw std::invalid_argument("curve '" + c.name + "' has " + std::to_string(c.coords.size()) +
                                    " coordinates, expected " + std::to_string(seifert.dim()));
      for (const auto& p : c.coords)
        if (p.var() != Var::s) throw std::invalid_argument("curve coordinates live in Q[s^{+-1}]");
    }
  }
};

namespace knots {

inline SeifertMatrix unknot() { return SeifertMatrix({}, "unknot"); }
inline SeifertMatrix right_trefoil() { return SeifertMatrix({{-1, 1}, {0, -1}}, "right trefoil"); }
inline SeifertMatrix left_trefoil() { return SeifertMatrix({{1, -1}, {0, 1}}, "left trefoil"); }
inline SeifertMatrix nine_forty_six() { return SeifertMatrix({{0, 1}, {2, 0}}, "9_46"); }

/// 9_46 with alpha dual to the (2s-1)-band and beta dual to the (s-2)-band.
inline PatternKnot pattern_R() {
  auto one = LaurentPoly::one(Var::s), zero = LaurentPoly(Var::s);
  return PatternKnot(nine_forty_six(), {{"alpha", {one, zero}}, {"beta", {zero, one}}});
}

}  // namespace knots

}  // namespace ratconc
