#pragma once

// Rational Alexander modules as direct sums of cyclic prime-power torsion
// modules Q[x^{+-1}]/(p^m), together with their elements and submodules.

#include "ratconc/factor.hpp"
#include "ratconc/polymatrix.hpp"
#include "ratconc/qlinear.hpp"
#include "ratconc/seifert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ratconc {

struct Summand {
  LaurentPoly annihilator;  // prime^exponent, monic, lowest exponent 0
  LaurentPoly prime;        // monic irreducible
  int exponent = 1;
  std::string label;
};

/// Coordinates with respect to the summand generators, each reduced modulo
/// that summand's annihilator.
struct ModuleElement {
  std::vector<LaurentPoly> coords;
  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;
};

class AlexanderModule {
 public:
  AlexanderModule(Var v = Var::s, int complexity = 1) : var_(v), complexity_(complexity) {
    if (complexity < 1) throw std::invalid_argument("complexity must be positive");
  }
  AlexanderModule(Var v, int complexity, std::vector<Summand> summands)
      : AlexanderModule(v, complexity) {
    for (auto& s : summands) add_summand(std::move(s));
  }

  Var var() const { return var_; }
  int complexity() const { return complexity_; }
  const std::vector<Summand>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }
  const Summand& summand(std::size_t k) const { return summands_.at(k); }
  bool is_trivial() const { return summands_.empty(); }

  void add_summand(Summand s) {
    if (s.annihilator.var() != var_ || s.prime.var() != var_) throw VariableMismatch();
    if (s.exponent < 1 || s.prime.span() < 1 || s.prime != s.prime.monic() || s.annihilator != pow(s.prime, s.exponent))
      throw std::invalid_argument("summand annihilator must be a positive power of a monic prime");
    for (const auto& o : summands_)
      if (o.label == s.label) throw std::invalid_argument("duplicate generator label '" + s.label + "'");
    summands_.push_back(std::move(s));
  }

  void set_label(std::size_t k, std::string label) {
    for (std::size_t j = 0; j < summands_.size(); ++j)
      if (j != k && summands_[j].label == label) throw std::invalid_argument("duplicate generator label '" + label + "'");
    summands_.at(k).label = std::move(label);
  }

  AlexanderModule with_prefix(const std::string& prefix) const {
    return relabeled([&](const std::string& l) { return prefix + l; });
  }

  template <class F>
  AlexanderModule relabeled(F&& f) const {
    AlexanderModule out(var_, complexity_);
    for (const auto& s : summands_) out.add_summand(Summand{s.annihilator, s.prime, s.exponent, f(s.label)});
    return out;
  }

  std::optional<std::size_t> find_label(const std::string& label) const {
    for (std::size_t k = 0; k < summands_.size(); ++k)
      if (summands_[k].label == label) return k;
    return std::nullopt;
  }

  /// Product of the annihilators (the module's order).
  LaurentPoly order() const {
    LaurentPoly acc = LaurentPoly::one(var_);
    for (const auto& s : summands_) acc = acc * s.annihilator;
    return acc;
  }

  std::size_t q_dim() const {
    std::size_t d = 0;
    for (const auto& s : summands_) d += static_cast<std::size_t>(s.annihilator.span());
    return d;
  }

  ModuleElement zero() const { return ModuleElement{std::vector<LaurentPoly>(size(), LaurentPoly(var_))}; }
  ModuleElement generator(std::size_t k) const {
    ModuleElement e = zero();
    e.coords.at(k) = LaurentPoly::one(var_);
    return e;
  }

  ModuleElement reduce(std::vector<LaurentPoly> coords) const {
    if (coords.size() != size()) throw std::invalid_argument("element has the wrong number of coordinates");
    for (std::size_t k = 0; k < size(); ++k) coords[k] = mod_laurent(coords[k], summands_[k].annihilator);
    return ModuleElement{std::move(coords)};
  }

  bool is_valid(const ModuleElement& x) const {
    if (x.coords.size() != size()) return false;
    for (std::size_t k = 0; k < size(); ++k) {
      const auto& c = x.coords[k];
      if (c.var() != var_) return false;
      if (!c.is_zero() && (c.low() < 0 || c.degree() >= summands_[k].annihilator.span())) return false;
    }
    return true;
  }

  ModuleElement add(const ModuleElement& x, const ModuleElement& y) const {
    std::vector<LaurentPoly> c(size(), LaurentPoly(var_));
    for (std::size_t k = 0; k < size(); ++k) c[k] = x.coords[k] + y.coords[k];
    return reduce(std::move(c));
  }
  ModuleElement scale(const LaurentPoly& f, const ModuleElement& x) const {
    std::vector<LaurentPoly> c(size(), LaurentPoly(var_));
    for (std::size_t k = 0; k < size(); ++k) c[k] = f * x.coords[k];
    return reduce(std::move(c));
  }
  bool is_zero(const ModuleElement& x) const {
    for (const auto& c : x.coords)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Coordinates in the Q-basis {x^i g_k : 0 <= i < span(ann_k)}.
  QVector to_qvector(const ModuleElement& x) const {
    QVector out;
    out.reserve(q_dim());
    for (std::size_t k = 0; k < size(); ++k)
      for (int i = 0; i < summands_[k].annihilator.span(); ++i) out.push_back(x.coords[k].coeff(i));
    return out;
  }
  ModuleElement from_qvector(const QVector& v) const {
    if (v.size() != q_dim()) throw std::invalid_argument("Q-vector has the wrong length");
    ModuleElement x = zero();
    std::size_t pos = 0;
    for (std::size_t k = 0; k < size(); ++k) {
      std::vector<Rational> cs;
      for (int i = 0; i < summands_[k].annihilator.span(); ++i) cs.push_back(v[pos++]);
      x.coords[k] = LaurentPoly::from_coeffs(cs, var_);
    }
    return x;
  }

  std::string describe() const {
    if (summands_.empty()) return "0";
    std::string out;
    for (const auto& s : summands_) {
      if (!out.empty()) out += " + ";
      out += std::string("Q[") + var_name(var_) + "]/(" + s.annihilator.primitive().to_string() + ")";
    }
    return out;
  }

  friend bool operator==(const AlexanderModule& a, const AlexanderModule& b) {
    if (a.var_ != b.var_ || a.complexity_ != b.complexity_ || a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a.summands_[k].annihilator != b.summands_[k].annihilator || a.summands_[k].label != b.summands_[k].label)
        return false;
    return true;
  }

 private:
  Var var_;
  int complexity_;
  std::vector<Summand> summands_;
};

/// Multiset of prime-power annihilators, sorted; compares modules up to isomorphism.
inline std::vector<LaurentPoly> annihilator_multiset(const AlexanderModule& m) {
  std::vector<LaurentPoly> out;
  for (const auto& s : m.summands()) out.push_back(s.annihilator);
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

inline AlexanderModule direct_sum(const std::vector<AlexanderModule>& parts, Var v, int complexity) {
  AlexanderModule out(v, complexity);
  for (const auto& m : parts)
    for (const auto& s : m.summands()) out.add_summand(s);
  return out;
}

inline ModuleElement concat_elements(const std::vector<ModuleElement>& parts) {
  ModuleElement out;
  for (const auto& p : parts) out.coords.insert(out.coords.end(), p.coords.begin(), p.coords.end());
  return out;
}

/// A module together with the presentation it came from: the module is the
/// cokernel of tV - V^T on row vectors (relations are the rows), so the
/// basis vector e_j of H_1 of the Seifert surface maps to the class
/// sum_k projection[k][j] * g_k.
struct PresentedModule {
  SeifertMatrix seifert;
  AlexanderModule module;
  PolyMatrix relations;                         // tV - V^T
  std::vector<std::vector<LaurentPoly>> lifts;  // lifts[k]: presentation row vector of g_k
  std::vector<std::vector<LaurentPoly>> projection;

  ModuleElement to_module(const std::vector<LaurentPoly>& presentation_coords) const {
    if (presentation_coords.size() != seifert.dim())
      throw std::invalid_argument("presentation vector has the wrong length");
    std::vector<LaurentPoly> c(module.size(), LaurentPoly(module.var()));
    for (std::size_t k = 0; k < module.size(); ++k)
      for (std::size_t j = 0; j < presentation_coords.size(); ++j)
        c[k] += presentation_coords[j].with_var(module.var()) * projection[k][j];
    return module.reduce(std::move(c));
  }
};

/// Cokernel of (xV - V^T), decomposed into prime-power cyclic summands. Each
/// summand generator is chosen, when possible, as the projection of the first
/// Seifert-surface basis vector that generates it; summands are ordered by
/// that basis vector.
inline PresentedModule present_module(const SeifertMatrix& v, Var var = Var::s) {
  PresentedModule out{v, AlexanderModule(var, 1), presentation_matrix(v, var), {}, {}};
  const std::size_t n = v.dim();
  if (n == 0) return out;
  SmithForm snf = smith_normal_form(out.relations);
  struct Pending {
    Summand summand;
    std::vector<LaurentPoly> lift, proj;
    std::size_t chosen;
    std::size_t order;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < n; ++i) {
    const LaurentPoly& d = snf.D[i][i];
    if (d.is_zero()) throw SeifertInvariantError("presentation matrix is singular");
    if (d.span() == 0) continue;
    for (const auto& f : factor_laurent(d)) {
      LaurentPoly q = pow(f.prime, f.multiplicity);
      LaurentPoly cofactor = exact_divide(d, q);
      LaurentPoly inv = inverse_mod(cofactor, q);
      Pending p;
      p.summand = Summand{q, f.prime, f.multiplicity, {}};
      for (std::size_t j = 0; j < n; ++j) {
        p.lift.push_back(cofactor * snf.W_inverse[i][j]);
        p.proj.push_back(mod_laurent(snf.W[j][i] * inv, q));
      }
      p.chosen = n;
      p.order = pending.size();
      pending.push_back(std::move(p));
    }
  }
  // Re-choose generators: the projection of the first e_j whose coordinate is a unit.
  for (auto& p : pending) {
    for (std::size_t j = 0; j < n; ++j) {
      const LaurentPoly u = p.proj[j];
      if (u.is_zero() || divides(p.summand.prime, u)) continue;
      LaurentPoly u_inv = inverse_mod(u, p.summand.annihilator);
      for (auto& c : p.proj) c = mod_laurent(c * u_inv, p.summand.annihilator);
      for (auto& c : p.lift) c = c * u;
      p.chosen = j;
      break;
    }
  }
  // e_j is itself the generator when it projects to zero on every other summand.
  for (auto& p : pending) {
    if (p.chosen == n) continue;
    bool pure = true;
    for (const auto& o : pending)
      if (&o != &p && !o.proj[p.chosen].is_zero()) pure = false;
    if (pure) {
      for (std::size_t j = 0; j < n; ++j) p.lift[j] = LaurentPoly(var);
      p.lift[p.chosen] = LaurentPoly::one(var);
    }
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) { return a.chosen < b.chosen; });
  for (std::size_t k = 0; k < pending.size(); ++k) {
    pending[k].summand.label = "g" + std::to_string(k + 1);
    out.module.add_summand(pending[k].summand);
    out.lifts.push_back(pending[k].lift);
    out.projection.push_back(pending[k].proj);
  }
  return out;
}

inline AlexanderModule alexander_module(const SeifertMatrix& v) { return present_module(v, Var::s).module; }

/// As present_module, with a summand labelled by a curve's name whenever that
/// curve's class is exactly the summand generator.
inline PresentedModule present_module(const PatternKnot& k, Var var = Var::s) {
  PresentedModule pm = present_module(k.seifert, var);
  for (const auto& c : k.curves) {
    ModuleElement x = pm.to_module(c.coords);
    for (std::size_t j = 0; j < pm.module.size(); ++j)
      if (x == pm.module.generator(j)) pm.module.set_label(j, c.name);
  }
  return pm;
}

inline AlexanderModule alexander_module(const PatternKnot& k) { return present_module(k, Var::s).module; }

/// Base change along s -> t^c: each Q[s]/(p^m) becomes the sum over the
/// irreducible factors q of p(t^c) of Q[t]/(q^m). New summand (k, i) is
/// generated by E_{k,i} * (g_k (x) 1), E the CRT idempotents, so that
/// g_k (x) 1 has coordinate 1 on every piece.
struct BaseChange {
  AlexanderModule source, target;
  int complexity = 1;
  std::vector<std::size_t> origin;      // target summand -> source summand
  std::vector<LaurentPoly> idempotent;  // target summand -> E_{k,i} mod p(t^c)^m

  ModuleElement map(const ModuleElement& x) const {
    std::vector<LaurentPoly> c(target.size(), LaurentPoly(Var::t));
    for (std::size_t n = 0; n < target.size(); ++n)
      c[n] = x.coords.at(origin[n]).substitute_power(complexity).with_var(Var::t);
    return target.reduce(std::move(c));
  }
};

inline BaseChange base_change(const AlexanderModule& m, int c) {
  if (m.var() != Var::s || m.complexity() != 1)
    throw std::invalid_argument("reparametrize expects an s-module of complexity 1");
  if (c < 1) throw std::invalid_argument("complexity must be positive");
  BaseChange bc{m, AlexanderModule(Var::t, c), c, {}, {}};
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Summand& s = m.summand(k);
    LaurentPoly big = pow(s.prime.substitute_power(c).with_var(Var::t), s.exponent);
    auto factors = factor_laurent(s.prime.substitute_power(c).with_var(Var::t));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      LaurentPoly q = pow(factors[i].prime, s.exponent);
      LaurentPoly cof = exact_divide(big, q);
      LaurentPoly e = factors.size() == 1 ? LaurentPoly::one(Var::t)
                                          : mod_laurent(cof * inverse_mod(cof, q), big);
      std::string label = s.label + "⊗1";
      if (factors.size() > 1) label += "[" + std::to_string(i + 1) + "]";
      bc.target.add_summand(Summand{q, factors[i].prime, s.exponent, label});
      bc.origin.push_back(k);
      bc.idempotent.push_back(e);
    }
  }
  return bc;
}

inline AlexanderModule reparametrize(const AlexanderModule& m, int c) { return base_change(m, c).target; }

/// Inverted deck transformation: every annihilator p(t) becomes monic p(t^{-1}).
inline AlexanderModule reverse_module(const AlexanderModule& m) {
  AlexanderModule out(m.var(), m.complexity());
  for (const auto& s : m.summands()) {
    LaurentPoly p = s.prime.conj().monic();
    out.add_summand(Summand{pow(p, s.exponent), p, s.exponent, s.label});
  }
  return out;
}

inline ModuleElement reverse_element(const AlexanderModule& reversed, const ModuleElement& x) {
  std::vector<LaurentPoly> c;
  for (const auto& p : x.coords) c.push_back(p.conj());
  return reversed.reduce(std::move(c));
}

struct IsotypicClass {
  LaurentPoly prime;
  std::vector<std::size_t> summands;
};

/// Summands grouped by base prime, in order of first appearance.
inline std::vector<IsotypicClass> isotypic_decompose(const AlexanderModule& m) {
  std::vector<IsotypicClass> out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto& p = m.summand(k).prime;
    auto it = std::find_if(out.begin(), out.end(), [&](const IsotypicClass& c) { return c.prime == p; });
    if (it == out.end()) out.push_back({p, {k}});
    else it->summands.push_back(k);
  }
  return out;
}

/// The product of all other primes, each to its largest exponent in m. It kills
/// every other isotypic component and acts invertibly on the p-component.
inline LaurentPoly isotypic_multiplier(const AlexanderModule& m, const LaurentPoly& prime) {
  LaurentPoly r = LaurentPoly::one(m.var());
  for (const auto& cls : isotypic_decompose(m)) {
    if (cls.prime == prime.monic()) continue;
    int e = 0;
    for (auto k : cls.summands) e = std::max(e, m.summand(k).exponent);
    r = r * pow(cls.prime, e);
  }
  return r;
}

inline ModuleElement reduce_to_isotypic(const AlexanderModule& m, const ModuleElement& x, const LaurentPoly& prime) {
  return m.scale(isotypic_multiplier(m, prime), x);
}

/// A Q[x^{+-1}]-submodule, stored by generators.
class Submodule {
 public:
  Submodule(AlexanderModule ambient, std::vector<ModuleElement> generators = {})
      : ambient_(std::move(ambient)), generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (!ambient_.is_valid(g)) throw std::invalid_argument("submodule generator is not a reduced element");
    basis_ = krylov_basis();
  }

  static Submodule whole(const AlexanderModule& m) {
    std::vector<ModuleElement> gens;
    for (std::size_t k = 0; k < m.size(); ++k) gens.push_back(m.generator(k));
    return Submodule(m, std::move(gens));
  }

  const AlexanderModule& ambient() const { return ambient_; }
  const std::vector<ModuleElement>& generators() const { return generators_; }
  /// Canonical (RREF) Q-basis of the underlying vector space.
  const QMatrix& q_basis() const { return basis_; }
  std::size_t q_dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }

  bool contains(const ModuleElement& x) const { return in_span(basis_, ambient_.to_qvector(x)); }
  bool contains(const Submodule& o) const {
    for (const auto& row : o.basis_)
      if (!in_span(basis_, row)) return false;
    return true;
  }
  friend bool operator==(const Submodule& a, const Submodule& b) { return a.basis_ == b.basis_; }

 private:
  QMatrix krylov_basis() const {
    QMatrix rows;
    const LaurentPoly x = LaurentPoly::variable(ambient_.var());
    for (const auto& g : generators_) {
      ModuleElement v = g;
      for (std::size_t i = 0; i <= ambient_.q_dim(); ++i) {
        QVector q = ambient_.to_qvector(v);
        if (in_span(rows, q)) break;
        rows.push_back(std::move(q));
        v = ambient_.scale(x, v);
      }
    }
    return row_space_basis(std::move(rows));
  }

  AlexanderModule ambient_;
  std::vector<ModuleElement> generators_;
  QMatrix basis_;
};

}  // namespace ratconc
