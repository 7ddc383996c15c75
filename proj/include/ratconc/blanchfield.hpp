#pragma once

// Blanchfield linking forms on Alexander modules, their base change along
// s -> t^c, orthogonal complements and the self-annihilating predicate.

#include "ratconc/almodule.hpp"
#include "ratconc/coset.hpp"

#include <sstream>

namespace ratconc {

class LinkingFormError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using CosetMatrix = std::vector<std::vector<FracCoset>>;

class LinkingForm {
 public:
  enum class Check { full, structural };

  LinkingForm() = default;
  /// Validates hermitian symmetry and annihilation; `full` also checks
  /// nonsingularity.
  LinkingForm(AlexanderModule module, CosetMatrix gram, Check check = Check::full)
      : module_(std::move(module)), gram_(std::move(gram)) {
    validate(check);
  }

  const AlexanderModule& module() const { return module_; }
  const CosetMatrix& gram() const { return gram_; }
  const FracCoset& gram(std::size_t k, std::size_t l) const { return gram_.at(k).at(l); }

  /// Bl(x, y) = sum_{k,l} x_k Bl(g_k, g_l) conj(y_l).
  FracCoset pair(const ModuleElement& x, const ModuleElement& y) const {
    FracCoset acc(module_.var());
    for (std::size_t k = 0; k < module_.size(); ++k) {
      if (x.coords.at(k).is_zero()) continue;
      for (std::size_t l = 0; l < module_.size(); ++l) {
        if (y.coords.at(l).is_zero() || gram_[k][l].is_zero()) continue;
        acc += x.coords[k] * y.coords[l].conj() * gram_[k][l];
      }
    }
    return acc;
  }

  LinkingForm with_prefix(const std::string& prefix) const {
    return LinkingForm(module_.with_prefix(prefix), gram_, Check::structural);
  }

  template <class F>
  LinkingForm relabeled(F&& f) const {
    return LinkingForm(module_.relabeled(std::forward<F>(f)), gram_, Check::structural);
  }

  /// The form on reverse_module(module()): Bl'(x, y) = conj Bl(x, y), so that
  /// the gram matrix is conjugated entrywise.
  LinkingForm reversed() const {
    CosetMatrix g = gram_;
    for (auto& row : g)
      for (auto& e : row) e = e.conj();
    return LinkingForm(reverse_module(module_), std::move(g), Check::structural);
  }

  LinkingForm negated() const {
    CosetMatrix g = gram_;
    for (auto& row : g)
      for (auto& e : row) e = -e;
    return LinkingForm(module_, std::move(g), Check::structural);
  }

  /// P^perp = {x : Bl(x, y) = 0 for all y in P}, by linear algebra over Q.
  Submodule annihilator_submodule(const Submodule& p) const {
    const std::size_t dim = module_.q_dim();
    const LaurentPoly big = common_denominator();
    const int width = big.span();
    QMatrix m(dim);
    const QMatrix& basis = identity_q_basis();
    for (std::size_t i = 0; i < dim; ++i) {
      ModuleElement b = module_.from_qvector(basis[i]);
      for (const auto& y : p.generators()) {
        FracCoset v = pair(b, y);
        LaurentPoly n = v.is_zero() ? LaurentPoly(module_.var())
                                    : mod_laurent(v.numerator() * exact_divide(big, v.denominator()), big);
        for (int e = 0; e < width; ++e) m[i].push_back(n.coeff(e));
      }
    }
    std::vector<ModuleElement> gens;
    for (const auto& row : left_kernel(m, dim)) gens.push_back(module_.from_qvector(row));
    return Submodule(module_, std::move(gens));
  }

  bool is_self_annihilating(const Submodule& p) const { return annihilator_submodule(p) == p; }

  bool is_nonsingular() const { return annihilator_submodule(Submodule::whole(module_)).is_zero(); }

  std::string describe() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < module_.size(); ++k)
      for (std::size_t l = 0; l < module_.size(); ++l)
        os << "Bl(" << module_.summand(k).label << ", " << module_.summand(l).label << ") = " << gram_[k][l].to_string()
           << "\n";
    return os.str();
  }

 private:
  LaurentPoly common_denominator() const {
    LaurentPoly d = LaurentPoly::one(module_.var());
    for (const auto& s : module_.summands()) d = exact_divide(d * s.annihilator, gcd_laurent(d, s.annihilator));
    return d.monic();
  }

  const QMatrix& identity_q_basis() const {
    if (q_identity_.size() != module_.q_dim()) {
      q_identity_.assign(module_.q_dim(), QVector(module_.q_dim(), Rational(0)));
      for (std::size_t i = 0; i < q_identity_.size(); ++i) q_identity_[i][i] = 1;
    }
    return q_identity_;
  }

  void validate(Check check) const {
    const std::size_t n = module_.size();
    if (gram_.size() != n) throw LinkingFormError("Gram matrix size does not match the module");
    for (const auto& row : gram_)
      if (row.size() != n) throw LinkingFormError("Gram matrix is not square");
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const auto& g = gram_[k][l];
        if (!g.is_zero() && g.var() != module_.var()) throw LinkingFormError("Gram entry in the wrong variable");
        if (!(gram_[l][k] == g.conj()))
          throw LinkingFormError("form is not hermitian at (" + module_.summand(k).label + ", " +
                                 module_.summand(l).label + "): " + g.to_string() + " vs " +
                                 gram_[l][k].to_string());
        if (!(module_.summand(k).annihilator * g).is_zero())
          throw LinkingFormError("annihilator of " + module_.summand(k).label + " does not kill Bl(" +
                                 module_.summand(k).label + ", " + module_.summand(l).label + ") = " +
                                 g.to_string());
      }
    if (check == Check::full && !is_nonsingular()) throw LinkingFormError("form is singular");
  }

  AlexanderModule module_;
  CosetMatrix gram_;
  mutable QMatrix q_identity_;
};

/// (1 - x) u (xV - V^T)^{-1} conj(w)^T for presentation row vectors u, w.
inline FracCoset presentation_pairing(const SeifertMatrix& v, const std::vector<LaurentPoly>& u,
                                      const std::vector<LaurentPoly>& w, Var var = Var::s) {
  PolyMatrix a = presentation_matrix(v, var);
  PolyMatrix adj = adjugate(a, var);
  LaurentPoly det = determinant(a, var);
  LaurentPoly acc(var);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) acc += u[i] * adj[i][j] * w[j].conj();
  return coset_reduce((LaurentPoly::one(var) - LaurentPoly::variable(var)) * acc, det);
}

/// Blanchfield form Bl(x, y) = (1 - s) x (sV - V^T)^{-1} conj(y)^T, expressed on
/// the summand generators of the presented module.
inline LinkingForm blanchfield_form(const PresentedModule& pm) {
  const Var var = pm.module.var();
  const std::size_t n = pm.module.size();
  if (n == 0) return LinkingForm(pm.module, {});
  PolyMatrix adj = adjugate(pm.relations, var);
  LaurentPoly det = determinant(pm.relations, var);
  if (det.is_zero()) throw LinkingFormError("singular presentation matrix");
  const LaurentPoly one_minus = LaurentPoly::one(var) - LaurentPoly::variable(var);
  const std::size_t dim = pm.seifert.dim();
  std::vector<std::vector<LaurentPoly>> row(n, std::vector<LaurentPoly>(dim, LaurentPoly(var)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i) row[k][j] += pm.lifts[k][i] * adj[i][j];
  CosetMatrix gram(n, std::vector<FracCoset>(n, FracCoset(var)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      LaurentPoly acc(var);
      for (std::size_t j = 0; j < dim; ++j) acc += row[k][j] * pm.lifts[l][j].conj();
      gram[k][l] = coset_reduce(one_minus * acc, det);
    }
  return LinkingForm(pm.module, std::move(gram));
}

inline LinkingForm blanchfield_form(const SeifertMatrix& v) { return blanchfield_form(present_module(v)); }
inline LinkingForm blanchfield_form(const PatternKnot& k) { return blanchfield_form(present_module(k)); }

/// Bl_c(E_n (g_k (x) 1), E_m (g_l (x) 1)) = E_n h(Bl(g_k, g_l)) conj(E_m), h induced by s -> t^c.
inline LinkingForm basechange_form(const LinkingForm& b, const BaseChange& bc,
                                   LinkingForm::Check check = LinkingForm::Check::full) {
  if (!(bc.source == b.module())) throw std::invalid_argument("base change does not match the form's module");
  const std::size_t n = bc.target.size();
  CosetMatrix gram(n, std::vector<FracCoset>(n, FracCoset(Var::t)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FracCoset h = b.gram(bc.origin[i], bc.origin[j]).substitute_power(bc.complexity, Var::t);
      gram[i][j] = bc.idempotent[i] * bc.idempotent[j].conj() * h;
    }
  return LinkingForm(bc.target, std::move(gram), check);
}

inline LinkingForm basechange_form(const LinkingForm& b, int c) { return basechange_form(b, base_change(b.module(), c)); }

/// Orthogonal (block) sum; summand nonsingularity implies that of the sum.
inline LinkingForm orthogonal_sum(const std::vector<LinkingForm>& forms, Var v, int complexity) {
  std::vector<AlexanderModule> mods;
  for (const auto& f : forms) mods.push_back(f.module());
  AlexanderModule m = direct_sum(mods, v, complexity);
  CosetMatrix gram(m.size(), std::vector<FracCoset>(m.size(), FracCoset(v)));
  std::size_t off = 0;
  for (const auto& f : forms) {
    for (std::size_t k = 0; k < f.module().size(); ++k)
      for (std::size_t l = 0; l < f.module().size(); ++l) gram[off + k][off + l] = f.gram(k, l);
    off += f.module().size();
  }
  return LinkingForm(std::move(m), std::move(gram), LinkingForm::Check::structural);
}

}  // namespace ratconc
