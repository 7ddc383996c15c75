#pragma once

// Metabelian rho obstruction for L = #_i n_i (K_i # -tau K_i), each K_i a
// satellite of a genus-one pattern. The rho invariants themselves are not
// computed; they enter through the additivity, satellite and vanishing rules,
// each recorded in the report's audit trail.

#include "ratconc/blanchfield.hpp"
#include "ratconc/signatures.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ratconc {

/// A machine-checked hypothesis of the vanishing rule failed.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { symbolic, numeric };

inline const char* to_string(Mode m) { return m == Mode::symbolic ? "symbolic" : "numeric"; }

/// rational constant (an interval when some companion value is only
/// enclosed) plus a rational combination of companion symbols.
class RhoExpr {
 public:
  RhoExpr() = default;

  static RhoExpr constant(const Rho0Value& v) {
    if (v.is_symbol()) return symbol(v.name());
    RhoExpr e;
    e.lower_ = v.lower();
    e.upper_ = v.upper();
    return e;
  }
  static RhoExpr constant(const Rational& q) { return constant(Rho0Value::exact(q)); }
  static RhoExpr symbol(const std::string& name, const Rational& coeff = 1) {
    if (name.empty()) throw std::invalid_argument("symbol names must be nonempty");
    RhoExpr e;
    if (coeff != 0) e.coeffs_[name] = coeff;
    return e;
  }

  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }
  bool exact_constant() const { return lower_ == upper_; }
  const std::map<std::string, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(const std::string& name) const {
    auto it = coeffs_.find(name);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }
  bool is_symbolic() const { return !coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && lower_ == 0 && upper_ == 0; }

  /// Nonzero for every assignment of Q-independent reals to the symbols:
  /// some coefficient is nonzero, or the constant enclosure excludes 0.
  bool nonvanishing() const { return !coeffs_.empty() || lower_ > 0 || upper_ < 0; }

  RhoExpr operator-() const { return *this * Rational(-1); }
  RhoExpr& operator+=(const RhoExpr& o) {
    lower_ += o.lower_;
    upper_ += o.upper_;
    for (const auto& [k, c] : o.coeffs_) {
      Rational v = coefficient(k) + c;
      if (v == 0) coeffs_.erase(k);
      else coeffs_[k] = v;
    }
    return *this;
  }
  friend RhoExpr operator+(RhoExpr a, const RhoExpr& b) { return a += b; }
  friend RhoExpr operator-(RhoExpr a, const RhoExpr& b) { return a += -b; }
  friend RhoExpr operator*(RhoExpr a, const Rational& q) {
    if (q == 0) return RhoExpr();
    a.lower_ *= q;
    a.upper_ *= q;
    if (q < 0) std::swap(a.lower_, a.upper_);
    for (auto& [k, c] : a.coeffs_) c *= q;
    return a;
  }
  friend RhoExpr operator*(const Rational& q, RhoExpr a) { return std::move(a) * q; }
  friend bool operator==(const RhoExpr&, const RhoExpr&) = default;

  /// e.g. "rB - rA", "-2/3", "rB + [-1/3, 1/3]", "0".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, c] : coeffs_) {
      Rational mag = abs(c);
      if (first) { if (c < 0) os << "-"; }
      else os << (c < 0 ? " - " : " + ");
      first = false;
      if (mag != 1) os << ratconc::to_string(mag) << "*";
      os << name;
    }
    if (exact_constant()) {
      if (lower_ != 0 || first) {
        if (first) os << ratconc::to_string(lower_);
        else os << (lower_ < 0 ? " - " : " + ") << ratconc::to_string(abs(lower_));
      }
    } else {
      if (!first) os << " + ";
      os << "[" << ratconc::to_string(lower_) << ", " << ratconc::to_string(upper_) << "]";
    }
    return os.str();
  }

 private:
  Rational lower_ = 0, upper_ = 0;
  std::map<std::string, Rational> coeffs_;
};

/// A companion knot J tied into a pattern curve, known through rho_0(J).
class Companion {
 public:
  enum class Kind { trivial, symbol, value, seifert };

  static Companion trivial(std::string name = "unknot") { return Companion(Kind::trivial, std::move(name)); }
  static Companion symbol(std::string name, std::string symbol) {
    Companion c(Kind::symbol, std::move(name));
    c.rho0_ = Rho0Value::symbol(std::move(symbol));
    return c;
  }
  static Companion value(std::string name, Rho0Value v) {
    if (v.is_symbol()) return symbol(std::move(name), v.name());
    Companion c(Kind::value, std::move(name));
    c.rho0_ = std::move(v);
    return c;
  }
  static Companion from_seifert(std::string name, SeifertMatrix v) {
    Companion c(Kind::seifert, std::move(name));
    c.seifert_ = std::move(v);
    return c;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_trivial() const { return kind_ == Kind::trivial; }
  const std::optional<Rho0Value>& stated_value() const { return rho0_; }
  const std::optional<SeifertMatrix>& seifert() const { return seifert_; }

  friend bool operator==(const Companion&, const Companion&) = default;

  /// rho_0 as an expression. Symbols are refused in numeric mode; a Seifert
  /// companion is evaluated exactly or to an enclosure of the given width.
  RhoExpr expr(Mode mode, const Rational& width) const {
    switch (kind_) {
      case Kind::trivial: return RhoExpr();
      case Kind::symbol:
        if (mode == Mode::numeric)
          throw std::invalid_argument("companion '" + name_ + "' is symbolic; numeric mode needs a value");
        return RhoExpr::symbol(rho0_->name());
      case Kind::value: return RhoExpr::constant(*rho0_);
      case Kind::seifert: return RhoExpr::constant(rho0(*seifert_, width));
    }
    return RhoExpr();
  }

 private:
  Companion(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::optional<Rho0Value> rho0_;
  std::optional<SeifertMatrix> seifert_;
};

/// K = P(curves; companions). Every pattern curve carries a companion,
/// possibly the trivial one.
struct InfectedKnot {
  std::string name;
  PatternKnot pattern;
  std::map<std::string, Companion> infections;

  friend bool operator==(const InfectedKnot&, const InfectedKnot&) = default;

  void validate() const {
    pattern.validate();
    for (const auto& c : pattern.curves)
      if (!infections.count(c.name))
        throw std::invalid_argument("knot '" + name + "': curve '" + c.name + "' has no companion (use the unknot)");
    for (const auto& [curve, comp] : infections) {
      bool found = false;
      for (const auto& c : pattern.curves) found = found || c.name == curve;
      if (!found) throw std::invalid_argument("knot '" + name + "': no pattern curve named '" + curve + "'");
    }
  }
};

struct FamilyMember {
  InfectedKnot knot;
  int multiplicity = 1;
  friend bool operator==(const FamilyMember&, const FamilyMember&) = default;
};

/// L = #_i n_i (K_i # -tau K_i).
struct FamilySpec {
  std::vector<FamilyMember> members;

  void validate() const {
    if (members.empty()) throw std::invalid_argument("family has no members");
    for (const auto& m : members) {
      if (m.multiplicity == 0) throw std::invalid_argument("knot '" + m.knot.name + "' has multiplicity 0");
      m.knot.validate();
    }
  }
};

/// One copy of K_i (or -K_i) or of -tau K_i (or tau K_i) inside L.
struct CopyKnot {
  std::size_t member = 0;
  int copy = 1;            // 1..|n_i|
  bool reversed = false;   // the -tau K_i part
  int sign = 1;            // sign of rho_0(companion) in this copy
  LinkingForm form;        // over Q[s^{+-1}], labels carry the copy suffix
  std::vector<std::string> curve_names;
  std::vector<ModuleElement> curves;

  std::string suffix() const {
    return std::string(reversed ? "'" : "") + "_{" + std::to_string(member + 1) + "," + std::to_string(copy) + "}";
  }
};

/// A cyclic p-primary summand of the c-module, owned by one copy.
struct Slot {
  std::size_t copy = 0;
  std::size_t local = 0;    // summand index inside the copy's c-module
  std::size_t global = 0;   // summand index inside the assembled module
  std::string name;         // independent of c, e.g. "alpha_{1,1}"
  LaurentPoly prime;        // over t
  LaurentPoly source_prime; // over s
};

struct Assembly {
  int complexity = 1;
  std::vector<CopyKnot> copies;
  std::vector<BaseChange> changes;
  std::vector<LinkingForm> forms;                   // per copy, complexity c
  std::vector<std::vector<ModuleElement>> curves;   // per copy, curve (x) 1
  std::vector<std::size_t> offsets;                 // first global summand of each copy
  AlexanderModule module;
  LinkingForm form;
  std::vector<Slot> slots;

  ModuleElement embed(std::size_t copy, const ModuleElement& local) const {
    ModuleElement x = module.zero();
    for (std::size_t k = 0; k < local.coords.size(); ++k) x.coords[offsets[copy] + k] = local.coords[k];
    return x;
  }
};

struct AdmissiblePattern {
  int complexity = 1;
  LaurentPoly prime;
  LaurentPoly source_prime;
  std::vector<std::size_t> support;  // slot indices, ascending
  std::vector<std::string> labels;

  std::string describe() const {
    std::string out = "{";
    for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? ", " : "") + labels[k];
    return out + "}";
  }
  /// c-independent identity of the pattern, used by the uniformity check.
  std::string key() const { return source_prime.to_string() + " " + describe(); }
};

/// True iff f is not in <p>: multiplication by f is injective on Q[t]/<p>.
inline bool subgroup_property_check(const LaurentPoly& f, const LaurentPoly& p) {
  if (!is_irreducible(p)) throw std::invalid_argument("subgroup_property_check needs an irreducible p, got " + p.to_string());
  return !divides(p, f);
}

/// Checks the hypotheses of the vanishing rule rho(pattern, phi') = 0 and
/// returns their audit lines; throws HypothesisError naming the first failure.
inline std::vector<std::string> check_vanishing_hypotheses(const InfectedKnot& k) {
  std::vector<std::string> audit;
  const std::string who = "knot '" + k.name + "'";
  if (k.pattern.seifert.dim() != 2)
    throw HypothesisError(who + ": pattern must have genus one, got a " + std::to_string(k.pattern.seifert.dim()) +
                          "x" + std::to_string(k.pattern.seifert.dim()) + " Seifert matrix");
  auto meta = metabolizer_search(k.pattern.seifert);
  if (!meta) throw HypothesisError(who + ": pattern is not algebraically slice (no genus-one metabolizer)");
  audit.push_back(who + ": metabolizer (" + std::to_string((*meta)[0]) + "," + std::to_string((*meta)[1]) + ") found");
  PresentedModule pm = present_module(k.pattern);
  LinkingForm b = blanchfield_form(pm);
  for (const auto& c : k.pattern.curves) {
    ModuleElement x = pm.to_module(c.coords);
    FracCoset v = b.pair(x, x);
    if (!v.is_zero())
      throw HypothesisError(who + ": Bl(" + c.name + "," + c.name + ") = " + v.to_string() + " is not 0");
    audit.push_back(who + ": Bl(" + c.name + "," + c.name + ") = 0");
  }
  return audit;
}

/// The copies of L over Q[s^{+-1}]. The -tau K part is K with inverted deck
/// transformation and reversed orientation, so its form is -conj(Bl_K) on
/// reverse_module(H_K); n_i < 0 reverses orientation once more.
inline std::vector<CopyKnot> copy_knots(const FamilySpec& spec) {
  spec.validate();
  std::vector<CopyKnot> out;
  for (std::size_t i = 0; i < spec.members.size(); ++i) {
    const auto& m = spec.members[i];
    PresentedModule pm = present_module(m.knot.pattern);
    LinkingForm base = blanchfield_form(pm);
    std::vector<std::string> names;
    std::vector<ModuleElement> classes;
    for (const auto& c : m.knot.pattern.curves) {
      names.push_back(c.name);
      classes.push_back(pm.to_module(c.coords));
    }
    const int delta = m.multiplicity > 0 ? 1 : -1;
    const int count = m.multiplicity > 0 ? m.multiplicity : -m.multiplicity;
    for (int j = 1; j <= count; ++j) {
      for (bool rev : {false, true}) {
        CopyKnot k;
        k.member = i;
        k.copy = j;
        k.reversed = rev;
        k.sign = rev ? -delta : delta;
        LinkingForm f = rev ? base.reversed() : base;
        if (k.sign < 0) f = f.negated();
        const std::string suf = k.suffix();
        k.form = f.relabeled([&](const std::string& l) { return l + suf; });
        k.curve_names = names;
        for (const auto& x : classes) k.curves.push_back(rev ? reverse_element(k.form.module(), x) : x);
        out.push_back(std::move(k));
      }
    }
  }
  return out;
}

inline Assembly assemble(const std::vector<CopyKnot>& copies, int c) {
  if (c < 1) throw std::invalid_argument("complexity must be positive");
  Assembly a;
  a.complexity = c;
  a.copies = copies;
  std::vector<LinkingForm> forms;
  std::size_t off = 0;
  for (std::size_t n = 0; n < copies.size(); ++n) {
    const CopyKnot& k = copies[n];
    BaseChange bc = base_change(k.form.module(), c);
    LinkingForm fc = basechange_form(k.form, bc, LinkingForm::Check::full);
    std::vector<ModuleElement> imgs;
    for (const auto& x : k.curves) imgs.push_back(bc.map(x));
    for (std::size_t s = 0; s < bc.target.size(); ++s) {
      const Summand& sm = bc.target.summand(s);
      std::string name = sm.label;
      if (auto p = name.find("⊗1"); p != std::string::npos) name.erase(p, std::string("⊗1").size());
      a.slots.push_back(Slot{n, s, off + s, name, sm.prime, bc.source.summand(bc.origin[s]).prime});
    }
    a.offsets.push_back(off);
    off += bc.target.size();
    a.changes.push_back(std::move(bc));
    a.forms.push_back(fc);
    a.curves.push_back(std::move(imgs));
    forms.push_back(std::move(fc));
  }
  a.form = orthogonal_sum(forms, Var::t, c);
  a.module = a.form.module();
  return a;
}

/// Block sum of the per-copy modules and forms, reparametrized to complexity c.
inline Assembly assemble(const FamilySpec& spec, int c) { return assemble(copy_knots(spec), c); }

/// Slots grouped by t-prime, in order of first appearance.
inline std::vector<std::vector<std::size_t>> slot_classes(const Assembly& a) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<LaurentPoly> primes;
  for (std::size_t k = 0; k < a.slots.size(); ++k) {
    auto it = std::find(primes.begin(), primes.end(), a.slots[k].prime);
    if (it == primes.end()) {
      primes.push_back(a.slots[k].prime);
      out.push_back({k});
    } else {
      out[static_cast<std::size_t>(it - primes.begin())].push_back(k);
    }
  }
  return out;
}

/// The element-level reduction needs each p-primary part of a copy to be a
/// single copy of Q[t]/<p>; then a nonzero p-primary x is a unit multiple of
/// the generator on each slot it touches.
inline void require_cyclic_square_free(const Assembly& a) {
  for (const auto& s : a.slots) {
    const Summand& sm = a.forms[s.copy].module().summand(s.local);
    if (sm.exponent != 1)
      throw std::domain_error("summand " + sm.label + " has annihilator " + sm.annihilator.to_string() +
                              "; the obstruction engine needs square-free annihilators");
  }
  for (std::size_t i = 0; i < a.slots.size(); ++i)
    for (std::size_t j = i + 1; j < a.slots.size(); ++j)
      if (a.slots[i].copy == a.slots[j].copy && a.slots[i].prime == a.slots[j].prime)
        throw std::domain_error("copy containing " + a.slots[i].name + " has a non-cyclic " +
                                a.slots[i].prime.to_string() + "-primary part");
}

inline std::vector<AdmissiblePattern> admissible_patterns(const Assembly& a) {
  require_cyclic_square_free(a);
  std::vector<AdmissiblePattern> out;
  for (const auto& cls : slot_classes(a)) {
    if (cls.size() > 24) throw std::length_error("too many slots in one isotypic class to enumerate");
    const std::uint64_t total = std::uint64_t{1} << cls.size();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      AdmissiblePattern p;
      p.complexity = a.complexity;
      p.prime = a.slots[cls[0]].prime;
      p.source_prime = a.slots[cls[0]].source_prime;
      for (std::size_t b = 0; b < cls.size(); ++b)
        if (mask & (std::uint64_t{1} << b)) {
          p.support.push_back(cls[b]);
          p.labels.push_back(a.slots[cls[b]].name);
        }
      out.push_back(std::move(p));
    }
  }
  return out;
}

inline std::vector<AdmissiblePattern> admissible_patterns(const FamilySpec& spec, int c) {
  return admissible_patterns(assemble(spec, c));
}

/// The unit-coordinate element of a pattern: the sum of its slot generators.
inline ModuleElement pattern_element(const Assembly& a, const AdmissiblePattern& p) {
  ModuleElement x = a.module.zero();
  for (auto s : p.support) x.coords[a.slots[s].global] = LaurentPoly::one(Var::t);
  return x;
}

struct ObstructionRow {
  int complexity = 1;
  AdmissiblePattern pattern;
  RhoExpr value;
};

enum class Verdict { obstructed, inconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::obstructed ? "OBSTRUCTED" : "INCONCLUSIVE"; }

/// States that every pattern's value is the same for each c in the sweep.
struct UniformCertificate {
  bool uniform = false;
  int c_first = 1, c_last = 1;
  std::size_t patterns_per_c = 0;
};

struct ObstructionReport {
  int c_max = 1;
  Mode mode = Mode::symbolic;
  Rational interval_width;
  std::vector<ObstructionRow> rows;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::size_t> witness;  // first row whose value may vanish
  std::string reason;
  std::vector<std::string> audit;
  UniformCertificate certificate;
};

/// Evaluates rho(L, phi_x) for admissible patterns. Per copy, the satellite
/// rule gives rho(pattern, phi') + sum over curves eta with
/// Bl_c(x, eta (x) 1) != 0 of the companion's rho_0; the first term is 0.
class ObstructionEngine {
 public:
  ObstructionEngine(FamilySpec spec, Mode mode, Rational width = interval_width_bound())
      : spec_(std::move(spec)), mode_(mode), width_(std::move(width)) {
    spec_.validate();
    if (width_ <= 0) throw std::invalid_argument("interval width must be positive");
    for (const auto& m : spec_.members) {
      auto lines = check_vanishing_hypotheses(m.knot);
      hypotheses_.insert(hypotheses_.end(), lines.begin(), lines.end());
    }
    copies_ = copy_knots(spec_);
    for (const auto& m : spec_.members) {
      std::vector<RhoExpr> row;
      for (const auto& c : m.knot.pattern.curves) row.push_back(m.knot.infections.at(c.name).expr(mode_, width_));
      companion_.push_back(std::move(row));
    }
  }

  const FamilySpec& spec() const { return spec_; }
  Mode mode() const { return mode_; }
  const std::vector<std::string>& hypotheses() const { return hypotheses_; }

  const Assembly& assembly(int c) {
    auto it = cache_.find(c);
    if (it == cache_.end()) it = cache_.emplace(c, assemble(copies_, c)).first;
    return it->second;
  }

  /// Contribution of the generator of one slot to rho(L, phi_x).
  RhoExpr slot_value(const Assembly& a, std::size_t slot) const {
    const Slot& s = a.slots.at(slot);
    const CopyKnot& k = a.copies[s.copy];
    const LinkingForm& f = a.forms[s.copy];
    ModuleElement g = f.module().generator(s.local);
    RhoExpr out;
    for (std::size_t e = 0; e < k.curves.size(); ++e) {
      const RhoExpr& j = companion_[k.member][e];
      if (j.is_zero()) continue;
      if (!f.pair(g, a.curves[s.copy][e]).is_zero()) out += j * Rational(k.sign);
    }
    return out;
  }

  RhoExpr evaluate(const Assembly& a, const AdmissiblePattern& p) const {
    if (p.complexity != a.complexity) throw std::invalid_argument("pattern complexity does not match the assembly");
    if (p.support.empty()) throw std::invalid_argument("admissible patterns have nonempty support");
    RhoExpr out;
    for (auto s : p.support) {
      if (a.slots.at(s).prime != p.prime) throw std::invalid_argument("slot " + a.slots[s].name + " is not " + p.prime.to_string() + "-primary");
      out += slot_value(a, s);
    }
    return out;
  }

  RhoExpr evaluate(const AdmissiblePattern& p) { return evaluate(assembly(p.complexity), p); }

  ObstructionReport verify(int c_max) {
    if (c_max < 1) throw std::invalid_argument("c_max must be at least 1");
    ObstructionReport r;
    r.c_max = c_max;
    r.mode = mode_;
    r.interval_width = width_;
    r.audit.push_back("axiom: rho is additive over the connected sum L = #_i n_i (K_i # -tau K_i); copies are evaluated separately");
    r.audit.push_back("axiom: satellite rule rho(K, phi) = rho(P, phi') + sum of rho_0(J_eta) over curves eta with phi(eta) nontrivial");
    r.audit.push_back("axiom: rho(P, phi') = 0 when P is algebraically slice and Bl(eta, eta) = 0 for its curves");
    for (const auto& h : hypotheses_) r.audit.push_back("check: " + h);
    r.audit.push_back("rule: rho_0(-tau J) = -rho_0(J) (mirror negates, reverse preserves); n_i < 0 negates once more");
    if (mode_ == Mode::symbolic)
      r.audit.push_back("assumption: companion symbols are linearly independent over Q, together with 1");

    std::vector<std::map<std::string, RhoExpr>> by_c;
    bool all_nonvanishing = true;
    bool any_empty = false;
    for (int c = 1; c <= c_max; ++c) {
      const Assembly& a = assembly(c);
      if (a.module.is_trivial()) {
        any_empty = true;
        r.audit.push_back("c=" + std::to_string(c) + ": module is trivial, no nonzero x exists");
      } else {
        r.audit.push_back("check: c=" + std::to_string(c) + ": Bl_c is nonsingular on every copy, so P = P^perp forces P != 0");
      }
      auto patterns = admissible_patterns(a);
      for (const auto& cls : slot_classes(a)) {
        const LaurentPoly& q = a.slots[cls[0]].prime;
        LaurentPoly mult = isotypic_multiplier(a.module, q);
        if (!subgroup_property_check(mult, q))
          throw std::logic_error("isotypic multiplier is not a unit modulo " + q.to_string());
        r.audit.push_back("rule: c=" + std::to_string(c) + ": reduction to the " + q.to_string() +
                          "-primary part multiplies by a unit; subgroup property keeps rho");
      }
      std::vector<RhoExpr> slot_values;
      for (std::size_t s = 0; s < a.slots.size(); ++s) slot_values.push_back(slot_value(a, s));
      std::map<std::string, RhoExpr> table;
      for (auto& p : patterns) {
        RhoExpr v;
        for (auto s : p.support) v += slot_values[s];
        if (!v.nonvanishing()) {
          all_nonvanishing = false;
          if (!r.witness) r.witness = r.rows.size();
        }
        table.emplace(p.key(), v);
        r.rows.push_back(ObstructionRow{c, std::move(p), std::move(v)});
      }
      by_c.push_back(std::move(table));
    }
    if (any_empty) {
      r.verdict = Verdict::inconclusive;
      r.reason = "some complexity admits no nonzero element";
    } else if (all_nonvanishing) {
      r.verdict = Verdict::obstructed;
      r.reason = "every admissible pattern has nonvanishing rho for c <= " + std::to_string(c_max);
    } else {
      r.verdict = Verdict::inconclusive;
      const auto& w = r.rows[*r.witness];
      r.reason = "pattern " + w.pattern.describe() + " at c=" + std::to_string(w.complexity) + " gives " + w.value.to_string();
    }
    r.certificate.c_first = 1;
    r.certificate.c_last = c_max;
    r.certificate.patterns_per_c = by_c.front().size();
    r.certificate.uniform = std::all_of(by_c.begin(), by_c.end(), [&](const auto& t) { return t == by_c.front(); });
    return r;
  }

 private:
  FamilySpec spec_;
  Mode mode_;
  Rational width_;
  std::vector<std::string> hypotheses_;
  std::vector<CopyKnot> copies_;
  std::vector<std::vector<RhoExpr>> companion_;  // per member, per pattern curve
  std::map<int, Assembly> cache_;
};

inline RhoExpr evaluate_rho(const FamilySpec& spec, const AdmissiblePattern& pattern, int c, Mode mode = Mode::symbolic) {
  if (pattern.complexity != c) throw std::invalid_argument("pattern was enumerated for another complexity");
  ObstructionEngine e(spec, mode);
  return e.evaluate(pattern);
}

inline ObstructionReport verify_obstructed(const FamilySpec& spec, int c_max, Mode mode = Mode::symbolic,
                                           const Rational& width = interval_width_bound()) {
  ObstructionEngine e(spec, mode, width);
  return e.verify(c_max);
}

namespace knots {

/// R(alpha, beta; J_alpha, J_beta) on the 9_46 pattern.
inline InfectedKnot infected_R(std::string name, Companion j_alpha, Companion j_beta) {
  InfectedKnot k{std::move(name), pattern_R(), {}};
  k.infections.emplace("alpha", std::move(j_alpha));
  k.infections.emplace("beta", std::move(j_beta));
  return k;
}

}  // namespace knots

}  // namespace ratconc
