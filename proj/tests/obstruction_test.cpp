#include "ratconc/obstruction.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ratconc;
using namespace ratconc::testing;

namespace {

Companion sym(const std::string& s) { return Companion::symbol("J_" + s, s); }

FamilySpec single(Companion a, Companion b, int n = 1) {
  return FamilySpec{{FamilyMember{knots::infected_R("K", std::move(a), std::move(b)), n}}};
}

FamilySpec knot_K() { return single(sym("rA"), sym("rB")); }

FamilySpec three_members(const std::vector<Companion>& cs) {
  FamilySpec f;
  const int mult[] = {1, -2, 3};
  for (int i = 0; i < 3; ++i)
    f.members.push_back(FamilyMember{knots::infected_R("K" + std::to_string(i + 1), cs[2 * i], cs[2 * i + 1]), mult[i]});
  return f;
}

FamilySpec three_symbolic() {
  std::vector<Companion> cs;
  for (int i = 1; i <= 3; ++i) {
    cs.push_back(sym("rA" + std::to_string(i)));
    cs.push_back(sym("rB" + std::to_string(i)));
  }
  return three_members(cs);
}

FamilySpec three_numeric() {
  // 1/p for distinct primes p: no nontrivial small integer combination vanishes.
  const long primes[] = {101, 103, 107, 109, 113, 127};
  std::vector<Companion> cs;
  for (long p : primes) cs.push_back(Companion::value("J" + std::to_string(p), Rho0Value::exact(Rational(1, p))));
  return three_members(cs);
}

std::set<std::string> labels(const AlexanderModule& m) {
  std::set<std::string> out;
  for (const auto& s : m.summands()) out.insert(s.label);
  return out;
}

const AdmissiblePattern& find_pattern(const std::vector<AdmissiblePattern>& ps, const std::string& d) {
  for (const auto& p : ps)
    if (p.describe() == d) return p;
  throw std::runtime_error("no pattern " + d);
}

}  // namespace

TEST(RhoExpr, CanonicalArithmetic) {
  RhoExpr a = RhoExpr::symbol("rA"), b = RhoExpr::symbol("rB");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((a - a).coefficients().empty());
  EXPECT_EQ((b - a).to_string(), "-rA + rB");
  EXPECT_EQ((a * Rational(2) + RhoExpr::constant(Rational(-4, 3))).to_string(), "2*rA - 4/3");
  EXPECT_EQ(RhoExpr().to_string(), "0");
  EXPECT_FALSE(RhoExpr().nonvanishing());
  EXPECT_TRUE(b.nonvanishing());
  EXPECT_TRUE(RhoExpr::constant(Rational(-2, 3)).nonvanishing());
}

TEST(RhoExpr, IntervalsStaySound) {
  RhoExpr i = RhoExpr::constant(Rho0Value::interval(Rational(1, 10), Rational(2, 10)));
  EXPECT_TRUE(i.nonvanishing());
  EXPECT_FALSE((i - RhoExpr::constant(Rational(3, 20))).nonvanishing());
  RhoExpr n = -i;
  EXPECT_EQ(n.lower(), Rational(-2, 10));
  EXPECT_EQ(n.upper(), Rational(-1, 10));
  EXPECT_EQ(i.to_string(), "[1/10, 1/5]");
}

TEST(SubgroupProperty, Examples) {
  EXPECT_TRUE(subgroup_property_check(P({1, 1}), P({-1, 2})));
  EXPECT_FALSE(subgroup_property_check(P({-1, 2}), P({-1, 2})));
  EXPECT_TRUE(subgroup_property_check(P({-1, 2}) * P({-2, 1}) + P({1}), P({-1, 2})));
  EXPECT_THROW(subgroup_property_check(P({1}), P({-1, 2}) * P({-2, 1})), std::invalid_argument);
}

TEST(SubgroupProperty, MatchesRemainderOracle) {
  std::mt19937 rng(7);
  LaurentPoly p = P({-1, 2});  // root 1/2
  for (int it = 0; it < 60; ++it) {
    LaurentPoly f = random_poly(rng, 4);
    EXPECT_EQ(subgroup_property_check(f, p), f.evaluate(Rational(1, 2)) != 0) << f;
  }
}

TEST(Assemble, SingleMemberAnnihilators) {
  for (int c : {1, 2, 3}) {
    Assembly a = assemble(knot_K(), c);
    ASSERT_EQ(a.module.size(), 4u);
    LaurentPoly half = (P({-1, 2}).substitute_power(c)).monic();
    LaurentPoly two = P({-2, 1}).substitute_power(c).monic();
    EXPECT_EQ(a.module.summand(0).annihilator, half);
    EXPECT_EQ(a.module.summand(1).annihilator, two);
    EXPECT_EQ(a.module.summand(2).annihilator, two);
    EXPECT_EQ(a.module.summand(3).annihilator, half);
    EXPECT_EQ(a.module.complexity(), c);
  }
  Assembly a = assemble(knot_K(), 1);
  EXPECT_EQ(labels(a.module), (std::set<std::string>{"alpha_{1,1}⊗1", "beta_{1,1}⊗1", "alpha'_{1,1}⊗1", "beta'_{1,1}⊗1"}));
}

TEST(Assemble, KnotBlockIsTheFormOfR) {
  Assembly a = assemble(single(Companion::trivial(), Companion::trivial()), 1);
  LinkingForm r = basechange_form(blanchfield_form(knots::pattern_R()), 1);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a.module.summand(k).annihilator, r.module().summand(k).annihilator);
    for (std::size_t l = 0; l < 2; ++l) EXPECT_EQ(a.form.gram(k, l), r.gram(k, l));
  }
}

TEST(Assemble, ReversedCopyAgreesWithInverseSeifertMatrix) {
  PatternKnot r = knots::pattern_R();
  PatternKnot inv{knot_transform(r.seifert, KnotOp::inverse), r.curves};
  LinkingForm direct = blanchfield_form(inv);
  LinkingForm built = blanchfield_form(r).reversed().negated();
  EXPECT_EQ(direct.module(), built.module());
  EXPECT_EQ(direct.gram(), built.gram());
  EXPECT_EQ(direct.module().describe(), "Q[s]/(s - 2) + Q[s]/(2s - 1)");
}

TEST(Assemble, NegativeMultiplicityCopies) {
  Assembly a = assemble(single(sym("rA"), sym("rB"), -2), 2);
  ASSERT_EQ(a.copies.size(), 4u);
  EXPECT_EQ(a.module.size(), 8u);
  LinkingForm r = basechange_form(blanchfield_form(knots::pattern_R()), 2);
  // -K: same module, negated form.
  EXPECT_EQ(a.forms[0].gram(0, 1), -r.gram(0, 1));
  EXPECT_EQ(a.copies[0].sign, -1);
  EXPECT_EQ(a.copies[1].sign, 1);
  EXPECT_TRUE(a.module.find_label("beta'_{1,2}⊗1").has_value());
}

TEST(Assemble, CopiesAreOrthogonal) {
  Assembly a = assemble(three_symbolic(), 2);
  for (std::size_t k = 0; k < a.module.size(); ++k)
    for (std::size_t l = 0; l < a.module.size(); ++l) {
      std::size_t ck = 0, cl = 0;
      for (std::size_t n = 0; n < a.offsets.size(); ++n) {
        if (a.offsets[n] <= k) ck = n;
        if (a.offsets[n] <= l) cl = n;
      }
      if (ck != cl) { EXPECT_TRUE(a.form.gram(k, l).is_zero()); }
    }
}

TEST(Assemble, RejectsInvalidSpecs) {
  EXPECT_THROW(assemble(FamilySpec{}, 1), std::invalid_argument);
  EXPECT_THROW(assemble(single(sym("rA"), sym("rB"), 0), 1), std::invalid_argument);
  InfectedKnot k = knots::infected_R("K", sym("rA"), sym("rB"));
  k.infections.erase("beta");
  EXPECT_THROW(assemble(FamilySpec{{FamilyMember{k, 1}}}, 1), std::invalid_argument);
  k.infections.emplace("gamma", sym("rC"));
  EXPECT_THROW(assemble(FamilySpec{{FamilyMember{k, 1}}}, 1), std::invalid_argument);
  EXPECT_THROW(assemble(knot_K(), 0), std::invalid_argument);
}

TEST(AdmissiblePatterns, SingleMember) {
  auto ps = admissible_patterns(knot_K(), 3);
  ASSERT_EQ(ps.size(), 6u);
  EXPECT_EQ(ps[0].describe(), "{alpha_{1,1}}");
  EXPECT_EQ(ps[1].describe(), "{beta'_{1,1}}");
  EXPECT_EQ(ps[2].describe(), "{alpha_{1,1}, beta'_{1,1}}");
  EXPECT_EQ(ps[3].describe(), "{beta_{1,1}}");
  EXPECT_EQ(ps[4].describe(), "{alpha'_{1,1}}");
  EXPECT_EQ(ps[5].describe(), "{beta_{1,1}, alpha'_{1,1}}");
  EXPECT_EQ(ps[0].prime, P({-1, 0, 0, 2}).monic());
  EXPECT_EQ(ps[3].prime, P({-2, 0, 0, 1}));
  for (const auto& p : ps) EXPECT_FALSE(p.support.empty());
}

TEST(AdmissiblePatterns, CountingOracle) {
  FamilySpec two = knot_K();
  two.members.push_back(FamilyMember{knots::infected_R("K2", sym("rC"), sym("rD")), -1});
  EXPECT_EQ(admissible_patterns(two, 1).size(), 30u);
  // slots per class = 2 * sum |n_i|
  EXPECT_EQ(admissible_patterns(single(sym("rA"), sym("rB"), 3), 2).size(), 2u * ((1u << 6) - 1));
}

TEST(AdmissiblePatterns, SlotsArePrimary) {
  Assembly a = assemble(three_symbolic(), 2);
  for (const auto& p : admissible_patterns(a))
    for (auto s : p.support) {
      EXPECT_EQ(a.slots[s].prime, p.prime);
      EXPECT_EQ(a.module.summand(a.slots[s].global).prime, p.prime);
    }
}

TEST(EvaluateRho, SingleMemberCases) {
  auto ps = admissible_patterns(knot_K(), 1);
  const RhoExpr rA = RhoExpr::symbol("rA"), rB = RhoExpr::symbol("rB");
  EXPECT_EQ(evaluate_rho(knot_K(), find_pattern(ps, "{alpha_{1,1}}"), 1), rB);
  EXPECT_EQ(evaluate_rho(knot_K(), find_pattern(ps, "{beta'_{1,1}}"), 1), -rA);
  EXPECT_EQ(evaluate_rho(knot_K(), find_pattern(ps, "{alpha_{1,1}, beta'_{1,1}}"), 1), rB - rA);
  EXPECT_EQ(evaluate_rho(knot_K(), find_pattern(ps, "{beta_{1,1}}"), 1), rA);
  EXPECT_EQ(evaluate_rho(knot_K(), find_pattern(ps, "{alpha'_{1,1}}"), 1), -rB);
  EXPECT_THROW(evaluate_rho(knot_K(), ps[0], 2), std::invalid_argument);
}

TEST(EvaluateRho, EqualValuesCancel) {
  auto j = Companion::value("J", Rho0Value::exact(Rational(-4, 3)));
  FamilySpec f = single(j, j);
  auto ps = admissible_patterns(f, 1);
  EXPECT_TRUE(evaluate_rho(f, find_pattern(ps, "{alpha_{1,1}, beta'_{1,1}}"), 1, Mode::numeric).is_zero());
  EXPECT_EQ(evaluate_rho(f, find_pattern(ps, "{alpha_{1,1}}"), 1, Mode::numeric), RhoExpr::constant(Rational(-4, 3)));
}

TEST(EvaluateRho, TrefoilCompanionsGiveTheCaseAnalysis) {
  // J_alpha = left trefoil, J_beta = right trefoil: rho_0 = 4/3 and -4/3.
  FamilySpec f = single(Companion::from_seifert("LHT", knots::left_trefoil()),
                        Companion::from_seifert("RHT", knots::right_trefoil()));
  ObstructionReport r = verify_obstructed(f, 2, Mode::numeric);
  EXPECT_EQ(r.verdict, Verdict::obstructed);
  std::set<std::string> values;
  for (const auto& row : r.rows) values.insert(row.value.to_string());
  EXPECT_EQ(values, (std::set<std::string>{"-4/3", "-8/3", "4/3", "8/3"}));
}

TEST(EvaluateRho, SlotPairingsMatchTheContributionRule) {
  Assembly a = assemble(three_symbolic(), 2);
  for (std::size_t s = 0; s < a.slots.size(); ++s) {
    const Slot& sl = a.slots[s];
    const CopyKnot& k = a.copies[sl.copy];
    ModuleElement x = a.forms[sl.copy].module().generator(sl.local);
    std::size_t nonzero = 0;
    for (std::size_t e = 0; e < k.curves.size(); ++e) {
      bool pairs = !a.forms[sl.copy].pair(x, a.curves[sl.copy][e]).is_zero();
      bool same = sl.name.rfind(k.curve_names[e] + "_", 0) == 0 || sl.name.rfind(k.curve_names[e] + "'", 0) == 0;
      if (same) { EXPECT_FALSE(pairs) << sl.name; }
      nonzero += pairs;
    }
    EXPECT_EQ(nonzero, 1u) << sl.name;
  }
  // The same rule read off the assembled form with the embedded pattern element.
  for (const auto& p : admissible_patterns(a)) {
    if (p.support.size() != 1) continue;
    ModuleElement x = pattern_element(a, p);
    const Slot& sl = a.slots[p.support[0]];
    std::size_t nonzero = 0;
    for (std::size_t e = 0; e < a.copies[sl.copy].curves.size(); ++e)
      nonzero += !a.form.pair(x, a.embed(sl.copy, a.curves[sl.copy][e])).is_zero();
    EXPECT_EQ(nonzero, 1u);
  }
}

TEST(Hypotheses, CurveWithNonzeroSelfPairingIsRejected) {
  PatternKnot p = knots::pattern_R();
  p.curves.push_back(Curve{"gamma", {LaurentPoly::one(Var::s), LaurentPoly::one(Var::s)}});
  InfectedKnot k = knots::infected_R("bad", sym("rA"), sym("rB"));
  k.pattern = p;
  k.infections.emplace("gamma", sym("rC"));
  FamilySpec f{{FamilyMember{k, 1}}};
  try {
    verify_obstructed(f, 1);
    FAIL() << "expected a hypothesis failure";
  } catch (const HypothesisError& e) {
    EXPECT_NE(std::string(e.what()).find("Bl(gamma,gamma)"), std::string::npos) << e.what();
  }
}

TEST(Hypotheses, PatternWithoutMetabolizerIsRejected) {
  PatternKnot p{knots::right_trefoil(), {Curve{"alpha", {LaurentPoly::one(Var::s), LaurentPoly(Var::s)}}}};
  InfectedKnot k{"T", p, {{"alpha", sym("rA")}}};
  try {
    verify_obstructed(FamilySpec{{FamilyMember{k, 1}}}, 1);
    FAIL() << "expected a hypothesis failure";
  } catch (const HypothesisError& e) {
    EXPECT_NE(std::string(e.what()).find("metabolizer"), std::string::npos) << e.what();
  }
}

TEST(Verify, KnotKIsObstructedUniformly) {
  ObstructionReport r = verify_obstructed(knot_K(), 5);
  EXPECT_EQ(r.verdict, Verdict::obstructed);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.rows.size(), 30u);
  EXPECT_TRUE(r.certificate.uniform);
  EXPECT_EQ(r.certificate.c_last, 5);
  const RhoExpr rA = RhoExpr::symbol("rA"), rB = RhoExpr::symbol("rB");
  for (int c = 1; c <= 5; ++c) {
    std::vector<RhoExpr> first, second;
    for (const auto& row : r.rows) {
      if (row.complexity != c) continue;
      (row.pattern.source_prime == P({-1, 2}, Var::s).monic() ? first : second).push_back(row.value);
    }
    EXPECT_EQ(first, (std::vector<RhoExpr>{rB, -rA, rB - rA}));
    EXPECT_EQ(second, (std::vector<RhoExpr>{rA, -rB, rA - rB}));
  }
}

TEST(Verify, EqualCompanionsAreInconclusive) {
  ObstructionReport r = verify_obstructed(single(sym("r"), sym("r")), 3);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.rows[*r.witness].pattern.describe(), "{alpha_{1,1}, beta'_{1,1}}");
  EXPECT_EQ(r.rows[*r.witness].complexity, 1);
  EXPECT_TRUE(r.rows[*r.witness].value.is_zero());
}

TEST(Verify, UninfectedPatternIsInconclusive) {
  ObstructionReport r = verify_obstructed(single(Companion::trivial(), Companion::trivial()), 3);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  for (const auto& row : r.rows) EXPECT_TRUE(row.value.is_zero());
}

TEST(Verify, ThreeMemberFamily) {
  ObstructionReport r = verify_obstructed(three_symbolic(), 3);
  EXPECT_EQ(r.verdict, Verdict::obstructed);
  EXPECT_EQ(r.rows.size(), 3u * 2u * ((1u << 12) - 1));
  for (const auto& row : r.rows) EXPECT_TRUE(row.value.is_symbolic());
  EXPECT_TRUE(r.certificate.uniform);
}

TEST(Verify, NumericAgreesWithSymbolic) {
  std::vector<std::pair<FamilySpec, FamilySpec>> cases;
  auto v = [](long p) { return Companion::value("J" + std::to_string(p), Rho0Value::exact(Rational(1, p))); };
  cases.push_back({knot_K(), single(v(2), v(3))});
  cases.push_back({single(sym("r"), sym("r")), single(v(5), v(5))});
  cases.push_back({single(Companion::trivial(), Companion::trivial()), single(Companion::trivial(), Companion::trivial())});
  cases.push_back({three_symbolic(), three_numeric()});
  for (const auto& [s, n] : cases) {
    auto rs = verify_obstructed(s, 2, Mode::symbolic);
    auto rn = verify_obstructed(n, 2, Mode::numeric);
    EXPECT_EQ(rs.verdict, rn.verdict);
    EXPECT_EQ(rs.witness, rn.witness);
  }
}

TEST(Verify, MonotoneInCmax) {
  std::vector<FamilySpec> specs = {knot_K(), single(sym("r"), sym("r")),
                                   single(Companion::trivial(), sym("rB"), 2)};
  for (const auto& f : specs) {
    ObstructionEngine e(f, Mode::symbolic);
    bool prev_obstructed = true;
    for (int c = 1; c <= 4; ++c) {
      bool now = e.verify(c).verdict == Verdict::obstructed;
      if (now) { EXPECT_TRUE(prev_obstructed); }
      prev_obstructed = now;
    }
  }
}

TEST(Verify, NumericModeRefusesSymbols) {
  EXPECT_THROW(verify_obstructed(knot_K(), 1, Mode::numeric), std::invalid_argument);
}

TEST(Verify, IntervalContainingZeroIsInconclusive) {
  auto j = Companion::value("J", Rho0Value::interval(Rational(-1, 100), Rational(1, 100)));
  ObstructionReport r = verify_obstructed(single(j, Companion::value("K", Rho0Value::exact(1))), 1, Mode::numeric);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_EQ(r.rows[*r.witness].pattern.describe(), "{beta'_{1,1}}");
}

TEST(Verify, AuditNamesEveryAxiom) {
  ObstructionReport r = verify_obstructed(knot_K(), 2);
  auto has = [&](const std::string& needle) {
    return std::any_of(r.audit.begin(), r.audit.end(), [&](const std::string& a) { return a.find(needle) != std::string::npos; });
  };
  EXPECT_TRUE(has("additive over the connected sum"));
  EXPECT_TRUE(has("satellite rule"));
  EXPECT_TRUE(has("metabolizer (1,0)"));
  EXPECT_TRUE(has("Bl(alpha,alpha) = 0"));
  EXPECT_TRUE(has("subgroup property"));
  EXPECT_TRUE(has("nonsingular"));
}
