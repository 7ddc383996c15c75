#include "ratconc/almodule.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ratconc;
using ratconc::testing::P;

namespace {

LaurentPoly S(std::initializer_list<long> c) { return P(c, Var::s); }

bool is_unit_det(const PolyMatrix& m, Var v) {
  auto d = determinant(m, v);
  return !d.is_zero() && d.is_unit();
}

void check_snf(const PolyMatrix& a, Var v) {
  auto f = smith_normal_form(a);
  EXPECT_EQ(f.U * a * f.W, f.D);
  EXPECT_TRUE(is_unit_det(f.U, v));
  EXPECT_TRUE(is_unit_det(f.W, v));
  EXPECT_EQ(f.W * f.W_inverse, poly_identity(a.size(), v));
  for (std::size_t i = 0; i < f.D.size(); ++i)
    for (std::size_t j = 0; j < f.D.size(); ++j)
      if (i != j) { EXPECT_TRUE(f.D[i][j].is_zero()); }
  auto inv = f.invariant_factors();
  for (std::size_t i = 0; i + 1 < inv.size(); ++i)
    if (!inv[i + 1].is_zero()) { EXPECT_TRUE(divides(inv[i], inv[i + 1])); }
}

}  // namespace

TEST(SmithNormalForm, Examples) {
  auto a = presentation_matrix(knots::nine_forty_six());
  EXPECT_EQ(a, (PolyMatrix{{P({0}), P({-2, 1})}, {P({-1, 2}), P({0})}}));
  check_snf(a, Var::t);
  auto inv = smith_normal_form(a).invariant_factors();
  EXPECT_TRUE(inv[0].is_unit());
  EXPECT_TRUE(associates(inv[1], P({-2, 1}) * P({-1, 2})));

  PolyMatrix one{{P({1})}};
  EXPECT_EQ(smith_normal_form(one).D, one);

  PolyMatrix diag{{P({-2, 1}), P({0})}, {P({0}), P({-2, 1})}};
  check_snf(diag, Var::t);
  auto dd = smith_normal_form(diag).invariant_factors();
  EXPECT_TRUE(associates(dd[0], P({-2, 1})));
  EXPECT_TRUE(associates(dd[1], P({-2, 1})));
}

// d_1 * ... * d_k equals the gcd of the k x k minors (determinantal divisors).
TEST(SmithNormalForm, DeterminantalDivisorOracle) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2;
    PolyMatrix a = poly_zero_matrix(n, n, Var::t);
    for (auto& row : a)
      for (auto& e : row) e = ratconc::testing::random_poly(rng, 2, Var::t, trial % 3 == 0);
    if (trial % 4 == 1) a[1] = a[0];  // rank drop
    check_snf(a, Var::t);
    auto inv = smith_normal_form(a).invariant_factors();
    LaurentPoly prod = LaurentPoly::one(Var::t);
    for (std::size_t k = 1; k <= n; ++k) {
      LaurentPoly g = ratconc::testing::determinantal_divisor(a, k, Var::t);
      prod = prod * inv[k - 1];
      if (g.is_zero()) EXPECT_TRUE(prod.is_zero());
      else EXPECT_TRUE(associates(prod, g)) << "k=" << k;
    }
  }
}

TEST(AlexanderModule, NineFortySix) {
  auto pm = present_module(knots::pattern_R());
  const auto& m = pm.module;
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.summand(0).annihilator, S({-1, 2}).monic());
  EXPECT_EQ(m.summand(1).annihilator, S({-2, 1}));
  EXPECT_EQ(m.summand(0).label, "alpha");
  EXPECT_EQ(m.summand(1).label, "beta");
  EXPECT_EQ(m.var(), Var::s);
  EXPECT_EQ(m.complexity(), 1);
  EXPECT_EQ(pm.to_module(knots::pattern_R().curve("alpha").coords), m.generator(0));
  EXPECT_EQ(pm.to_module(knots::pattern_R().curve("beta").coords), m.generator(1));
  EXPECT_EQ(m.describe(), "Q[s]/(2s - 1) + Q[s]/(s - 2)");
}

TEST(AlexanderModule, Examples) {
  auto tre = alexander_module(knots::right_trefoil());
  ASSERT_EQ(tre.size(), 1u);
  EXPECT_EQ(tre.summand(0).annihilator, S({1, -1, 1}));
  EXPECT_TRUE(alexander_module(knots::unknot()).is_trivial());
  EXPECT_EQ(alexander_module(knots::unknot()).q_dim(), 0u);
}

TEST(AlexanderModule, PresentationConsistency) {
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    auto v = ratconc::testing::random_seifert(rng, 1 + i % 2);
    auto pm = present_module(v);
    EXPECT_TRUE(associates(pm.module.order(), alexander_polynomial(v, Var::s)));
    for (std::size_t k = 0; k < pm.module.size(); ++k) {
      EXPECT_EQ(pm.to_module(pm.lifts[k]), pm.module.generator(k));
      EXPECT_TRUE(is_irreducible(pm.module.summand(k).prime));
    }
    for (const auto& rel : pm.relations) EXPECT_TRUE(pm.module.is_zero(pm.to_module(rel)));
    // the e_j generate the module
    std::vector<ModuleElement> images;
    for (std::size_t j = 0; j < v.dim(); ++j) {
      std::vector<LaurentPoly> e(v.dim(), LaurentPoly(Var::s));
      e[j] = LaurentPoly::one(Var::s);
      images.push_back(pm.to_module(e));
    }
    EXPECT_EQ(Submodule(pm.module, images).q_dim(), pm.module.q_dim());
  }
}

TEST(AlexanderModule, ConnectedSumIsDirectSum) {
  std::mt19937 rng(23);
  for (int i = 0; i < 20; ++i) {
    auto v = ratconc::testing::random_seifert(rng, 1), w = ratconc::testing::random_seifert(rng, 1);
    auto sum = alexander_module(connected_sum({v, w}));
    auto direct = direct_sum({alexander_module(v), alexander_module(w).with_prefix("w")}, Var::s, 1);
    EXPECT_EQ(annihilator_multiset(sum), annihilator_multiset(direct));
  }
  auto rr = alexander_module(connected_sum({knots::nine_forty_six(), knots::nine_forty_six()}));
  EXPECT_EQ(rr.size(), 4u);
}

TEST(Reparametrize, Examples) {
  AlexanderModule m(Var::s, 1, {Summand{S({-1, 2}).monic(), S({-1, 2}).monic(), 1, "alpha"}});
  auto m2 = reparametrize(m, 2);
  ASSERT_EQ(m2.size(), 1u);
  EXPECT_EQ(m2.summand(0).annihilator, P({-1, 0, 2}).monic());
  EXPECT_EQ(m2.summand(0).label, "alpha⊗1");
  EXPECT_EQ(m2.complexity(), 2);
  EXPECT_EQ(m2.var(), Var::t);

  auto id = reparametrize(m, 1);
  EXPECT_EQ(id.summand(0).annihilator, m.summand(0).annihilator.with_var(Var::t));

  AlexanderModule u(Var::s, 1, {Summand{S({-1, 1}), S({-1, 1}), 1, "x"}});
  auto split = reparametrize(u, 2);
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split.summand(0).annihilator, P({-1, 1}));
  EXPECT_EQ(split.summand(1).annihilator, P({1, 1}));
  EXPECT_EQ(split.summand(0).label, "x⊗1[1]");

  EXPECT_THROW(reparametrize(m2, 2), std::invalid_argument);
  EXPECT_THROW(reparametrize(m, 0), std::invalid_argument);
}

TEST(Reparametrize, DimensionAndElementMap) {
  std::mt19937 rng(29);
  for (int i = 0; i < 20; ++i) {
    auto m = alexander_module(ratconc::testing::random_seifert(rng, 1));
    for (int c = 1; c <= 4; ++c) {
      auto bc = base_change(m, c);
      EXPECT_EQ(bc.target.q_dim(), static_cast<std::size_t>(c) * m.q_dim());
      // x -> x (x) 1 is s-linear: (s x) (x) 1 = t^c (x (x) 1)
      for (std::size_t k = 0; k < m.size(); ++k) {
        auto g = m.generator(k);
        auto lhs = bc.map(m.scale(LaurentPoly::variable(Var::s), g));
        auto rhs = bc.target.scale(LaurentPoly::monomial(Rational(1), c, Var::t), bc.map(g));
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
  // a split summand: the idempotents are complete and orthogonal
  AlexanderModule w(Var::s, 1, {Summand{S({-1, 1}), S({-1, 1}), 1, "x"}});
  auto bw = base_change(w, 4);
  ASSERT_EQ(bw.target.size(), 3u);
  LaurentPoly big = P({-1, 0, 0, 0, 1});
  LaurentPoly total(Var::t);
  for (std::size_t i = 0; i < 3; ++i) {
    total += bw.idempotent[i];
    for (std::size_t j = 0; j < 3; ++j) {
      auto prod = mod_laurent(bw.idempotent[i] * bw.idempotent[j], big);
      EXPECT_EQ(prod, i == j ? bw.idempotent[i] : LaurentPoly(Var::t));
    }
  }
  EXPECT_EQ(mod_laurent(total, big), LaurentPoly::one(Var::t));
}

TEST(Reparametrize, DegreeCap) {
  AlexanderModule q(Var::s, 1, {Summand{S({1, -1, 0, 0, 1}).monic(), S({1, -1, 0, 0, 1}).monic(), 1, "x"}});
  ASSERT_TRUE(is_irreducible(q.summand(0).prime));
  EXPECT_NO_THROW(reparametrize(q, 2));
  EXPECT_THROW(reparametrize(q, 3), FactorizationCapExceeded);
}

TEST(ReverseModule, Examples) {
  auto r = alexander_module(knots::pattern_R());
  auto rev = reverse_module(r);
  EXPECT_EQ(rev.summand(0).annihilator, S({-2, 1}));
  EXPECT_EQ(rev.summand(1).annihilator, S({-1, 2}).monic());
  auto tre = alexander_module(knots::right_trefoil());
  EXPECT_EQ(reverse_module(tre), tre);
  EXPECT_TRUE(reverse_module(AlexanderModule()).is_trivial());
  EXPECT_EQ(reverse_module(rev), r);
  // matches the module of -tau(R) computed from its Seifert matrix
  auto minus_tau = alexander_module(knot_transform(knots::nine_forty_six(), KnotOp::inverse));
  EXPECT_EQ(annihilator_multiset(minus_tau), annihilator_multiset(rev));
  EXPECT_EQ(minus_tau.summand(0).annihilator, S({-2, 1}));
  EXPECT_EQ(minus_tau.summand(1).annihilator, S({-1, 2}).monic());
}

TEST(ReverseModule, Involutive) {
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    auto m = alexander_module(ratconc::testing::random_seifert(rng, 1 + i % 2));
    EXPECT_EQ(reverse_module(reverse_module(m)), m);
  }
}

TEST(Isotypic, DoubledPattern) {
  auto r = alexander_module(knots::pattern_R());
  auto rp = alexander_module(knot_transform(knots::nine_forty_six(), KnotOp::inverse));
  rp.set_label(0, "alpha'");
  rp.set_label(1, "beta'");
  auto l = direct_sum({r, rp}, Var::s, 1);
  auto classes = isotypic_decompose(l);
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0].prime, S({-1, 2}).monic());
  EXPECT_EQ(classes[0].summands, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(classes[1].prime, S({-2, 1}));
  EXPECT_EQ(classes[1].summands, (std::vector<std::size_t>{1, 2}));

  auto x = l.reduce({S({1}), S({3}), S({-1}), S({2})});
  auto y = reduce_to_isotypic(l, x, S({-1, 2}));
  EXPECT_TRUE(y.coords[1].is_zero());
  EXPECT_TRUE(y.coords[2].is_zero());
  EXPECT_FALSE(y.coords[0].is_zero());
  EXPECT_FALSE(y.coords[3].is_zero());
  auto u = isotypic_multiplier(l, S({-1, 2}));
  EXPECT_FALSE(divides(S({-1, 2}), u));

  EXPECT_EQ(isotypic_decompose(alexander_module(knots::right_trefoil())).size(), 1u);
}

TEST(Isotypic, ReductionProperty) {
  std::mt19937 rng(37);
  for (int i = 0; i < 30; ++i) {
    auto m = alexander_module(ratconc::testing::random_seifert(rng, 2));
    auto classes = isotypic_decompose(m);
    std::vector<LaurentPoly> c;
    for (std::size_t k = 0; k < m.size(); ++k)
      c.push_back(ratconc::testing::random_poly(rng, 3, Var::s));
    auto x = m.reduce(c);
    for (const auto& cls : classes) {
      auto y = reduce_to_isotypic(m, x, cls.prime);
      for (std::size_t k = 0; k < m.size(); ++k) {
        bool in = std::find(cls.summands.begin(), cls.summands.end(), k) != cls.summands.end();
        if (!in) EXPECT_TRUE(y.coords[k].is_zero());
        else EXPECT_EQ(y.coords[k].is_zero(), x.coords[k].is_zero());
      }
    }
  }
}

TEST(Submodule, Basics) {
  auto m = alexander_module(connected_sum({knots::right_trefoil(), knots::nine_forty_six()}));
  auto whole = Submodule::whole(m);
  EXPECT_EQ(whole.q_dim(), m.q_dim());
  Submodule zero(m);
  EXPECT_TRUE(zero.is_zero());
  Submodule one(m, {m.generator(0)});
  EXPECT_EQ(one.q_dim(), 2u);
  EXPECT_TRUE(one.contains(m.scale(S({1, 1}), m.generator(0))));
  EXPECT_FALSE(one.contains(m.generator(1)));
  EXPECT_TRUE(whole.contains(one));
  EXPECT_FALSE(one.contains(whole));
  Submodule again(m, {m.scale(S({0, 1}), m.generator(0))});
  EXPECT_EQ(one, again);
  ModuleElement bad = m.generator(0);
  bad.coords[0] = S({0, 0, 0, 1});
  EXPECT_THROW(Submodule(m, {bad}), std::invalid_argument);
}

TEST(AlexanderModule, QVectorRoundTrip) {
  auto m = alexander_module(connected_sum({knots::right_trefoil(), knots::nine_forty_six()}));
  EXPECT_EQ(m.q_dim(), 4u);
  auto x = m.reduce({S({1, 2}), S({5}), S({-3})});
  EXPECT_EQ(m.from_qvector(m.to_qvector(x)), x);
  EXPECT_THROW(m.reduce({S({1})}), std::invalid_argument);
}
