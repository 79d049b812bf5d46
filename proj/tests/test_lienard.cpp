#include <gtest/gtest.h>

#include "centerkit/lienard.hpp"
#include "support.hpp"

using namespace centerkit;
using centerkit::testing::make;
using centerkit::testing::Sampler;
using R = Rational;
using P1 = Poly1<R>;

TEST(ReduceQuotient, BaseField) {
  const auto l = reduce_quotient(ReversibleParams<R>{});
  EXPECT_TRUE(l.p1.is_zero());
  EXPECT_TRUE(l.p2.is_zero());
  EXPECT_EQ(l.p3, P1::monomial(R(2), 1));
  EXPECT_GT(l.c1(), R(0));
}

TEST(ReduceQuotient, DictionaryExamples) {
  EXPECT_EQ(reduce_quotient(make({{"a20", R(1, 10)}})).a0(), R(1, 5));
  EXPECT_EQ(reduce_quotient(make({{"b11", R(1, 10)}})).b1(), R(-1, 10));
}

TEST(ReduceQuotient, SingularAtB30One) {
  EXPECT_THROW(reduce_quotient(make({{"b30", R(1)}})), SingularReduction);
  EXPECT_THROW(lienard_coefficients(make({{"b30", R(1)}})), SingularReduction);
  ReversibleParams<double> d;
  d.b30 = 1.0;
  EXPECT_THROW(reduce_quotient(d), SingularReduction);
}

TEST(ReduceQuotient, SevenCoefficientFormulas) {
  Sampler s(201);
  for (int t = 0; t < 100; ++t) {
    const auto p = s.any(R(2));
    if (p.b30 == R(1)) continue;
    const auto l = reduce_quotient(p);
    const R g = R(1) - p.b30;
    EXPECT_EQ(l.a0(), R(2) * p.a20 / g);
    EXPECT_EQ(l.a1(), R(2) * p.a21 / g);
    EXPECT_EQ(l.b1(), -p.b11 / g);
    EXPECT_EQ(l.b2(), -p.b12 / g);
    EXPECT_EQ(l.c1(), R(2) * (R(1) + p.a01 + p.a21) / g);
    EXPECT_EQ(l.c2(), R(2) * p.a02 / g);
    EXPECT_EQ(l.c3(), R(2) * p.a03 / g);
    const auto d = lienard_coefficients(p);
    EXPECT_EQ(d.a0, l.a0());
    EXPECT_EQ(d.c3, l.c3());
    EXPECT_EQ(l.p1.degree() <= 1, true);
    EXPECT_TRUE(l.p2.coeff(0).is_zero());
    EXPECT_TRUE(l.p3.coeff(0).is_zero());
  }
}

TEST(QuotientIdentity, HoldsOnRandomParameters) {
  Sampler s(203);
  for (int t = 0; t < 100; ++t) {
    const auto p = s.any(R(2));
    if (p.b30 == R(1)) continue;
    EXPECT_TRUE(verify_quotient_identity(p, reduce_quotient(p)));
  }
}

TEST(QuotientIdentity, UnitIsTwoOverGap) {
  const auto p = make({{"b30", R(1, 3)}, {"a20", R(1, 7)}});
  EXPECT_EQ(reduce_quotient(p).provenance.unit, R(3));
}

TEST(QuotientIdentity, RejectsTamperedSystem) {
  Sampler s(205);
  for (int t = 0; t < 50; ++t) {
    const auto p = s.any();
    auto l = reduce_quotient(p);
    l.p3 = l.p3 + P1::monomial(R(1), 1);
    EXPECT_FALSE(verify_quotient_identity(p, l));
  }
}

TEST(QuotientIdentity, HandSubstitutionAtZero) {
  const auto l = LienardSystem<R>::from_coefficients(R(0), R(0), R(0), R(0), R(2), R(0), R(0));
  EXPECT_TRUE(verify_quotient_identity(ReversibleParams<R>{}, l));
}

TEST(QuotientIdentity, FloatingPointVariant) {
  Sampler s(207);
  for (int t = 0; t < 20; ++t) {
    const auto p = s.any().convert<double>();
    EXPECT_TRUE(verify_quotient_identity(p, reduce_quotient(p)));
  }
}

TEST(Cherkas, Examples) {
  const auto c = to_cherkas(LienardSystem<R>::from_coefficients(R(0), R(1), R(0), R(0), R(2), R(0), R(0)));
  EXPECT_EQ(c.p, P1::variable());
  EXPECT_EQ(c.q, P1::monomial(R(2), 1));
  EXPECT_EQ(c.p_prim, P1::monomial(R(1, 2), 2));
  EXPECT_EQ(c.q_prim, P1::monomial(R(1), 2));

  const auto base = to_cherkas(reduce_quotient(ReversibleParams<R>{}));
  EXPECT_TRUE(base.p.is_zero());
  EXPECT_EQ(base.q, P1::monomial(R(2), 1));
}

TEST(Cherkas, VanishingDampingWhenTraceAndHamiltonianHold) {
  Sampler s(209);
  for (int t = 0; t < 50; ++t) {
    const R a0 = s.coefficient(), b2 = s.coefficient();
    const auto l = LienardSystem<R>::from_coefficients(a0, R(2) * b2, a0, b2, s.coefficient(), s.coefficient(),
                                                       s.coefficient());
    EXPECT_TRUE(to_cherkas(l).p.is_zero());
  }
}

TEST(Cherkas, FormulasAgainstSource) {
  Sampler s(211);
  for (int t = 0; t < 100; ++t) {
    const auto l = reduce_quotient(s.any());
    const auto c = to_cherkas(l);
    EXPECT_EQ(c.p.coeff(0), l.a0() - l.b1());
    EXPECT_EQ(c.p.coeff(1), l.a1() - R(2) * l.b2());
    EXPECT_EQ(c.q.coeff(0), R(0));
    EXPECT_EQ(c.q.coeff(1), l.c1() - l.a0() * l.b1());
    EXPECT_EQ(c.q.coeff(2), l.c2() - l.a0() * l.b2() - l.a1() * l.b1());
    EXPECT_EQ(c.q.coeff(3), l.c3() - l.a1() * l.b2());
    EXPECT_EQ(c.p_prim.derivative(), c.p);
    EXPECT_EQ(c.q_prim.derivative(), c.q);
    EXPECT_TRUE(c.p_prim.coeff(0).is_zero());
    EXPECT_TRUE(verify_shear_identity(c));
  }
}

TEST(Cherkas, ShearIdentityDetectsTampering) {
  auto c = to_cherkas(reduce_quotient(make({{"a20", R(1, 10)}, {"b12", R(1, 3)}})));
  c.q = c.q + P1::monomial(R(1), 2);
  EXPECT_FALSE(verify_shear_identity(c));
}
