#include <gtest/gtest.h>

#include "centerkit/lyapunov.hpp"
#include "centerkit/strata.hpp"
#include "support.hpp"

using namespace centerkit;
using centerkit::testing::make;
using centerkit::testing::Sampler;
using R = Rational;

TEST(FocusQuantities, BaseFieldHasNone) {
  const auto fq = focus_quantities(unperturbed_field<R>(), 3);
  EXPECT_EQ(fq.eta.size(), 2u);
  EXPECT_TRUE(fq.all_vanish());
  EXPECT_EQ(fq.determinant, R(2));
  EXPECT_FALSE(first_nonzero_quantity(unperturbed_field<R>()));
}

TEST(FocusQuantities, HamiltonianStratumVanishes) {
  Sampler s(401);
  for (int t = 0; t < 30; ++t) {
    const auto fq = focus_quantities(build(s.hamiltonian()), 4);
    ASSERT_EQ(fq.eta.size(), 3u);
    EXPECT_TRUE(fq.all_vanish());
  }
}

TEST(FocusQuantities, PullBackSampleVanishes) {
  const auto p = make({{"a20", R(1, 10)}, {"b11", R(-1, 5)}, {"a21", R(3, 10)}, {"b12", R(1, 10)}, {"a02", R(1, 20)}});
  const auto fq = focus_quantities(build(p), 3);
  ASSERT_EQ(fq.eta.size(), 2u);
  EXPECT_TRUE(fq.eta[0].is_zero());
  EXPECT_TRUE(fq.eta[1].is_zero());
}

TEST(FocusQuantities, FocusSampleHasNonzeroQuantity) {
  const auto p = make({{"a20", R(1, 10)}, {"b11", R(-1, 5)}, {"a21", R(3, 10)}, {"a02", R(1)}});
  ASSERT_EQ(classify_reversible(p).stratum, Stratum::Focus);
  const auto first = first_nonzero_quantity(build(p));
  ASSERT_TRUE(first);
  EXPECT_EQ(first->first % 2, 0);
  EXPECT_GE(first->first, 4);
  EXPECT_FALSE(first->second.is_zero());
}

TEST(FocusQuantities, DegreeLabels) {
  EXPECT_EQ(FocusQuantities::degree_of(0), 4);
  EXPECT_EQ(FocusQuantities::degree_of(2), 8);
}

TEST(FocusQuantities, Errors) {
  EXPECT_THROW(focus_quantities(build(make({{"a20", R(1, 10)}}))), NotCenterType);
  EXPECT_THROW(focus_quantities(build(make({{"a01", R(-2)}}))), NotCenterType);
  using P2 = Poly2<R>;
  const CubicField<R> moved(P2::y() + P2::constant(R(1)), P2::x() - P2::monomial(R(1), 3, 0));
  EXPECT_THROW(focus_quantities(moved), ShiftNotRational);
  EXPECT_THROW(focus_quantities(unperturbed_field<R>(), 1), std::invalid_argument);
}

TEST(FocusQuantities, AgreesWithClassifierOnTraceFreeDraws) {
  Sampler s(403);
  int centers = 0, foci = 0;
  for (int t = 0; t < 240; ++t) {
    ReversibleParams<R> p;
    switch (t % 4) {
      case 0: p = s.hamiltonian(); break;
      case 1: p = s.pullback(); break;
      case 2: p = s.both(); break;
      default: p = s.trace_free(); break;
    }
    const auto v = classify_reversible(p);
    if (v.stratum == Stratum::Degenerate) continue;
    const auto fq = focus_quantities(build(p), 4);
    EXPECT_EQ(fq.all_vanish(), v.center()) << "draw " << t;
    (v.center() ? centers : foci)++;
  }
  EXPECT_GE(centers + foci, 200);
  EXPECT_GT(foci, 30);
}

TEST(FocusQuantities, TimeScalingPreservesVanishingPattern) {
  Sampler s(405);
  for (int t = 0; t < 40; ++t) {
    const auto p = t % 2 ? s.pullback() : s.focus();
    const auto f = build(p);
    const R sigma(3, 2);
    const CubicField<R> g(f.fx() * sigma, f.fy() * sigma);
    const auto a = focus_quantities(f, 4), b = focus_quantities(g, 4);
    ASSERT_EQ(a.eta.size(), b.eta.size());
    for (std::size_t i = 0; i < a.eta.size(); ++i) {
      EXPECT_EQ(a.eta[i].is_zero(), b.eta[i].is_zero());
      EXPECT_EQ(a.eta[i].sign(), b.eta[i].sign());
    }
  }
}
