#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "padic/catalog.hpp"
#include "padic/mirrorsim.hpp"

using namespace padic;

namespace {

// Floating-point oracle: (1/N) sum_a exp(2 pi i (xi + t(a))), summed in complex doubles.
std::complex<double> numeric_integral(const Character& t, const Rational& xi, const Rational& N) {
  std::complex<double> s = 0;
  const double two_pi = 2 * std::acos(-1.0);
  for (const auto& a : t.owner().elements()) {
    const Rational arg = xi + t(a);
    s += std::polar(1.0, two_pi * static_cast<double>(arg));
  }
  return s / static_cast<double>(N);
}

FiberModel identity_fiber(const FinAbGroup& g, const Character& t1, const Character& t2, Rational N = 1) {
  std::vector<GroupElement> phi;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    GroupElement e = g.identity();
    e[i] = 1;
    phi.push_back(e);
  }
  return {g, g, phi, t1, t2, N, 0, 0};
}

}  // namespace

TEST(FiberIntegrals, CaseAnalysis) {
  const auto g = FinAbGroup::parse("Z/2 x Z/2");
  const auto triv = Character::trivial(g);
  const Character chi(g, {1, 0});
  const auto both_trivial = fiber_integrals(identity_fiber(g, triv, triv, 5));
  EXPECT_EQ(both_trivial.case_label, 4);
  EXPECT_EQ(both_trivial.I1, Rational(4, 5));
  EXPECT_EQ(both_trivial.I2, Rational(4, 5));
  const auto only_t1 = fiber_integrals(identity_fiber(g, chi, triv));
  EXPECT_EQ(only_t1.case_label, 2);
  EXPECT_EQ(only_t1.I1, 0);
  EXPECT_EQ(only_t1.I2, 0);
  const auto only_t2 = fiber_integrals(identity_fiber(g, triv, chi));
  EXPECT_EQ(only_t2.case_label, 3);
  EXPECT_EQ(only_t2.I1, 0);
  const auto both = fiber_integrals(identity_fiber(g, chi, chi));
  EXPECT_EQ(both.case_label, 1);
  EXPECT_EQ(both.I1, 0);
  EXPECT_EQ(both.I2, 0);
}

TEST(FiberIntegrals, ExactValuesMatchComplexSummation) {
  for (const auto& g : all_abelian_groups(12)) {
    for (const auto& t : all_characters(g))
      for (const Rational& xi : {Rational(0), Rational(1, 3), Rational(1, 2)}) {
        // A constant xi of order 3 on the trivial character gives |G| zeta_3, not a rational.
        if (t.is_trivial() && xi == Rational(1, 3)) continue;
        const Rational N(7);
        const auto exact = detail::f_integral(t, xi, N);
        const auto numeric = numeric_integral(t, xi, N);
        EXPECT_NEAR(numeric.real(), static_cast<double>(exact), 1e-9) << g.to_string();
        EXPECT_NEAR(numeric.imag(), 0.0, 1e-9) << g.to_string();
      }
  }
}

TEST(FiberIntegrals, XiMustBeTrivialOnTrivialCharacter) {
  const auto g = FinAbGroup::cyclic(3);
  auto f = identity_fiber(g, Character::trivial(g), Character::trivial(g));
  f.xi1 = Rational(1, 2);
  EXPECT_THROW(fiber_integrals(f), Error);
}

TEST(FiberIntegrals, TranslationInvariance) {
  for (const auto& g : all_abelian_groups(8))
    for (const auto& t1 : all_characters(g))
      for (const auto& t2 : all_characters(g)) {
        const auto f = identity_fiber(g, t1, t2, 3);
        const auto base = fiber_integrals(f);
        for (const auto& s : g.elements()) {
          const auto moved = fiber_integrals_translated(f, s, s);
          EXPECT_EQ(moved.I1, base.I1);
          EXPECT_EQ(moved.I2, base.I2);
        }
      }
}

TEST(GlobalIdentity, AllTrivialCharacters) {
  const auto E = EllipticCurveModel(ff_field_of_size(5), {0, 0, 0, 1, 0});
  const auto model = make_model_from_curve(E, 2, 1, 0);
  ASSERT_EQ(model.fibers.size(), 1u);
  EXPECT_TRUE(model.fibers[0].t1.is_trivial());
  EXPECT_TRUE(model.fibers[0].t2.is_trivial());
  const auto gi = global_identity(model);
  EXPECT_TRUE(gi.pass);
  EXPECT_EQ(gi.sum1, Rational(4, 5));
}

TEST(GlobalIdentity, SeededModelsBalanceAcrossCurves) {
  for (std::int64_t q : {5, 7, 11})
    for (const auto& E : short_weierstrass_curves(q))
      for (std::uint64_t seed : {1u, 42u, 2024u}) {
        const auto model = make_model_from_curve(E, 2, 100, seed);
        const auto gi = global_identity(model);
        EXPECT_TRUE(gi.pass) << E.to_string() << " seed=" << seed;
        for (const auto& fi : gi.fibers) EXPECT_EQ(fi.I1, fi.I2);
      }
}

TEST(GlobalIdentity, KernelOfMultiplicationByTwo) {
  const auto E = EllipticCurveModel(ff_field_of_size(5), {0, 0, 0, 1, 0});
  const auto model = make_model_from_curve(E, 2, 5, 42);
  for (const auto& f : model.fibers) {
    const auto kb = kernel_bookkeeping(f);
    EXPECT_EQ(kb.kernel, 4);
    EXPECT_TRUE(kb.pass);
  }
}

TEST(GlobalIdentity, SeedIsDeterministic) {
  const auto E = EllipticCurveModel(ff_field_of_size(7), {0, 0, 0, 3, 2});
  const auto a = make_model_from_curve(E, 3, 20, 42);
  const auto b = make_model_from_curve(E, 3, 20, 42);
  ASSERT_EQ(a.fibers.size(), b.fibers.size());
  for (std::size_t i = 0; i < a.fibers.size(); ++i) {
    EXPECT_EQ(a.fibers[i].t1, b.fibers[i].t1);
    EXPECT_EQ(a.fibers[i].t2, b.fibers[i].t2);
  }
}

TEST(GlobalIdentity, NonHomomorphismRejected) {
  const auto klein = FinAbGroup::parse("Z/2 x Z/2");
  const auto z4 = FinAbGroup::cyclic(4);
  // Z/4 onto Z/2 x Z/2 sending 1 to (1,0) respects 4 * 1 = 0.
  const FiberModel good{z4, klein, {{1, 0}}, Character::trivial(klein), Character::trivial(z4), 1, 0, 0};
  EXPECT_NO_THROW(good.validate());
  // Z/2 x Z/2 to Z/4 sending both generators to 1 fails 2 * 1 = 0.
  const FiberModel bad{klein, z4, {{1}, {1}}, Character::trivial(z4), Character::trivial(klein), 1, 0, 0};
  EXPECT_THROW(bad.validate(), Error);
  const FiberModel wrong_size{z4, FinAbGroup::cyclic(2), {{1}}, Character::trivial(FinAbGroup::cyclic(2)),
                              Character::trivial(z4), 1, 0, 0};
  EXPECT_THROW(wrong_size.validate(), Error);
}
