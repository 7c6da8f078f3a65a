#include <gtest/gtest.h>

#include <set>

#include "padic/catalog.hpp"
#include "padic/galois.hpp"

using namespace padic;

TEST(AbelianGroup, ParseAndInvariantFactors) {
  const auto g = FinAbGroup::parse("Z/2 x Z/4");
  EXPECT_EQ(g.order(), 8);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_EQ(FinAbGroup::parse("1").order(), 1);
  EXPECT_THROW(FinAbGroup::parse("Z/x"), Error);
  for (std::int64_t i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.element_at(i)), i);
}

TEST(Characters, OrthogonalityOverSmallGroups) {
  for (const auto& g : all_abelian_groups(12)) {
    for (const auto& chi : all_characters(g)) {
      const Cyclotomic s = character_sum(chi);
      EXPECT_EQ(s.is_zero(), !chi.is_trivial()) << g.to_string();
      if (chi.is_trivial()) {
        EXPECT_EQ(s, Cyclotomic::rational(Rational(g.order())));
      }
    }
  }
}

TEST(Characters, ValuesAreHomomorphic) {
  const auto g = FinAbGroup::parse("Z/2 x Z/6");
  for (const auto& chi : all_characters(g))
    for (const auto& a : g.elements())
      for (const auto& b : g.elements()) EXPECT_EQ(chi(g.add(a, b)), frac(chi(a) + chi(b)));
}

TEST(TorsorClasses, EnumerationSizes) {
  const LocalFieldSpec F3{ff_field_of_size(3), 8};
  EXPECT_EQ(h1_enumerate(FinAbGroup::cyclic(2), F3).size(), 4u);
  EXPECT_EQ(h1_enumerate(FinAbGroup::parse("1"), F3).size(), 1u);
  const LocalFieldSpec F4{ff_field_of_size(4), 8};
  EXPECT_EQ(h1_enumerate(FinAbGroup::cyclic(3), F4).size(), 9u);
  const LocalFieldSpec F5{ff_field_of_size(5), 8};
  try {
    h1_enumerate(FinAbGroup::cyclic(3), F5);
    FAIL() << "expected RootsOfUnityMissing";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RootsOfUnityMissing);
  }
}

TEST(TorsorClasses, PairingValues) {
  const auto g = FinAbGroup::cyclic(2);
  EXPECT_EQ(h1_pairing({g, {1}, {0}}, {g, {0}, {1}}), Rational(1, 2));
}

TEST(TorsorClasses, PairingIsSkewBilinearAndNondegenerate) {
  for (const auto& g : {FinAbGroup::cyclic(2), FinAbGroup::cyclic(4), FinAbGroup::parse("Z/2 x Z/2")}) {
    const LocalFieldSpec F{ff_field_of_size(13), 8};
    const auto cls = h1_enumerate(g, F);
    for (const auto& a : cls) {
      EXPECT_EQ(h1_pairing(a, a), 0);
      bool nondegenerate = a == TorsorClass{g, g.identity(), g.identity()};
      for (const auto& b : cls) {
        EXPECT_EQ(h1_pairing(a, b), frac(-h1_pairing(b, a)));
        if (h1_pairing(a, b) != 0) nondegenerate = true;
        for (const auto& c : cls) EXPECT_EQ(h1_pairing(h1_add(a, b), c), frac(h1_pairing(a, c) + h1_pairing(b, c)));
      }
      EXPECT_TRUE(nondegenerate);
    }
  }
}

TEST(TorsorClasses, KummerClasses) {
  const LocalFieldSpec F{ff_field_of_size(3), 8};
  const auto g = FinAbGroup::cyclic(2);
  EXPECT_EQ(kummer_class(ls_parse(F, "1*t + O(t^8)"), 2), (TorsorClass{g, {0}, {1}}));
  EXPECT_EQ(kummer_class(ls_parse(F, "2 + O(t^8)"), 2), (TorsorClass{g, {1}, {0}}));
  EXPECT_EQ(kummer_class(ls_parse(F, "1 + 1*t + O(t^8)"), 2), (TorsorClass{g, {0}, {0}}));
}

TEST(Twisting, NegationOnTheLine) {
  const LinearDiagonalModel m = LinearCyclicAction(2, {1}, 5).to_diagonal();
  const GammaVarietyAction a{m};
  EXPECT_EQ(twist_pointcount(a, {1}, 1), BigInt(5));
  EXPECT_EQ(twist_pointcount(a, {0}, 2), BigInt(25));
  const auto b = burnside_check(a);
  EXPECT_EQ(b.groupoid_count, 5);
  EXPECT_EQ(b.twist_average, 5);
}

TEST(Twisting, FreeSwap) {
  const GammaVarietyAction swap{PointSetModel(FinAbGroup::cyclic(2), {{1, 0}}, {0, 1})};
  EXPECT_EQ(twist_pointcount(swap, {1}, 1), BigInt(0));
  EXPECT_EQ(twist_pointcount(swap, {0}, 1), BigInt(2));
  const auto b = burnside_check(swap);
  EXPECT_EQ(b.groupoid_count, 1);
  EXPECT_EQ(b.twist_average, 1);
}

TEST(Twisting, ClosedFormsAgreeWithEnumerationOnAllToyModels) {
  for (const auto& toy : builtin_toy_models()) {
    const auto& g = action_group(toy.action);
    for (const auto& tau : g.elements())
      for (std::int64_t m = 1; m <= 3; ++m) {
        EXPECT_EQ(twist_pointcount(toy.action, tau, m), twist_pointcount_by_enumeration(toy.action, tau, m))
            << toy.name << " m=" << m;
      }
    EXPECT_TRUE(burnside_check(toy.action).equal()) << toy.name;
  }
}

TEST(Twisting, BurnsideHoldsOnLinearModelsAsPointModels) {
  int checked = 0;
  for (const auto& named : builtin_action_models()) {
    try {
      const GammaVarietyAction pts{to_point_model(named.model)};
      EXPECT_TRUE(burnside_check(pts).equal()) << named.name;
      ++checked;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ModelTooLarge) << named.name;
    }
  }
  EXPECT_GE(checked, 5);
}

TEST(Twisting, NoncommutingFrobeniusRejected) {
  // Z/3 rotation of three points against a transposition.
  EXPECT_THROW(PointSetModel(FinAbGroup::cyclic(3), {{1, 2, 0}}, {1, 0, 2}), Error);
}
