#include <gtest/gtest.h>

#include "padic/catalog.hpp"
#include "padic/stringy.hpp"

using namespace padic;

namespace {

GerbeData nontrivial_kappa_on_generator(const FinAbGroup& g) {
  // kappa_0 trivial, kappa_gamma the nontrivial character of Z/2.
  return {g, 2, {Character::trivial(g), Character(g, {1})}};
}

}  // namespace

TEST(Strata, SurfaceSingularityRows) {
  const auto t = strata_from_action(LinearCyclicAction(2, {1, 1}, 5));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].shift.fixed_dim, 2);
  EXPECT_EQ(t.rows[0].shift.F, 0);
  EXPECT_TRUE(t.rows[0].count.equal_at(QExp(Rational(25)), 5));
  EXPECT_EQ(t.rows[1].shift.fixed_dim, 0);
  EXPECT_EQ(t.rows[1].shift.F, 1);
  EXPECT_TRUE(t.rows[1].count.equal_at(QExp(Rational(1)), 5));
}

TEST(Strata, LineRowsAndTrivialGroup) {
  const auto t = strata_from_action(LinearCyclicAction(2, {1}, 5));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1].shift.F, Rational(1, 2));
  const auto triv = strata_from_action(LinearCyclicAction(1, {1, 1, 1}, 5));
  ASSERT_EQ(triv.rows.size(), 1u);
  EXPECT_TRUE(triv.rows[0].count.equal_at(QExp(Rational(125)), 5));
}

TEST(StringyCount, SurfaceSingularity) {
  const auto t = strata_from_action(LinearCyclicAction(2, {1, 1}, 5));
  EXPECT_EQ(stringy_count(t), QExp(Rational(30)));
  const EPoly expected = EPoly::xy_power(2) + EPoly::xy_power(1);
  EXPECT_EQ(stringy_epoly(t), expected);
  EXPECT_EQ(stringy_epoly(t).specialize(), QExp::power(2) + QExp::power(1));
}

TEST(StringyCount, NontrivialGerbeKillsTwistedSector) {
  const auto t = strata_from_action(LinearCyclicAction(2, {1, 1}, 5));
  const auto gerbe = nontrivial_kappa_on_generator(t.model.group);
  EXPECT_EQ(stringy_count(t, gerbe), QExp(Rational(25)));
  EXPECT_EQ(stringy_epoly(t, gerbe), EPoly::xy_power(2));
  EXPECT_EQ(stringy_count(attach_gerbe(t, gerbe)), QExp(Rational(25)));
}

TEST(StringyCount, TrivialGerbeIsUntwisted) {
  for (const auto& named : builtin_action_models()) {
    const auto t = strata_from_action(named.model);
    const auto triv = GerbeData::trivial(named.model.group);
    EXPECT_EQ(stringy_count(t, triv), stringy_count(t)) << named.name;
    EXPECT_EQ(stringy_epoly(t, triv), stringy_epoly(t)) << named.name;
  }
}

TEST(StringyCount, EPolynomialSpecializesToCount) {
  for (const auto& named : builtin_action_models()) {
    const auto t = strata_from_action(named.model);
    const std::int64_t q = named.model.field->q();
    EXPECT_TRUE(stringy_epoly(t).specialize().equal_at(stringy_count(t), q)) << named.name;
  }
}

TEST(StringyCount, BilinearGerbesOnKleinFourGroup) {
  const auto model = diagonal_model("Z/2 x Z/2", 5, {{1, 0}, {0, 1}});
  const auto t = strata_from_action(model);
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b)
      for (std::int64_t c = 0; c < 2; ++c)
        for (std::int64_t d = 0; d < 2; ++d) {
          const auto gerbe = GerbeData::from_form(model.group, 2, {{a, b}, {c, d}});
          EXPECT_TRUE(gerbe.is_bilinear());
          EXPECT_TRUE(stringy_epoly(t, gerbe).specialize().equal_at(stringy_count(t, gerbe), 5));
          for (std::int64_t k : {1, 3}) EXPECT_EQ(stringy_count(xi_reindex(t, k), gerbe), stringy_count(t, gerbe));
        }
}

TEST(StringyCount, IllDefinedFormRejected) {
  const auto g = FinAbGroup::parse("Z/2 x Z/4");
  // B_01 = 1 gives gamma_0 tau_1 / 4, which depends on the lift of gamma_0 from Z/2.
  EXPECT_THROW(GerbeData::from_form(g, 4, {{0, 1}, {0, 0}}), Error);
  EXPECT_NO_THROW(GerbeData::from_form(g, 4, {{0, 0}, {1, 0}}));
}

TEST(XiReindex, CubeRootsSwapShifts) {
  const auto t = strata_from_action(LinearCyclicAction(3, {1}, 7));
  EXPECT_EQ(t.rows[1].shift.F, Rational(1, 3));
  EXPECT_EQ(t.rows[2].shift.F, Rational(2, 3));
  const auto r = xi_reindex(t, 2);
  EXPECT_EQ(r.rows[1].shift.F, Rational(2, 3));
  EXPECT_EQ(r.rows[2].shift.F, Rational(1, 3));
  EXPECT_EQ(stringy_count(r), stringy_count(t));
  EXPECT_EQ(stringy_epoly(r), stringy_epoly(t));
  const auto id = xi_reindex(t, 1);
  for (std::size_t i = 0; i < t.rows.size(); ++i) EXPECT_EQ(id.rows[i].shift.F, t.rows[i].shift.F);
  EXPECT_THROW(xi_reindex(t, 3), Error);
}

TEST(XiReindex, InvariantsIndependentOfXiOnAllModels) {
  for (const auto& named : builtin_action_models()) {
    const auto t = strata_from_action(named.model);
    const std::int64_t n = named.model.group.order();
    for (std::int64_t c = 1; c < std::max<std::int64_t>(n, 2); ++c) {
      if (std::gcd(c, n) != 1) continue;
      const auto r = xi_reindex(t, c);
      EXPECT_EQ(stringy_count(r), stringy_count(t)) << named.name << " c=" << c;
      EXPECT_EQ(stringy_epoly(r), stringy_epoly(t)) << named.name << " c=" << c;
    }
  }
}
