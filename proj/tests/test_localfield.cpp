#include <gtest/gtest.h>

#include "padic/localfield.hpp"

using namespace padic;

namespace {

LocalFieldSpec local(std::int64_t q, std::int64_t prec = 8) { return {ff_field_of_size(q), prec}; }

}  // namespace

TEST(LaurentSeries, DivisionExamples) {
  const auto F = local(5, 8);
  EXPECT_EQ(ls_parse(F, "1*t^1 + 1*t^2 + O(t^8)") / ls_parse(F, "1*t^1 + O(t^8)"), ls_parse(F, "1 + 1*t + O(t^7)"));
  const auto geo = ls_parse(F, "1 + O(t^6)") / ls_parse(F, "1 - 1*t + O(t^6)");
  for (std::int64_t e = 0; e < 6; ++e) EXPECT_EQ(geo.coeff(e), 1u) << e;
  EXPECT_EQ(geo.precision(), 6);
}

TEST(LaurentSeries, ProductTracksPrecision) {
  const auto F = local(5);
  const auto a = ls_parse(F, "1*t^2 + O(t^3)");
  const auto b = ls_parse(F, "1*t^3 + O(t^4)");
  const auto c = a * b;
  EXPECT_EQ(c.valuation(), 5);
  EXPECT_EQ(c.precision(), 6);
}

TEST(LaurentSeries, UnitDecomposition) {
  const auto F = local(5);
  const auto d = ls_unit_decompose(ls_parse(F, "2*t^3 + 1*t^4 + O(t^8)"));
  EXPECT_EQ(d.v, 3);
  EXPECT_EQ(d.teich.index(), 2u);
  EXPECT_EQ(d.one_unit.coeff(0), 1u);
  EXPECT_EQ(d.one_unit.coeff(1), 3u);
  const auto one = ls_unit_decompose(ls_parse(F, "1 + O(t^8)"));
  EXPECT_EQ(one.v, 0);
  EXPECT_TRUE(one.teich.is_one());
  EXPECT_THROW(ls_unit_decompose(TruncatedLaurentSeries::zero(F.residue, 8)), Error);
}

TEST(LaurentSeries, SquareRootOfOnePlusT) {
  const auto F = local(3, 8);
  const auto x = ls_parse(F, "1 + 1*t + O(t^8)");
  const auto r = ls_nth_root(x, 2);
  EXPECT_EQ(r.coeff(0), 1u);
  EXPECT_EQ(r.coeff(1), 2u);
  EXPECT_EQ(r.coeff(2), 1u);
  EXPECT_TRUE((r * r).agrees_with(x));
}

TEST(LaurentSeries, RootObstructions) {
  const auto F = local(3);
  EXPECT_THROW(ls_nth_root(ls_parse(F, "1*t + O(t^8)"), 2), Error);
  EXPECT_THROW(ls_nth_root(ls_parse(F, "2 + O(t^8)"), 2), Error);
  EXPECT_THROW(ls_nth_root(ls_parse(F, "1 + O(t^8)"), 3), Error);
}

TEST(LaurentSeries, PowerClasses) {
  const auto F = local(3);
  EXPECT_EQ(ls_power_class(ls_parse(F, "1*t + O(t^8)"), 2), (PowerClass{1, 0}));
  EXPECT_EQ(ls_power_class(ls_parse(F, "2*t + O(t^8)"), 2), (PowerClass{1, 1}));
  EXPECT_EQ(ls_power_class(ls_parse(F, "1*t^2 + 1*t^3 + O(t^8)"), 2), (PowerClass{0, 0}));
}

TEST(LaurentSeries, RootsRoundTripOverSeveralFields) {
  for (std::int64_t q : {5, 7, 9, 13}) {
    const auto F = local(q, 10);
    const std::int64_t n = 2;
    for (std::uint32_t a = 1; a < static_cast<std::uint32_t>(q); ++a) {
      const TruncatedLaurentSeries x(F.residue, 2, {a, 1, 3 % static_cast<std::uint32_t>(q)}, 10);
      const auto cls = ls_power_class(x, n);
      if (cls.residue_class != 0) {
        EXPECT_THROW(ls_nth_root(x, n), Error);
        continue;
      }
      const auto r = ls_nth_root(x, n);
      EXPECT_TRUE(r.pow(n).agrees_with(x)) << "q=" << q << " a=" << a;
    }
  }
}

TEST(LaurentSeries, PowerClassIsMultiplicative) {
  const auto F = local(7, 8);
  const std::int64_t n = 3;
  for (std::uint32_t a = 1; a < 7; ++a)
    for (std::uint32_t b = 1; b < 7; ++b) {
      const TruncatedLaurentSeries x(F.residue, 1, {a, 2}, 8);
      const TruncatedLaurentSeries y(F.residue, 2, {b, 0, 5}, 9);
      const auto cx = ls_power_class(x, n), cy = ls_power_class(y, n), cxy = ls_power_class(x * y, n);
      EXPECT_EQ(cxy.valuation_class, mod(cx.valuation_class + cy.valuation_class, n));
      EXPECT_EQ(cxy.residue_class, mod(cx.residue_class + cy.residue_class, 3));
    }
}
