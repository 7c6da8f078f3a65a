#include <gtest/gtest.h>

#include "padic/catalog.hpp"
#include "padic/orbifold.hpp"
#include "padic/stringy.hpp"

using namespace padic;

namespace {

// Brute-force oracle: walk every x in F_q[t]/t^k, keep the classes with v(x) < k,
// v(x) >= e, v(x) = e mod d and a d-th power leading coefficient, and add
// q^{-k} |x|^{(1-d)/d} for each.
QExp brute_block_partial_sum(std::int64_t d, std::int64_t e, const Field& f, std::int64_t k) {
  const std::int64_t q = f->q();
  std::int64_t total_classes = 1;
  for (std::int64_t i = 0; i < k; ++i) total_classes *= q;
  std::vector<std::int64_t> members_by_v(static_cast<std::size_t>(k), 0);
  for (std::int64_t code = 1; code < total_classes; ++code) {
    std::int64_t c = code, v = 0;
    while (c % q == 0) {
      c /= q;
      ++v;
    }
    const auto lead = static_cast<FieldSpec::Elem>(c % q);
    if (v < e || (v - e) % d != 0) continue;
    if (f->pow(lead, (q - 1) / d) != 1) continue;
    ++members_by_v[static_cast<std::size_t>(v)];
  }
  QExp sum;
  for (std::int64_t v = 0; v < k; ++v)
    if (members_by_v[static_cast<std::size_t>(v)] > 0)
      sum += QExp::monomial(Rational(members_by_v[static_cast<std::size_t>(v)]), Rational(-k) + Rational(v * (d - 1), d));
  return sum.normalize(q);
}

// Stringy oracle: sum over gamma of q^{dim V^gamma + F(gamma)}, since [A^m/Gamma](F_q) has q^m points.
QExp stringy_oracle(std::int64_t d, const std::vector<std::int64_t>& weights, std::int64_t q) {
  QExp s;
  for (std::int64_t j = 0; j < d; ++j) {
    Rational F = 0;
    std::int64_t fixed = 0;
    for (auto e : weights) {
      const std::int64_t r = (j * e) % d;
      if (r == 0) ++fixed;
      F += Rational(r, d);
    }
    s += QExp::power(F + fixed);
  }
  return s.normalize(q);
}

}  // namespace

TEST(Shifts, CyclicExamples) {
  const auto s = shifts(LinearCyclicAction(2, {1, 1}, 5));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].F, 0);
  EXPECT_EQ(s[0].w, 2);
  EXPECT_EQ(s[0].fixed_dim, 2);
  EXPECT_EQ(s[1].F, 1);
  EXPECT_EQ(s[1].w, 1);
  EXPECT_EQ(s[1].fixed_dim, 0);
  const auto t = shifts(LinearCyclicAction(3, {1, 2}, 7));
  EXPECT_EQ(t[1].F, 1);
  EXPECT_EQ(t[2].F, 1);
}

TEST(Shifts, InverseShiftsSumToCodimension) {
  for (const auto& named : builtin_action_models()) {
    const auto& g = named.model.group;
    for (const auto& rec : shifts(named.model)) {
      const auto inv = shift_of(named.model, g.neg(rec.element));
      EXPECT_EQ(rec.F + inv.F, Rational(static_cast<std::int64_t>(named.model.dim()) - rec.fixed_dim)) << named.name;
      EXPECT_EQ(inv.fixed_dim, rec.fixed_dim);
    }
  }
}

TEST(Specialization, OneDimensionalExamples) {
  const LocalFieldSpec F{ff_field_of_size(3), 8};
  const auto s = specialize_1d(ls_parse(F, "1*t + O(t^8)"), 2);
  EXPECT_EQ(s.cls.ram, GroupElement{1});
  EXPECT_EQ(s.cls.unr, GroupElement{0});
  EXPECT_TRUE(s.at_origin);
  const auto u = specialize_1d(ls_parse(F, "1 + 1*t + O(t^8)"), 2);
  EXPECT_TRUE(u.cls.is_unramified());
  EXPECT_FALSE(u.at_origin);
  EXPECT_THROW(specialize_1d(TruncatedLaurentSeries::zero(F.residue, 8), 2), Error);
}

TEST(BlockVolume, PartialSumsMatchBruteForceEnumeration) {
  struct Case {
    std::int64_t q, d, e, k;
  };
  for (const auto& c : std::vector<Case>{{3, 2, 1, 6}, {3, 2, 2, 7}, {5, 2, 1, 5}, {5, 4, 3, 5}, {7, 3, 1, 5}, {7, 3, 2, 5},
                                         {4, 3, 2, 6}, {9, 4, 1, 4}, {5, 1, 1, 5}}) {
    const auto f = ff_field_of_size(c.q);
    EXPECT_EQ(block_partial_sum(c.d, c.e, f, c.k), brute_block_partial_sum(c.d, c.e, f, c.k))
        << "q=" << c.q << " d=" << c.d << " e=" << c.e << " k=" << c.k;
  }
}

TEST(BlockVolume, ClosedFormValues) {
  EXPECT_EQ(orb_fiber_volume_1d(2, 1, 5, 8), QExp::monomial(Rational(1, 2), Rational(-1, 2)).normalize(5));
  EXPECT_EQ(orb_fiber_volume_1d(2, 2, 3, 8), QExp(Rational(1, 6)));
  // Trivial group: the block is t O, of volume q^{-1}.
  EXPECT_EQ(orb_fiber_volume_1d(1, 1, 5, 5), QExp(Rational(1, 5)));
  for (std::int64_t q : {5, 7, 9, 13})
    for (std::int64_t d : {1, 2, 3, 4, 6}) {
      if ((q - 1) % d != 0) continue;
      for (std::int64_t e = 1; e <= d; ++e) {
        EXPECT_EQ(orb_fiber_volume_1d(d, e, q, block_precision_threshold(d, e)), block_closed_form(d, e, q))
            << q << " " << d << " " << e;
      }
    }
}

TEST(BlockVolume, BelowThresholdRejected) {
  try {
    orb_fiber_volume_1d(2, 1, 5, 3);
    FAIL() << "expected PrecisionTooLow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PrecisionTooLow);
  }
}

TEST(FiberVolume, SectorExamples) {
  const LinearCyclicAction a2(2, {1, 1}, 5);
  const auto g = FinAbGroup::cyclic(2);
  EXPECT_EQ(orb_fiber_volume(a2, {{g, {0}, {1}}, {}}, 8), QExp(Rational(1, 10)));
  const LinearCyclicAction a3(3, {1, 2}, 7);
  const auto g3 = FinAbGroup::cyclic(3);
  EXPECT_EQ(orb_fiber_volume(a3, {{g3, {0}, {1}}, {}}, 9), QExp(Rational(1, 21)));
  // Identity sector at a free-locus point: one residue polydisc.
  const auto big = ff_make_field(5, 2);
  const auto emb = ff_embedding(ff_field_of_size(5), big);
  EXPECT_EQ(orb_fiber_volume(a2, {{g, {0}, {0}}, {{emb[1], emb[2]}}}, 8), QExp(Rational(1, 25)));
}

TEST(FiberVolume, OffStratumPointRejected) {
  const LinearCyclicAction a2(2, {1, 1}, 5);
  const auto g = FinAbGroup::cyclic(2);
  EXPECT_THROW(orb_fiber_volume(a2, {{g, {0}, {1}}, {{1, 0}}}, 8), Error);
}

TEST(TotalVolume, Examples) {
  EXPECT_EQ(orb_total_volume(LinearCyclicAction(2, {1, 1}, 5), 8), QExp(Rational(6, 5)));
  EXPECT_EQ(orb_total_volume(LinearCyclicAction(1, {1}, 5), 5), QExp(Rational(1)));
  EXPECT_EQ(orb_total_volume(LinearCyclicAction(2, {1}, 9), 8), QExp(Rational(4, 3)));
}

TEST(TotalVolume, CyclicActionsMatchStringyOracle) {
  struct Case {
    std::int64_t d;
    std::vector<std::int64_t> w;
    std::int64_t q;
  };
  for (const auto& c : std::vector<Case>{{2, {1, 1}, 3}, {3, {1, 2}, 7}, {3, {1, 1}, 7}, {4, {1, 3}, 5}, {4, {1, 1, 2}, 5},
                                         {2, {1, 1, 1}, 5}, {6, {1, 5}, 7}}) {
    const LinearCyclicAction act(c.d, c.w, c.q);
    const auto model = act.to_diagonal();
    const QExp oracle = (stringy_oracle(c.d, c.w, c.q) * QExp::power(Rational(-static_cast<std::int64_t>(c.w.size()))))
                            .normalize(c.q);
    EXPECT_TRUE(orb_total_volume(act, orb_precision_threshold(model)).equal_at(oracle, c.q)) << "d=" << c.d;
  }
}

TEST(TotalVolume, IndependentOfPrecisionAboveThreshold) {
  const auto model = LinearCyclicAction(3, {1, 2}, 7).to_diagonal();
  const auto k0 = orb_precision_threshold(model);
  EXPECT_EQ(orb_total_volume(model, k0), orb_total_volume(model, k0 + 2));
}

TEST(Weil, CircleMatchesBruteForceLift) {
  const auto model = weil_parse("x,y: x^2 + y^2 - 1");
  const auto r = weil_report(model, 5, 3);
  // Oracle: enumerate F_5[t]/t^2 points of x^2 + y^2 = 1 directly.
  std::int64_t lifts = 0, base = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d) {
          const bool c0 = (a * a + c * c - 1) % 5 == 0;
          const bool c1 = (2 * a * b + 2 * c * d) % 5 == 0;
          if (c0 && c1) ++lifts;
          if (c0 && b == 0 && d == 0) ++base;
        }
  EXPECT_EQ(r.fq_count, base);
  EXPECT_EQ(r.counts[1], BigInt(lifts));
  EXPECT_EQ(r.formula, Rational(base, 5));
  EXPECT_TRUE(r.stable());
}

TEST(Weil, LineAndCusp) {
  EXPECT_EQ(weil_volume(weil_parse("x:"), 5, 3), 1);
  try {
    weil_report(weil_parse("x,y: y^2 - x^3"), 5, 2);
    FAIL() << "expected SingularReduction";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularReduction);
  }
}

TEST(Weil, BuiltinModelsAreStable) {
  for (const auto& m : builtin_weil_models()) EXPECT_TRUE(weil_report(weil_parse(m.text), m.q, 3).stable()) << m.text;
}
