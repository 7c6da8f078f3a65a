#include <gtest/gtest.h>

#include <set>

#include "padic/ff.hpp"

using namespace padic;

namespace {

// Independent oracle: least element of multiplicative order q - 1 by repeated multiplication mod p.
std::int64_t least_generator_mod_p(std::int64_t p) {
  for (std::int64_t g = 1; g < p; ++g) {
    std::int64_t x = g, ord = 1;
    while (x != 1) {
      x = x * g % p;
      ++ord;
    }
    if (ord == p - 1) return g;
  }
  return -1;
}

// Oracle: schoolbook product of coefficient vectors, reduced by the monic modulus.
std::vector<std::int64_t> mulmod_schoolbook(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                            const std::vector<std::int64_t>& f, std::int64_t p) {
  std::vector<std::int64_t> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  const std::size_t deg = f.size() - 1;
  for (std::size_t top = prod.size(); top-- > deg;) {
    const std::int64_t c = prod[top];
    for (std::size_t k = 0; k <= deg; ++k) prod[top - deg + k] = ((prod[top - deg + k] - c * f[k]) % p + p) % p;
  }
  prod.resize(deg);
  return prod;
}

}  // namespace

TEST(FiniteField, PrimeFieldPrimitiveRootsAreLeastGenerators) {
  EXPECT_EQ(ff_primitive_root(ff_make_field(7, 1)).index(), 3u);
  EXPECT_EQ(ff_primitive_root(ff_make_field(5, 1)).index(), 2u);
  EXPECT_EQ(ff_primitive_root(ff_make_field(2, 1)).index(), 1u);
  for (std::int64_t p : {3, 11, 13, 17, 19, 23, 29, 31}) {
    EXPECT_EQ(static_cast<std::int64_t>(ff_primitive_root(ff_make_field(p, 1)).index()), least_generator_mod_p(p)) << p;
  }
}

TEST(FiniteField, NonPrimeCharacteristicRejected) {
  EXPECT_THROW(ff_make_field(4, 1), Error);
  try {
    ff_make_field(4, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPrime);
  }
}

TEST(FiniteField, QuadraticExtensionUsesLeastIrreducibleModulus) {
  const auto f = ff_make_field(3, 2);
  // x^2 + 1 is the first monic irreducible quadratic over F_3 in lexicographic order.
  EXPECT_EQ(f->modulus(), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(f->q(), 9);
}

TEST(FiniteField, RootsOfUnity) {
  auto idx = [](const std::vector<FFElement>& v) {
    std::vector<std::uint32_t> out;
    for (const auto& x : v) out.push_back(static_cast<std::uint32_t>(x.index()));
    return out;
  };
  EXPECT_EQ(idx(ff_nth_roots_of_unity(ff_make_field(5, 1), 2)), (std::vector<std::uint32_t>{1, 4}));
  EXPECT_EQ(idx(ff_nth_roots_of_unity(ff_make_field(7, 1), 3)), (std::vector<std::uint32_t>{1, 2, 4}));
  EXPECT_THROW(ff_nth_roots_of_unity(ff_make_field(5, 1), 5), Error);
}

TEST(FiniteField, DiscreteLogarithm) {
  const auto f = ff_make_field(7, 1);
  EXPECT_EQ(ff_dlog(FFElement(f, 3), FFElement(f, 6)), 3);
  EXPECT_EQ(ff_dlog(ff_primitive_root(f), FFElement(f, 1)), 0);
  EXPECT_THROW(ff_dlog(FFElement(f, 3), FFElement(f, 0)), Error);
}

TEST(FiniteField, FieldAxiomsHoldExhaustivelyOnSmallFields) {
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    const auto f = ff_make_field(p, m);
    for (std::int64_t a = 0; a < f->q(); ++a) {
      const FFElement x(f, static_cast<FieldSpec::Elem>(a));
      EXPECT_EQ(x + (-x), FFElement(f, 0));
      if (!x.is_zero()) {
        EXPECT_TRUE((x * x.inverse()).is_one());
        EXPECT_TRUE(x.pow(f->q() - 1).is_one());
      }
      for (std::int64_t b = 0; b < f->q(); ++b) {
        const FFElement y(f, static_cast<FieldSpec::Elem>(b));
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x + y).frobenius(), x.frobenius() + y.frobenius());
      }
    }
  }
}

TEST(FiniteField, MultiplicationTablesAgreeWithPolynomialArithmetic) {
  const auto f = ff_make_field(3, 3);
  for (std::int64_t a = 0; a < f->q(); a += 4)
    for (std::int64_t b = 0; b < f->q(); b += 3) {
      const auto pa = f->coeffs(static_cast<FieldSpec::Elem>(a));
      const auto pb = f->coeffs(static_cast<FieldSpec::Elem>(b));
      EXPECT_EQ(f->mul(static_cast<FieldSpec::Elem>(a), static_cast<FieldSpec::Elem>(b)),
                f->from_coeffs(mulmod_schoolbook(pa, pb, f->modulus(), 3)));
    }
}

TEST(FiniteField, EmbeddingIsARingHomomorphism) {
  const auto small = ff_make_field(3, 2);
  const auto big = ff_make_field(3, 4);
  const auto emb = ff_embedding(small, big);
  std::set<FieldSpec::Elem> image(emb.begin(), emb.end());
  EXPECT_EQ(image.size(), 9u);
  for (FieldSpec::Elem a = 0; a < 9; ++a)
    for (FieldSpec::Elem b = 0; b < 9; ++b) {
      EXPECT_EQ(emb[small->add(a, b)], big->add(emb[a], emb[b]));
      EXPECT_EQ(emb[small->mul(a, b)], big->mul(emb[a], emb[b]));
    }
}
