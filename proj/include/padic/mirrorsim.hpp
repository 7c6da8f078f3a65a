#pragma once

// Finite model of a dual pair of abstract Hitchin systems: per base point a pair
// of finite abelian groups of equal order with an isogeny-like map, torsor classes
// modelled as characters, and the fibrewise and global integral identities.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/duality.hpp"
#include "padic/error.hpp"
#include "padic/galois.hpp"

namespace padic {

struct FiberModel {
  FinAbGroup G, H;
  std::vector<GroupElement> phi;  // images of the generators of G
  Character t1;                   // on H
  Character t2;                   // on G
  Rational N = 1;
  Rational xi1 = 0, xi2 = 0;  // constants of the f-functions, in Q/Z

  void validate() const {
    require(G.order() == H.order(), Errc::InvalidArgument, "|G| and |H| differ");
    require(phi.size() == G.rank(), Errc::InvalidArgument, "one image per generator of G expected");
    for (std::size_t i = 0; i < phi.size(); ++i)
      require(H.is_identity(H.scale(H.reduce(phi[i]), G.factors()[i])), Errc::InvalidArgument,
              "phi is not a homomorphism");
    require(t1.owner() == H, Errc::OwnerMismatch, "t1 must be a character of H");
    require(t2.owner() == G, Errc::OwnerMismatch, "t2 must be a character of G");
    require(N > 0, Errc::InvalidArgument, "normalization must be positive");
    require(!t1.is_trivial() || frac(xi1) == 0, Errc::InvalidArgument, "xi1 must be 1 when t1 is trivial");
    require(!t2.is_trivial() || frac(xi2) == 0, Errc::InvalidArgument, "xi2 must be 1 when t2 is trivial");
  }

  GroupElement apply_phi(const GroupElement& g) const {
    GroupElement h = H.identity();
    for (std::size_t i = 0; i < g.size(); ++i) h = H.add(h, H.scale(phi[i], g[i]));
    return h;
  }
};

struct DualPairModel {
  std::vector<FiberModel> fibers;
  Rational N = 1;
};

struct FiberIntegrals {
  Rational I1, I2;
  int case_label = 0;  // 1: both nontrivial, 2: only t1, 3: only t2, 4: neither
};

namespace detail {

/// (1/N) sum_{a in shifted group} xi * exp(2 pi i t(a + shift)).
inline Rational f_integral(const Character& t, const Rational& xi, const Rational& N, const GroupElement* shift = nullptr) {
  const FinAbGroup& g = t.owner();
  Cyclotomic s;
  if (shift == nullptr) {
    s = character_sum(t, xi);
  } else {
    std::vector<std::int64_t> hist(static_cast<std::size_t>(g.exponent()), 0);
    for (const auto& a : g.elements()) ++hist[static_cast<std::size_t>(t.numerator_over_exponent(g.add(a, *shift)))];
    s = Cyclotomic::from_histogram(g.exponent(), std::move(hist)) * Cyclotomic::from_q_mod_z(xi);
  }
  return s.to_rational() / N;
}

}  // namespace detail

/// M1-fiber nonempty iff t1 trivial; M2-fiber nonempty iff t2 trivial.
inline FiberIntegrals fiber_integrals(const FiberModel& f) {
  f.validate();
  FiberIntegrals r;
  const bool n1 = !f.t1.is_trivial(), n2 = !f.t2.is_trivial();
  r.case_label = n1 && n2 ? 1 : n1 ? 2 : n2 ? 3 : 4;
  r.I1 = n1 ? Rational(0) : detail::f_integral(f.t2, f.xi2, f.N);
  r.I2 = n2 ? Rational(0) : detail::f_integral(f.t1, f.xi1, f.N);
  return r;
}

/// Same integrals with the summation domains translated by g0 in G and h0 in H.
inline FiberIntegrals fiber_integrals_translated(const FiberModel& f, const GroupElement& g0, const GroupElement& h0) {
  f.validate();
  FiberIntegrals r = fiber_integrals(f);
  const auto gs = f.G.reduce(g0), hs = f.H.reduce(h0);
  if (f.t1.is_trivial()) r.I1 = detail::f_integral(f.t2, f.xi2, f.N, &gs);
  if (f.t2.is_trivial()) r.I2 = detail::f_integral(f.t1, f.xi1, f.N, &hs);
  return r;
}

struct KernelBookkeeping {
  std::int64_t image = 0, kernel = 0;
  bool pass = false;  // |H| / |phi(G)| = |ker phi|
};

inline KernelBookkeeping kernel_bookkeeping(const FiberModel& f) {
  std::set<GroupElement> image;
  KernelBookkeeping k;
  for (const auto& g : f.G.elements()) {
    const auto h = f.apply_phi(g);
    image.insert(h);
    if (f.H.is_identity(h)) ++k.kernel;
  }
  k.image = static_cast<std::int64_t>(image.size());
  k.pass = f.H.order() == k.image * k.kernel;
  return k;
}

struct GlobalIdentity {
  Rational sum1, sum2;
  std::vector<FiberIntegrals> fibers;
  bool pass = false;
};

inline GlobalIdentity global_identity(const DualPairModel& model) {
  require(!model.fibers.empty(), Errc::InvalidArgument, "model has no fibers");
  GlobalIdentity g;
  g.sum1 = 0;
  g.sum2 = 0;
  for (const auto& f : model.fibers) {
    g.fibers.push_back(fiber_integrals(f));
    g.sum1 += g.fibers.back().I1;
    g.sum2 += g.fibers.back().I2;
  }
  g.pass = g.sum1 == g.sum2;
  return g;
}

/// Uniform character of g from the raw generator output; seed 0 gives the trivial character.
inline Character seeded_character(const FinAbGroup& g, std::mt19937_64& rng, bool trivial) {
  GroupElement ex(g.rank(), 0);
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const auto raw = rng();
    ex[i] = trivial ? 0 : static_cast<std::int64_t>(raw % static_cast<std::uint64_t>(g.factors()[i]));
  }
  return {g, ex};
}

/// base_size fibers with G = H = E(F_q) and phi = [n]; characters drawn from seed.
inline DualPairModel make_model_from_curve(const EllipticCurveModel& E, std::int64_t n, std::int64_t base_size,
                                           std::uint64_t seed) {
  require(n % E.field()->p() != 0, Errc::PDividesN, "p divides n");
  require(base_size >= 1, Errc::InvalidArgument, "base size must be positive");
  const FinAbGroup g = ec_group(E);
  DualPairModel model;
  model.N = Rational(E.q());
  std::vector<GroupElement> phi;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    GroupElement e = g.identity();
    e[i] = n;
    phi.push_back(g.reduce(e));
  }
  std::mt19937_64 rng(seed);
  for (std::int64_t a = 0; a < base_size; ++a) {
    FiberModel f{g, g, phi, {}, {}, model.N, 0, 0};
    f.t1 = seeded_character(g, rng, seed == 0);
    f.t2 = seeded_character(g, rng, seed == 0);
    model.fibers.push_back(std::move(f));
  }
  return model;
}

/// Whether t2 is trivial on ker(phi), i.e. t2 lies in the image of the dual map.
inline bool t2_trivial_on_kernel(const FiberModel& f) {
  for (const auto& g : f.G.elements())
    if (f.H.is_identity(f.apply_phi(g)) && f.t2(g) != 0) return false;
  return true;
}

}  // namespace padic
