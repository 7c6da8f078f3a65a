#pragma once

// Elliptic curves over F_q as sources of unramified Galois modules; the local
// Euler characteristic formula and the self-dual isogeny identity.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/error.hpp"
#include "padic/ff.hpp"
#include "padic/galois.hpp"

namespace padic {

struct ECPoint {
  bool inf = true;
  FieldSpec::Elem x = 0, y = 0;
  static ECPoint at(FieldSpec::Elem x, FieldSpec::Elem y) { return {false, x, y}; }
  auto operator<=>(const ECPoint&) const = default;
};

/// Weierstrass arithmetic over one concrete field.
class CurveArith {
 public:
  using Elem = FieldSpec::Elem;

  CurveArith(Field field, std::array<Elem, 5> a) : f_(std::move(field)), a_(a) {}

  const Field& field() const { return f_; }

  bool contains(const ECPoint& P) const {
    if (P.inf) return true;
    const auto& f = *f_;
    const Elem lhs = f.add(f.mul(P.y, P.y), f.mul(f.add(f.mul(a_[0], P.x), a_[2]), P.y));
    return lhs == rhs(P.x);
  }

  ECPoint neg(const ECPoint& P) const {
    if (P.inf) return P;
    const auto& f = *f_;
    return ECPoint::at(P.x, f.sub(f.neg(P.y), f.add(f.mul(a_[0], P.x), a_[2])));
  }

  ECPoint add(const ECPoint& P, const ECPoint& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const auto& f = *f_;
    Elem lambda;
    if (P.x == Q.x) {
      if (Q == neg(P)) return {};
      const Elem num = f.sub(f.add(f.add(f.mul(f.from_int(3), f.mul(P.x, P.x)), f.mul(f.mul(f.from_int(2), a_[1]), P.x)), a_[3]),
                             f.mul(a_[0], P.y));
      const Elem den = f.add(f.add(f.mul(f.from_int(2), P.y), f.mul(a_[0], P.x)), a_[2]);
      lambda = f.div(num, den);
    } else {
      lambda = f.div(f.sub(Q.y, P.y), f.sub(Q.x, P.x));
    }
    const Elem nu = f.sub(P.y, f.mul(lambda, P.x));
    const Elem x3 = f.sub(f.sub(f.sub(f.add(f.mul(lambda, lambda), f.mul(a_[0], lambda)), a_[1]), P.x), Q.x);
    const Elem y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a_[0]), x3)), nu), a_[2]);
    return ECPoint::at(x3, y3);
  }

  ECPoint mul(ECPoint P, std::int64_t n) const {
    if (n < 0) {
      P = neg(P);
      n = -n;
    }
    ECPoint acc;
    while (n > 0) {
      if (n & 1) acc = add(acc, P);
      P = add(P, P);
      n >>= 1;
    }
    return acc;
  }

  /// Number of affine points with the given x-coordinate.
  int count_over(Elem x) const {
    const auto& f = *f_;
    const Elem b = f.add(f.mul(a_[0], x), a_[2]);
    const Elem c = rhs(x);
    if (f.p() != 2) {
      const Elem disc = f.add(f.mul(b, b), f.mul(f.from_int(4), c));
      if (disc == 0) return 1;
      return f.log(disc) % 2 == 0 ? 2 : 0;
    }
    if (b == 0) return 1;
    return trace_f2(f.div(c, f.mul(b, b))) == 0 ? 2 : 0;
  }

  /// Calls fn on every point (infinity first, then by x and y) until fn returns false.
  template <class Fn>
  void for_each_point(Fn&& fn) const {
    const auto& f = *f_;
    if (!fn(ECPoint{})) return;
    std::vector<std::int64_t> as_root;  // w with w^2 + w = z, indexed by z
    if (f.p() == 2) {
      as_root.assign(static_cast<std::size_t>(f.q()), -1);
      for (std::int64_t w = 0; w < f.q(); ++w) {
        const auto e = static_cast<Elem>(w);
        as_root[f.add(f.mul(e, e), e)] = w;
      }
    }
    const Elem half = f.p() == 2 ? 0 : f.inv(f.from_int(2));
    for (std::int64_t xi = 0; xi < f.q(); ++xi) {
      const auto x = static_cast<Elem>(xi);
      const Elem b = f.add(f.mul(a_[0], x), a_[2]);
      const Elem c = rhs(x);
      Elem ys[2];
      int count = 0;
      if (f.p() != 2) {
        const Elem disc = f.add(f.mul(b, b), f.mul(f.from_int(4), c));
        if (disc == 0) {
          ys[count++] = f.mul(f.neg(b), half);
        } else if (f.log(disc) % 2 == 0) {
          const Elem s = f.exp(f.log(disc) / 2);
          ys[count++] = f.mul(f.add(f.neg(b), s), half);
          ys[count++] = f.mul(f.sub(f.neg(b), s), half);
        }
      } else if (b == 0) {
        ys[count++] = f.pow(c, f.q() / 2);
      } else {
        const auto w = as_root[f.div(c, f.mul(b, b))];
        if (w >= 0) {
          ys[count++] = f.mul(b, static_cast<Elem>(w));
          ys[count++] = f.mul(b, f.add(static_cast<Elem>(w), 1));
        }
      }
      if (count == 2 && ys[1] < ys[0]) std::swap(ys[0], ys[1]);
      for (int i = 0; i < count; ++i)
        if (!fn(ECPoint::at(x, ys[i]))) return;
    }
  }

  std::vector<ECPoint> points() const {
    std::vector<ECPoint> out;
    for_each_point([&out](const ECPoint& P) {
      out.push_back(P);
      return true;
    });
    return out;
  }

 private:
  Elem rhs(Elem x) const {
    const auto& f = *f_;
    return f.add(f.mul(f.add(f.mul(f.add(x, a_[1]), x), a_[3]), x), a_[4]);
  }
  Elem trace_f2(Elem z) const {
    const auto& f = *f_;
    Elem acc = 0, cur = z;
    for (int i = 0; i < f.m(); ++i) {
      acc = f.add(acc, cur);
      cur = f.mul(cur, cur);
    }
    return acc;
  }

  Field f_;
  std::array<Elem, 5> a_;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with nonzero discriminant.
class EllipticCurveModel {
 public:
  using Elem = FieldSpec::Elem;

  EllipticCurveModel(Field field, std::array<std::int64_t, 5> coeffs) : field_(std::move(field)) {
    for (std::size_t i = 0; i < 5; ++i) {
      require(coeffs[i] >= 0 && coeffs[i] < field_->q(), Errc::InvalidArgument, "coefficient index out of range");
      a_[i] = static_cast<Elem>(coeffs[i]);
    }
    require(discriminant() != 0, Errc::SingularReduction, "curve is singular");
  }

  const Field& field() const { return field_; }
  const std::array<Elem, 5>& coeffs() const { return a_; }
  std::int64_t q() const { return field_->q(); }

  Elem discriminant() const {
    const auto& f = *field_;
    auto c = [&f](std::int64_t n) { return f.from_int(n); };
    const auto [a1, a2, a3, a4, a6] = a_;
    const Elem b2 = f.add(f.mul(a1, a1), f.mul(c(4), a2));
    const Elem b4 = f.add(f.mul(c(2), a4), f.mul(a1, a3));
    const Elem b6 = f.add(f.mul(a3, a3), f.mul(c(4), a6));
    const Elem b8 = f.sub(f.add(f.sub(f.add(f.mul(f.mul(a1, a1), a6), f.mul(f.mul(c(4), a2), a6)), f.mul(f.mul(a1, a3), a4)),
                                f.mul(a2, f.mul(a3, a3))),
                          f.mul(a4, a4));
    Elem d = f.neg(f.mul(f.mul(b2, b2), b8));
    d = f.sub(d, f.mul(c(8), f.pow(b4, 3)));
    d = f.sub(d, f.mul(c(27), f.mul(b6, b6)));
    d = f.add(d, f.mul(c(9), f.mul(f.mul(b2, b4), b6)));
    return d;
  }

  /// Arithmetic over F_{q^m}.
  CurveArith over(std::int64_t m) const {
    if (m == 1) return {field_, a_};
    const Field big = ff_make_field(field_->p(), static_cast<int>(field_->m() * m));
    const auto embed = ff_embedding(field_, big);
    std::array<Elem, 5> b{};
    for (std::size_t i = 0; i < 5; ++i) b[i] = embed[a_[i]];
    return {big, b};
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(a_[i]);
    return s + "] over F_" + std::to_string(q());
  }

 private:
  Field field_;
  std::array<Elem, 5> a_{};
};

inline void check_extension_scale(const EllipticCurveModel& E, std::int64_t m) {
  long double size = 1;
  for (std::int64_t i = 0; i < m; ++i) size *= static_cast<long double>(E.q());
  require(m >= 1 && size <= static_cast<long double>(kMaxFieldSize), Errc::TooLarge, "q^m exceeds 10^6");
}

/// Exhaustive projective count of E(F_{q^m}).
inline std::int64_t ec_count(const EllipticCurveModel& E, std::int64_t m = 1) {
  check_extension_scale(E, m);
  const auto arith = E.over(m);
  std::int64_t total = 1;
  for (std::int64_t x = 0; x < arith.field()->q(); ++x) total += arith.count_over(static_cast<FieldSpec::Elem>(x));
  return total;
}

/// #E(F_{q^m}) from a = q + 1 - #E(F_q) via s_m = a s_{m-1} - q s_{m-2}.
inline BigInt ec_count_from_trace(std::int64_t q, std::int64_t count1, std::int64_t m) {
  const BigInt a = BigInt(q + 1 - count1);
  BigInt s_prev = 2, s = a;  // alpha^m + beta^m
  for (std::int64_t i = 1; i < m; ++i) {
    BigInt next = a * s - BigInt(q) * s_prev;
    s_prev = s;
    s = next;
  }
  return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(m)) + 1 - s;
}

inline std::int64_t point_order(const CurveArith& arith, const ECPoint& P, std::int64_t group_order) {
  std::int64_t ord = group_order;
  for (auto l : prime_factors(group_order))
    while (ord % l == 0 && arith.mul(P, ord / l).inf) ord /= l;
  return ord;
}

/// Invariant factors of E(F_q).
inline FinAbGroup ec_group(const EllipticCurveModel& E) {
  const auto arith = E.over(1);
  const auto pts = arith.points();
  const auto n = static_cast<std::int64_t>(pts.size());
  std::int64_t exponent = 1;
  for (const auto& P : pts) exponent = std::lcm(exponent, point_order(arith, P, n));
  const std::int64_t d1 = n / exponent;
  std::vector<std::int64_t> factors;
  if (d1 > 1) factors.push_back(d1);
  if (exponent > 1) factors.push_back(exponent);
  return FinAbGroup(std::move(factors));
}

using ModMatrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline ModMatrix mat_identity(std::size_t r) {
  ModMatrix m(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

inline std::int64_t mat_det(const ModMatrix& m, std::int64_t n) {
  const std::size_t r = m.size();
  if (r == 0) return mod(1, n);
  if (r == 1) return mod(m[0][0], n);
  std::int64_t det = 0;
  for (std::size_t c = 0; c < r; ++c) {
    ModMatrix minor;
    for (std::size_t i = 1; i < r; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < r; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    const std::int64_t term = mod(m[0][c] * mat_det(minor, n), n);
    det = mod(det + (c % 2 == 0 ? term : -term), n);
  }
  return det;
}

inline ModMatrix mat_inverse(const ModMatrix& m, std::int64_t n) {
  const std::size_t r = m.size();
  const std::int64_t det_inv = inv_mod(mat_det(m, n), n);
  ModMatrix inv(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      ModMatrix minor;
      for (std::size_t a = 0; a < r; ++a) {
        if (a == j) continue;
        std::vector<std::int64_t> row;
        for (std::size_t b = 0; b < r; ++b)
          if (b != i) row.push_back(m[a][b]);
        minor.push_back(std::move(row));
      }
      const std::int64_t cof = ((i + j) % 2 == 0 ? 1 : -1) * mat_det(minor, n);
      inv[i][j] = mod(cof * det_inv, n);
    }
  return inv;
}

inline std::vector<std::int64_t> mat_apply(const ModMatrix& m, const std::vector<std::int64_t>& v, std::int64_t n) {
  std::vector<std::int64_t> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s = mod(s + m[i][j] * v[j], n);
    out[i] = s;
  }
  return out;
}

inline std::int64_t vec_index(const std::vector<std::int64_t>& v, std::int64_t n) {
  std::int64_t idx = 0;
  for (auto c : v) idx = idx * n + c;
  return idx;
}

/// All vectors of (Z/n)^r in index order.
template <class Fn>
void for_each_vector(std::size_t r, std::int64_t n, Fn&& fn) {
  std::int64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total *= n;
    require(total <= kMaxModelPoints, Errc::ModelTooLarge, "module exceeds 10^6 elements");
  }
  std::vector<std::int64_t> v(r, 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = r; i-- > 0;) {
      v[i] = rest % n;
      rest /= n;
    }
    fn(v);
  }
}

}  // namespace detail

/// (Z/n)^r with Frobenius sigma; the inertia acts trivially.
struct UnramifiedModule {
  std::int64_t n = 1;
  std::int64_t q = 2;
  ModMatrix sigma;

  UnramifiedModule(std::int64_t order, ModMatrix s, std::int64_t field_size) : n(order), q(field_size), sigma(std::move(s)) {
    require(n >= 1, Errc::InvalidArgument, "module order must be positive");
    require(std::gcd(n, q) == 1, Errc::PDividesN, "n must be coprime to p");
    for (auto& row : sigma) {
      require(row.size() == sigma.size(), Errc::InvalidArgument, "sigma must be square");
      for (auto& c : row) c = mod(c, n);
    }
    require(std::gcd(detail::mat_det(sigma, n), n) == 1 || n == 1, Errc::InvalidArgument, "sigma is not invertible mod n");
  }

  std::size_t rank() const { return sigma.size(); }

  /// sigma - c I.
  ModMatrix shifted(std::int64_t c) const {
    ModMatrix m = sigma;
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = mod(m[i][i] - c, n);
    return m;
  }

  /// Cartier dual Hom(M, mu_n): Frobenius q (sigma^{-1})^T.
  UnramifiedModule dual() const {
    if (n == 1) return *this;
    const auto inv = detail::mat_inverse(sigma, n);
    ModMatrix d(rank(), std::vector<std::int64_t>(rank(), 0));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) d[i][j] = mod(q * inv[j][i], n);
    return {n, std::move(d), q};
  }
};

inline std::int64_t kernel_size(const ModMatrix& m, std::int64_t n) {
  std::int64_t count = 0;
  detail::for_each_vector(m.size(), n, [&](const std::vector<std::int64_t>& v) {
    const auto w = detail::mat_apply(m, v, n);
    if (std::all_of(w.begin(), w.end(), [](std::int64_t c) { return c == 0; })) ++count;
  });
  return count;
}

inline std::int64_t cokernel_size(const ModMatrix& m, std::int64_t n) {
  std::set<std::int64_t> image;
  std::int64_t total = 0;
  detail::for_each_vector(m.size(), n, [&](const std::vector<std::int64_t>& v) {
    image.insert(detail::vec_index(detail::mat_apply(m, v, n), n));
    ++total;
  });
  return total / static_cast<std::int64_t>(image.size());
}

/// |H^1| from the tame presentation (sigma tau sigma^{-1} = tau^q, tau trivial):
/// |coker(sigma - 1)| * |ker(sigma - q)|.
inline std::int64_t h1_size(const UnramifiedModule& M) {
  if (M.n == 1) return 1;
  return cokernel_size(M.shifted(1), M.n) * kernel_size(M.shifted(M.q), M.n);
}

struct EulerReport {
  std::int64_t h1 = 0;
  std::int64_t invariants = 0;       // |M(F)|
  std::int64_t dual_invariants = 0;  // |M^dual(F)|
  bool pass = false;
};

inline EulerReport check_euler(const UnramifiedModule& M) {
  EulerReport r;
  r.h1 = h1_size(M);
  r.invariants = M.n == 1 ? 1 : kernel_size(M.shifted(1), M.n);
  const auto dual = M.dual();
  r.dual_invariants = M.n == 1 ? 1 : kernel_size(dual.shifted(1), dual.n);
  r.pass = r.h1 == r.invariants * r.dual_invariants;
  return r;
}

struct TorsionModuleInfo {
  std::int64_t extension_degree = 1;  // M with E[n] inside E(F_{q^M})
  std::array<ECPoint, 2> basis{};
};

/// E[n] with its Frobenius matrix in a basis found over the smallest F_{q^M}.
inline UnramifiedModule ec_torsion_module(const EllipticCurveModel& E, std::int64_t n, TorsionModuleInfo* info = nullptr) {
  const std::int64_t q = E.q();
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  require(n % E.field()->p() != 0, Errc::PDividesN, "p divides n");
  const std::int64_t count1 = ec_count(E, 1);
  if (n == 1) return {1, detail::mat_identity(2), q};
  long double size = 1;
  for (std::int64_t m = 1;; ++m) {
    size *= static_cast<long double>(q);
    if (size > static_cast<long double>(kMaxFieldSize)) break;
    // Necessary: n^2 | #E(F_{q^m}) and mu_n inside F_{q^m} (Weil pairing).
    const BigInt qm = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(m));
    if ((qm - 1) % n != 0 || ec_count_from_trace(q, count1, m) % (n * n) != 0) continue;
    const auto arith = E.over(m);
    // Points T = m' P with m' the part of #E prime to n range over the n-primary
    // subgroup A; (ord T / gcd(ord T, n)) T lies in E[n]. Grow their span until it is E[n].
    const auto total = static_cast<std::int64_t>(ec_count_from_trace(q, count1, m));
    std::int64_t prime_to_n = total;
    for (auto l : prime_factors(n))
      while (prime_to_n % l == 0) prime_to_n /= l;
    const std::int64_t primary = total / prime_to_n;
    std::set<ECPoint> span{ECPoint{}};
    arith.for_each_point([&](const ECPoint& P) {
      const ECPoint T = arith.mul(P, prime_to_n);
      const std::int64_t ord = point_order(arith, T, primary);
      const ECPoint U = arith.mul(T, ord / std::gcd(ord, n));
      if (span.count(U) != 0) return true;
      std::set<ECPoint> grown;
      for (const auto& S : span) {
        ECPoint acc = S;
        do {
          grown.insert(acc);
          acc = arith.add(acc, U);
        } while (acc != S);
      }
      span = std::move(grown);
      return static_cast<std::int64_t>(span.size()) < n * n;
    });
    if (static_cast<std::int64_t>(span.size()) != n * n) continue;
    const std::vector<ECPoint> torsion(span.begin(), span.end());
    // Basis: P1 of order n, then P2 with <P1, P2> = E[n].
    ECPoint p1{}, p2{};
    bool found = false;
    for (const auto& P : torsion) {
      if (point_order(arith, P, n) != n) continue;
      p1 = P;
      break;
    }
    std::map<ECPoint, std::pair<std::int64_t, std::int64_t>> coords;
    for (const auto& P : torsion) {
      if (point_order(arith, P, n) != n) continue;
      std::map<ECPoint, std::pair<std::int64_t, std::int64_t>> span2;
      for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) span2.emplace(arith.add(arith.mul(p1, a), arith.mul(P, b)), std::pair{a, b});
      if (static_cast<std::int64_t>(span2.size()) == n * n) {
        p2 = P;
        coords = std::move(span2);
        found = true;
        break;
      }
    }
    require(found, Errc::InvalidArgument, "no basis of E[n] found");
    const auto& big = *arith.field();
    auto frob = [&](const ECPoint& P) {
      return P.inf ? P : ECPoint::at(big.pow(P.x, q), big.pow(P.y, q));
    };
    const auto c1 = coords.at(frob(p1));
    const auto c2 = coords.at(frob(p2));
    ModMatrix sigma{{c1.first, c2.first}, {c1.second, c2.second}};
    UnramifiedModule M(n, sigma, q);
    require(detail::mat_det(M.sigma, n) == mod(q, n), Errc::InvalidArgument, "det(sigma) is not q mod n");
    require(mod(M.sigma[0][0] + M.sigma[1][1], n) == mod(q + 1 - count1, n), Errc::InvalidArgument,
            "trace(sigma) is not q + 1 - #E mod n");
    if (info != nullptr) *info = {m, {p1, p2}};
    return M;
  }
  fail(Errc::TorsionFieldTooLarge, "E[" + std::to_string(n) + "] is not defined over a field of size <= 10^6");
}

struct SelfDualReport {
  std::int64_t group_order = 0;
  std::int64_t quotient = 0;  // |E(F_q) / n E(F_q)|
  std::int64_t kernel = 0;    // |E[n](F_q)|
  bool pass = false;
};

/// |E(F_q)/nE(F_q)| against |E[n](F_q)| by explicit point arithmetic.
inline SelfDualReport check_selfdual(const EllipticCurveModel& E, std::int64_t n) {
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  require(n % E.field()->p() != 0, Errc::PDividesN, "p divides n");
  const auto arith = E.over(1);
  const auto pts = arith.points();
  std::set<ECPoint> image;
  SelfDualReport r;
  r.group_order = static_cast<std::int64_t>(pts.size());
  for (const auto& P : pts) {
    const auto nP = arith.mul(P, n);
    image.insert(nP);
    if (nP.inf) ++r.kernel;
  }
  r.quotient = r.group_order / static_cast<std::int64_t>(image.size());
  r.pass = r.quotient == r.kernel;
  return r;
}

/// a -> xi0 * exp(2 pi i t(a)), with the Hasse-invariant automorphism taken as the identity.
struct FAlpha {
  Character t;
  Rational xi0;
  Cyclotomic operator()(const GroupElement& a) const { return Cyclotomic::from_q_mod_z(xi0 + t(a)); }
};

inline FAlpha f_alpha_model(const FinAbGroup& g, const Character& t, const Rational& xi0 = Rational(0)) {
  require(t.owner() == g, Errc::OwnerMismatch, "character of a different group");
  return {t, frac(xi0)};
}

/// Short Weierstrass curves y^2 = x^3 + a4 x + a6 over F_q (p > 3), coefficients in
/// lexicographic index order, singular ones skipped.
inline std::vector<EllipticCurveModel> short_weierstrass_curves(std::int64_t q) {
  const Field f = ff_field_of_size(q);
  require(f->p() > 3, Errc::BadCharacteristic, "short Weierstrass form needs p > 3");
  std::vector<EllipticCurveModel> out;
  for (std::int64_t a4 = 0; a4 < q; ++a4)
    for (std::int64_t a6 = 0; a6 < q; ++a6) {
      try {
        out.emplace_back(f, std::array<std::int64_t, 5>{0, 0, 0, a4, a6});
      } catch (const Error& e) {
        if (e.code() != Errc::SingularReduction) throw;
      }
    }
  return out;
}

}  // namespace padic
