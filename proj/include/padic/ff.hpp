#pragma once

// Finite fields F_q, q = p^m <= 10^6, with log/antilog tables built at construction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "padic/arith.hpp"
#include "padic/error.hpp"

namespace padic {

inline constexpr std::int64_t kMaxFieldSize = 1'000'000;

namespace detail {

// Dense polynomials over Z/p, lowest degree first, no trailing zeros.
using PolyZp = std::vector<std::int64_t>;

inline void trim(PolyZp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyZp poly_mod(PolyZp a, const PolyZp& f, std::int64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::int64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::int64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = mod(a[shift + i] - c * f[i], p);
    trim(a);
  }
  return a;
}

inline PolyZp poly_mulmod(const PolyZp& a, const PolyZp& b, const PolyZp& f, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyZp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), f, p);
}

inline PolyZp poly_powmod(PolyZp base, std::int64_t e, const PolyZp& f, std::int64_t p) {
  PolyZp result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

inline PolyZp poly_gcd(PolyZp a, PolyZp b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyZp r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test.
inline bool is_irreducible(const PolyZp& f, std::int64_t p) {
  const auto m = static_cast<std::int64_t>(f.size()) - 1;
  if (m <= 0) return false;
  if (m == 1) return true;
  const PolyZp x{0, 1};
  auto x_pow_p_pow = [&](std::int64_t k) {
    PolyZp r = x;
    for (std::int64_t i = 0; i < k; ++i) r = poly_powmod(r, p, f, p);
    return r;
  };
  auto minus_x = [&](PolyZp a) {
    a.resize(std::max<std::size_t>(a.size(), 2), 0);
    a[1] = mod(a[1] - 1, p);
    trim(a);
    return a;
  };
  if (!minus_x(x_pow_p_pow(m)).empty()) return false;
  for (std::int64_t r : prime_factors(m)) {
    PolyZp g = poly_gcd(f, minus_x(x_pow_p_pow(m / r)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Immutable description of F_{p^m}. Elements are indices sum c_i p^i over the
/// polynomial basis 1, x, ..., x^{m-1} modulo the canonical modulus.
class FieldSpec {
 public:
  using Elem = std::uint32_t;

  FieldSpec(std::int64_t p, int m) : p_(p), m_(m) {
    require(is_prime(p), Errc::NonPrime, std::to_string(p) + " is not prime");
    require(m >= 1, Errc::InvalidArgument, "extension degree must be positive");
    q_ = 1;
    for (int i = 0; i < m; ++i) {
      q_ *= p;
      require(q_ <= kMaxFieldSize, Errc::TooLarge, "p^m exceeds 10^6");
    }
    modulus_ = find_modulus();
    build_tables();
  }

  std::int64_t p() const { return p_; }
  int m() const { return m_; }
  std::int64_t q() const { return q_; }
  /// Monic modulus, lowest degree first (length m + 1).
  const std::vector<std::int64_t>& modulus() const { return modulus_; }
  Elem primitive_root() const { return generator_; }

  std::vector<std::int64_t> coeffs(Elem a) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      c[static_cast<std::size_t>(i)] = a % p_;
      a = static_cast<Elem>(a / p_);
    }
    return c;
  }

  Elem from_coeffs(const std::vector<std::int64_t>& c) const {
    require(c.size() <= static_cast<std::size_t>(m_), Errc::InvalidArgument, "too many coefficients");
    std::int64_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * p_ + mod(c[i], p_);
    return static_cast<Elem>(idx);
  }

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t n) const { return static_cast<Elem>(mod(n, p_)); }

  Elem add(Elem a, Elem b) const {
    if (m_ == 1) return static_cast<Elem>((a + b) % p_);
    if (p_ == 2) return a ^ b;
    std::int64_t r = 0, place = 1;
    std::int64_t x = a, y = b;
    for (int i = 0; i < m_; ++i) {
      r += ((x % p_ + y % p_) % p_) * place;
      x /= p_;
      y /= p_;
      place *= p_;
    }
    return static_cast<Elem>(r);
  }

  Elem neg(Elem a) const {
    if (m_ == 1) return static_cast<Elem>((p_ - a) % p_);
    if (p_ == 2) return a;
    std::int64_t r = 0, place = 1;
    std::int64_t x = a;
    for (int i = 0; i < m_; ++i) {
      r += ((p_ - x % p_) % p_) * place;
      x /= p_;
      place *= p_;
    }
    return static_cast<Elem>(r);
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::int64_t s = static_cast<std::int64_t>(log_[a]) + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[static_cast<std::size_t>(s)];
  }

  Elem inv(Elem a) const {
    require(a != 0, Errc::ZeroElement, "inverse of zero");
    const std::int64_t l = log_[a];
    return exp_[static_cast<std::size_t>(l == 0 ? 0 : q_ - 1 - l)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::int64_t e) const {
    if (a == 0) {
      require(e >= 0, Errc::ZeroElement, "negative power of zero");
      return e == 0 ? 1 : 0;
    }
    const std::int64_t l = mod(static_cast<std::int64_t>(log_[a]) * mod(e, q_ - 1), q_ - 1);
    return exp_[static_cast<std::size_t>(l)];
  }

  /// Discrete log with respect to the canonical primitive root.
  std::int64_t log(Elem a) const {
    require(a != 0, Errc::NotInSubgroup, "zero has no discrete logarithm");
    return log_[a];
  }

  Elem exp(std::int64_t e) const { return exp_[static_cast<std::size_t>(mod(e, q_ - 1))]; }

  std::int64_t order(Elem a) const {
    require(a != 0, Errc::ZeroElement, "zero has no multiplicative order");
    return (q_ - 1) / std::gcd(static_cast<std::int64_t>(log_[a]), q_ - 1);
  }

  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Generator of mu_n; requires n | q - 1.
  Elem root_of_unity(std::int64_t n) const {
    require(n >= 1 && (q_ - 1) % n == 0, Errc::RootsOfUnityMissing,
            std::to_string(n) + " does not divide q - 1 = " + std::to_string(q_ - 1));
    return exp((q_ - 1) / n);
  }

 private:
  using Poly = detail::PolyZp;

  std::vector<std::int64_t> find_modulus() const {
    if (m_ == 1) return {0, 1};
    // Lexicographic order with the constant coefficient most significant.
    std::int64_t count = q_;
    for (std::int64_t n = 0; n < count; ++n) {
      Poly f(static_cast<std::size_t>(m_) + 1, 0);
      std::int64_t x = n;
      for (int i = m_ - 1; i >= 0; --i) {
        f[static_cast<std::size_t>(i)] = x % p_;
        x /= p_;
      }
      f[static_cast<std::size_t>(m_)] = 1;
      if (f[0] == 0) continue;
      if (detail::is_irreducible(f, p_)) return f;
    }
    fail(Errc::InvalidArgument, "no irreducible polynomial found");
  }

  Poly to_poly(Elem a) const {
    Poly c = coeffs(a);
    detail::trim(c);
    return c;
  }

  Elem from_poly(const Poly& c) const {
    std::int64_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * p_ + c[i];
    return static_cast<Elem>(idx);
  }

  Elem slow_mul(Elem a, Elem b) const {
    return from_poly(detail::poly_mulmod(to_poly(a), to_poly(b), modulus_, p_));
  }

  Elem slow_pow(Elem a, std::int64_t e) const {
    return from_poly(detail::poly_powmod(to_poly(a), e, modulus_, p_));
  }

  void build_tables() {
    const std::int64_t n = q_ - 1;
    const auto factors = prime_factors(n);
    generator_ = 1;
    for (std::int64_t cand = 1; cand < q_; ++cand) {
      const auto g = static_cast<Elem>(cand);
      bool full = true;
      for (std::int64_t r : factors) {
        if (slow_pow(g, n / r) == 1) {
          full = false;
          break;
        }
      }
      if (full) {
        generator_ = g;
        break;
      }
    }
    exp_.assign(static_cast<std::size_t>(n), 0);
    log_.assign(static_cast<std::size_t>(q_), 0);
    Elem cur = 1;
    for (std::int64_t i = 0; i < n; ++i) {
      exp_[static_cast<std::size_t>(i)] = cur;
      log_[cur] = static_cast<std::uint32_t>(i);
      cur = slow_mul(cur, generator_);
    }
  }

  std::int64_t p_;
  int m_;
  std::int64_t q_ = 1;
  std::vector<std::int64_t> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Canonical F_{p^m}; instances are cached so repeated requests are cheap.
inline Field ff_make_field(std::int64_t p, int m) {
  require(is_prime(p), Errc::NonPrime, std::to_string(p) + " is not prime");
  require(m >= 1, Errc::InvalidArgument, "extension degree must be positive");
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, int>, Field> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, m}); it != cache.end()) return it->second;
  }
  auto field = std::make_shared<const FieldSpec>(p, m);
  std::lock_guard lock(mutex);
  return cache.emplace(std::pair{p, m}, std::move(field)).first->second;
}

inline Field ff_field_of_size(std::int64_t q) {
  const auto [p, m] = prime_power(q);
  return ff_make_field(p, m);
}

class FFElement {
 public:
  using Elem = FieldSpec::Elem;

  FFElement() = default;
  FFElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
    require(field_ != nullptr, Errc::InvalidArgument, "element without field");
    require(static_cast<std::int64_t>(value_) < field_->q(), Errc::InvalidArgument, "index out of range");
  }
  static FFElement from_int(const Field& f, std::int64_t n) { return {f, f->from_int(n)}; }

  const Field& field() const { return field_; }
  Elem index() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  std::vector<std::int64_t> coeffs() const { return field_->coeffs(value_); }

  FFElement operator+(const FFElement& o) const { return {field_, field_->add(value_, same(o))}; }
  FFElement operator-(const FFElement& o) const { return {field_, field_->sub(value_, same(o))}; }
  FFElement operator-() const { return {field_, field_->neg(value_)}; }
  FFElement operator*(const FFElement& o) const { return {field_, field_->mul(value_, same(o))}; }
  FFElement operator/(const FFElement& o) const {
    require(!o.is_zero(), Errc::ZeroElement, "division by zero");
    return {field_, field_->div(value_, same(o))};
  }
  FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
  FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
  FFElement& operator*=(const FFElement& o) { return *this = *this * o; }

  FFElement pow(std::int64_t e) const { return {field_, field_->pow(value_, e)}; }
  FFElement inverse() const { return {field_, field_->inv(value_)}; }
  FFElement frobenius() const { return {field_, field_->frobenius(value_)}; }
  std::int64_t order() const { return field_->order(value_); }

  bool operator==(const FFElement& o) const { return field_ == o.field_ && value_ == o.value_; }
  bool operator!=(const FFElement& o) const { return !(*this == o); }
  bool operator<(const FFElement& o) const { return value_ < o.value_; }

  std::string to_string() const { return std::to_string(value_); }

 private:
  Elem same(const FFElement& o) const {
    require(field_ == o.field_, Errc::OwnerMismatch, "elements of different fields");
    return o.value_;
  }

  Field field_;
  Elem value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FFElement& a) { return os << a.index(); }

/// First element of order q - 1 in index order.
inline FFElement ff_primitive_root(const Field& field) { return {field, field->primitive_root()}; }

/// All x with x^n = 1, sorted by index.
inline std::vector<FFElement> ff_nth_roots_of_unity(const Field& field, std::int64_t n) {
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  require(n % field->p() != 0, Errc::PDividesN, "p divides n");
  const std::int64_t g = std::gcd(n, field->q() - 1);
  const std::int64_t step = (field->q() - 1) / g;
  std::vector<FFElement> roots;
  roots.reserve(static_cast<std::size_t>(g));
  for (std::int64_t j = 0; j < g; ++j) roots.emplace_back(field, field->exp(j * step));
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Least e >= 0 with base^e = x.
inline std::int64_t ff_dlog(const FFElement& base, const FFElement& x) {
  require(base.field() == x.field(), Errc::OwnerMismatch, "elements of different fields");
  require(!base.is_zero(), Errc::NotInSubgroup, "zero base");
  require(!x.is_zero(), Errc::NotInSubgroup, "zero is not a unit");
  const auto& f = *base.field();
  const std::int64_t n = f.q() - 1;
  const std::int64_t b = f.log(base.index());
  const std::int64_t c = f.log(x.index());
  const std::int64_t g = std::gcd(b, n);
  require(c % g == 0, Errc::NotInSubgroup, "x is not a power of base");
  const std::int64_t ord = n / g;
  if (ord == 1) return 0;
  return mod((c / g) * inv_mod(b / g, ord), ord);
}

/// Field embedding F_{p^a} -> F_{p^b} (a | b) as an index table, sending the
/// small field's generator x to the least root of its modulus in the big field.
inline std::vector<FieldSpec::Elem> ff_embedding(const Field& small, const Field& big) {
  require(small->p() == big->p() && big->m() % small->m() == 0, Errc::InvalidArgument,
          "no embedding between these fields");
  const auto& mod_poly = small->modulus();
  FieldSpec::Elem root = 0;
  bool found = false;
  for (std::int64_t cand = 0; cand < big->q() && !found; ++cand) {
    auto x = static_cast<FieldSpec::Elem>(cand);
    FieldSpec::Elem acc = 0;
    for (std::size_t i = mod_poly.size(); i-- > 0;) acc = big->add(big->mul(acc, x), big->from_int(mod_poly[i]));
    if (acc == 0) {
      root = x;
      found = true;
    }
  }
  require(found, Errc::InvalidArgument, "modulus has no root in the target field");
  std::vector<FieldSpec::Elem> table(static_cast<std::size_t>(small->q()));
  for (std::int64_t idx = 0; idx < small->q(); ++idx) {
    auto c = small->coeffs(static_cast<FieldSpec::Elem>(idx));
    FieldSpec::Elem acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = big->add(big->mul(acc, root), big->from_int(c[i]));
    table[static_cast<std::size_t>(idx)] = acc;
  }
  return table;
}

}  // namespace padic
