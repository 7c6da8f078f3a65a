#pragma once

// Exact arithmetic in Q(zeta_N): coordinates in the power basis of Q[x]/(Phi_N).

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "padic/arith.hpp"
#include "padic/error.hpp"

namespace padic {

namespace detail {

using IntPoly = std::vector<std::int64_t>;

inline const IntPoly& cyclotomic_polynomial(std::int64_t n) {
  static std::mutex mutex;
  static std::map<std::int64_t, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  IntPoly num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const IntPoly& den = cyclotomic_polynomial(d);
    IntPoly quot(num.size() - den.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
      const std::int64_t c = num[i + den.size() - 1];  // den is monic
      quot[i] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(num)).first->second;
}

template <typename T>
std::vector<T> reduce_mod_cyclotomic(std::vector<T> a, std::int64_t n) {
  const IntPoly& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = a.size(); i-- > deg;) {
    const T c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= c * phi[j];
  }
  a.resize(deg, T(0));
  return a;
}

}  // namespace detail

class Cyclotomic {
 public:
  /// Zero of Q(zeta_1) = Q.
  Cyclotomic() : Cyclotomic(1) {}

  explicit Cyclotomic(std::int64_t order) : order_(order) {
    require(order >= 1, Errc::InvalidArgument, "cyclotomic order must be positive");
    coeffs_.assign(detail::cyclotomic_polynomial(order).size() - 1, Rational(0));
  }

  static Cyclotomic rational(const Rational& r) {
    Cyclotomic c(1);
    c.coeffs_[0] = r;
    return c;
  }

  /// zeta_N^k with zeta_N = exp(2 pi i / N).
  static Cyclotomic root_of_unity(std::int64_t n, std::int64_t k) {
    std::vector<std::int64_t> hist(static_cast<std::size_t>(n), 0);
    hist[static_cast<std::size_t>(mod(k, n))] = 1;
    return from_histogram(n, hist);
  }

  /// exp(2 pi i r) for r in Q/Z.
  static Cyclotomic from_q_mod_z(const Rational& r) {
    const Rational f = frac(r);
    const auto den = static_cast<std::int64_t>(boost::multiprecision::denominator(f));
    const auto num = static_cast<std::int64_t>(boost::multiprecision::numerator(f));
    return root_of_unity(den, num);
  }

  /// sum_k hist[k] zeta_N^k, reduced in integer arithmetic.
  static Cyclotomic from_histogram(std::int64_t n, std::vector<std::int64_t> hist) {
    require(static_cast<std::int64_t>(hist.size()) == n, Errc::InvalidArgument, "histogram size mismatch");
    auto reduced = detail::reduce_mod_cyclotomic(std::move(hist), n);
    Cyclotomic c(n);
    for (std::size_t i = 0; i < reduced.size(); ++i) c.coeffs_[i] = Rational(reduced[i]);
    return c.simplified();
  }

  std::int64_t order() const { return order_; }
  const std::vector<Rational>& coordinates() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  Rational to_rational() const {
    require(is_rational(), Errc::NonRationalValue, "cyclotomic value is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    const std::int64_t l = std::lcm(order_, o.order_);
    auto a = lifted(l);
    auto b = o.lifted(l);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return make(l, std::move(a));
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Cyclotomic operator-(const Cyclotomic& o) const { return *this + (-o); }

  Cyclotomic operator*(const Cyclotomic& o) const {
    const std::int64_t l = std::lcm(order_, o.order_);
    auto a = lifted(l);
    auto b = o.lifted(l);
    std::vector<Rational> prod(a.size() + b.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    return make(l, std::move(prod));
  }

  Cyclotomic operator*(const Rational& r) const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c *= r;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }

  bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[i].str() + ")";
      if (i > 0) out += "*z" + std::to_string(order_) + "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static Cyclotomic make(std::int64_t n, std::vector<Rational> poly) {
    Cyclotomic c(n);
    c.coeffs_ = detail::reduce_mod_cyclotomic(std::move(poly), n);
    return c.simplified();
  }

  // Coefficients in Q[x] of this element written in zeta_L, L a multiple of order_.
  std::vector<Rational> lifted(std::int64_t l) const {
    const std::int64_t step = l / order_;
    std::vector<Rational> out(static_cast<std::size_t>(l), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return out;
  }

  // Rational values collapse to order 1 so that equality checks stay cheap.
  Cyclotomic simplified() const {
    if (order_ != 1 && is_rational()) return rational(coeffs_.empty() ? Rational(0) : coeffs_[0]);
    return *this;
  }

  std::int64_t order_;
  std::vector<Rational> coeffs_;
};

}  // namespace padic
