#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padic/error.hpp"

namespace padic {

/// Exact rationals; every volume, count and shift in the library is one of these.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num) / Rational(den); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    fail(Errc::ParseError, "not a rational: '" + text + "'");
  }
}

inline BigInt floor_of(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r);
  BigInt d = boost::multiprecision::denominator(r);
  BigInt qt = n / d;
  if (n % d != 0 && n < 0) qt -= 1;
  return qt;
}

/// Fractional part in [0, 1); representatives of Q/Z.
inline Rational frac(const Rational& r) { return r - Rational(floor_of(r)); }

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Inverse of a modulo n; requires gcd(a, n) = 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1, r = n, new_r = mod(a, n);
  while (new_r != 0) {
    std::int64_t qt = r / new_r;
    t = std::exchange(new_t, t - qt * new_t);
    r = std::exchange(new_r, r - qt * new_r);
  }
  require(r == 1, Errc::InvalidArgument, "not invertible modulo " + std::to_string(n));
  return mod(t, n);
}

/// Decomposes q = p^m; fails when q is not a prime power.
inline std::pair<std::int64_t, int> prime_power(std::int64_t q) {
  require(q >= 2, Errc::InvalidArgument, "q must be a prime power >= 2");
  auto ps = prime_factors(q);
  require(ps.size() == 1, Errc::NonPrime, std::to_string(q) + " is not a prime power");
  int m = 0;
  while (q > 1) {
    q /= ps[0];
    ++m;
  }
  return {ps[0], m};
}

}  // namespace padic
