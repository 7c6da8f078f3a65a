#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padic/arith.hpp"

namespace padic {

/// Finite sum of c * q^r with rational r and c. Values at a concrete q are
/// compared through normalize(q), which rewrites every term in the basis
/// { q^s : 0 <= m*s < 1 } of Q(p^{1/N}) for q = p^m; that basis is linearly
/// independent because x^N - p is Eisenstein.
class QExp {
 public:
  QExp() = default;
  QExp(const Rational& c) { add_term(Rational(0), c); }  // NOLINT: constants convert implicitly

  static QExp monomial(const Rational& coeff, const Rational& exponent) {
    QExp e;
    e.add_term(exponent, coeff);
    return e;
  }
  /// q^exponent.
  static QExp power(const Rational& exponent) { return monomial(Rational(1), exponent); }

  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  QExp operator+(const QExp& o) const {
    QExp r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  QExp operator-() const {
    QExp r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  QExp operator-(const QExp& o) const { return *this + (-o); }
  QExp operator*(const QExp& o) const {
    QExp r;
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  QExp operator*(const Rational& s) const {
    QExp r;
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }
  QExp operator/(const Rational& s) const { return *this * (Rational(1) / s); }
  QExp& operator+=(const QExp& o) { return *this = *this + o; }
  QExp& operator*=(const QExp& o) { return *this = *this * o; }

  /// Formal equality of term lists.
  bool operator==(const QExp& o) const { return terms_ == o.terms_; }
  bool operator!=(const QExp& o) const { return !(*this == o); }

  /// Canonical form of the value at q.
  QExp normalize(std::int64_t q) const {
    const auto [p, m] = prime_power(q);
    QExp r;
    for (const auto& [e, c] : terms_) {
      const Rational scaled = e * m;  // exponent in base p
      const BigInt whole = floor_of(scaled);
      const Rational rest = scaled - Rational(whole);
      Rational factor = 1;
      const auto w = static_cast<long long>(whole);
      for (long long i = 0; i < (w < 0 ? -w : w); ++i) factor *= p;
      if (w < 0) factor = Rational(1) / factor;
      r.add_term(rest / m, c * factor);
    }
    return r;
  }

  bool equal_at(const QExp& o, std::int64_t q) const { return (*this - o).normalize(q).is_zero(); }

  /// Rational value at q, when the normalized form is a constant.
  bool is_rational_at(std::int64_t q) const {
    auto n = normalize(q);
    return n.terms_.empty() || (n.terms_.size() == 1 && n.terms_.begin()->first == 0);
  }

  double approx(std::int64_t q) const {
    double s = 0;
    for (const auto& [e, c] : terms_)
      s += static_cast<double>(c) * std::pow(static_cast<double>(q), static_cast<double>(e));
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (e != 0) out += "*q^(" + e.str() + ")";
    }
    return out;
  }

 private:
  void add_term(const Rational& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Rational, Rational> terms_;
};

inline QExp operator*(const Rational& s, const QExp& e) { return e * s; }

}  // namespace padic
