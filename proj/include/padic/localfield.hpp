#pragma once

// Equal-characteristic local field F = F_q((t)) with absolute-precision series.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic/error.hpp"
#include "padic/ff.hpp"

namespace padic {

struct LocalFieldSpec {
  Field residue;
  std::int64_t default_precision = 8;

  LocalFieldSpec(Field residue_field, std::int64_t precision)
      : residue(std::move(residue_field)), default_precision(precision) {
    require(residue != nullptr, Errc::InvalidArgument, "missing residue field");
    require(precision >= 1, Errc::InvalidArgument, "default precision must be positive");
  }

  std::int64_t q() const { return residue->q(); }
  std::int64_t p() const { return residue->p(); }
};

/// Element of F_q((t)) known modulo t^prec. Nonzero elements store the
/// coefficients of t^val .. t^{prec-1} with a nonzero leading coefficient;
/// an element with no retained coefficient is zero to precision.
class TruncatedLaurentSeries {
 public:
  using Elem = FieldSpec::Elem;

  TruncatedLaurentSeries() = default;

  /// coeffs[i] is the coefficient of t^{start + i}; entries at or beyond prec are dropped.
  TruncatedLaurentSeries(Field field, std::int64_t start, std::vector<Elem> coeffs, std::int64_t prec)
      : field_(std::move(field)), val_(prec), prec_(prec) {
    require(field_ != nullptr, Errc::InvalidArgument, "series without field");
    std::size_t first = 0;
    while (first < coeffs.size() && coeffs[first] == 0) ++first;
    const std::int64_t v = start + static_cast<std::int64_t>(first);
    if (first == coeffs.size() || v >= prec) return;
    val_ = v;
    coeffs_.assign(static_cast<std::size_t>(prec - v), 0);
    for (std::size_t i = first; i < coeffs.size(); ++i) {
      const std::int64_t e = start + static_cast<std::int64_t>(i);
      if (e >= prec) break;
      require(static_cast<std::int64_t>(coeffs[i]) < field_->q(), Errc::InvalidArgument, "coefficient out of range");
      coeffs_[static_cast<std::size_t>(e - v)] = coeffs[i];
    }
  }

  static TruncatedLaurentSeries zero(Field field, std::int64_t prec) { return {std::move(field), prec, {}, prec}; }
  static TruncatedLaurentSeries constant(Field field, Elem c, std::int64_t prec) {
    return {std::move(field), 0, {c}, prec};
  }
  /// c * t^e known to absolute precision prec.
  static TruncatedLaurentSeries monomial(Field field, Elem c, std::int64_t e, std::int64_t prec) {
    return {std::move(field), e, {c}, prec};
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t valuation() const {
    require(!is_zero(), Errc::ZeroElement, "valuation of an element that is zero to precision");
    return val_;
  }
  std::int64_t precision() const { return prec_; }
  std::int64_t relative_precision() const { return is_zero() ? 0 : prec_ - val_; }

  /// Coefficient of t^e (e < precision()).
  Elem coeff(std::int64_t e) const {
    require(e < prec_, Errc::InvalidArgument, "coefficient beyond precision");
    if (is_zero() || e < val_) return 0;
    return coeffs_[static_cast<std::size_t>(e - val_)];
  }

  FFElement leading() const {
    require(!is_zero(), Errc::ZeroElement, "leading coefficient of zero");
    return {field_, coeffs_.front()};
  }

  /// Same element known to the lower precision new_prec.
  TruncatedLaurentSeries truncate(std::int64_t new_prec) const {
    require(new_prec <= prec_, Errc::InvalidArgument, "truncate cannot raise precision");
    return {field_, val_, coeffs_, new_prec};
  }

  /// Multiplication by t^k; exact.
  TruncatedLaurentSeries shift(std::int64_t k) const { return {field_, val_ + k, coeffs_, prec_ + k}; }

  TruncatedLaurentSeries scale(const FFElement& c) const {
    same_field(c.field());
    std::vector<Elem> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = field_->mul(coeffs_[i], c.index());
    return {field_, val_, std::move(out), prec_};
  }

  TruncatedLaurentSeries operator+(const TruncatedLaurentSeries& o) const { return add_impl(o, false); }
  TruncatedLaurentSeries operator-(const TruncatedLaurentSeries& o) const { return add_impl(o, true); }
  TruncatedLaurentSeries operator-() const { return zero(field_, prec_) - *this; }

  TruncatedLaurentSeries operator*(const TruncatedLaurentSeries& o) const {
    same_field(o.field_);
    if (is_zero() || o.is_zero()) {
      fail(Errc::PrecisionExhausted, "product has no retained coefficients");
    }
    const std::int64_t v = val_ + o.val_;
    const std::int64_t prec = std::min(val_ + o.prec_, o.val_ + prec_);
    const auto len = static_cast<std::size_t>(prec - v);
    std::vector<Elem> out(len, 0);
    for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) {
      if (coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < o.coeffs_.size() && i + j < len; ++j) {
        out[i + j] = field_->add(out[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
      }
    }
    return {field_, v, std::move(out), prec};
  }

  TruncatedLaurentSeries operator/(const TruncatedLaurentSeries& o) const {
    same_field(o.field_);
    require(!o.is_zero(), Errc::DivisionByZeroToPrecision, "divisor is zero to precision");
    require(!is_zero(), Errc::PrecisionExhausted, "quotient has no retained coefficients");
    const std::int64_t v = val_ - o.val_;
    const std::int64_t rel = std::min(relative_precision(), o.relative_precision());
    // Long division of unit parts.
    const Elem lead_inv = field_->inv(o.coeffs_.front());
    std::vector<Elem> rem(coeffs_.begin(), coeffs_.begin() + rel);
    std::vector<Elem> out(static_cast<std::size_t>(rel), 0);
    for (std::int64_t i = 0; i < rel; ++i) {
      const Elem c = field_->mul(rem[static_cast<std::size_t>(i)], lead_inv);
      out[static_cast<std::size_t>(i)] = c;
      if (c == 0) continue;
      for (std::int64_t j = 0; i + j < rel; ++j) {
        auto& slot = rem[static_cast<std::size_t>(i + j)];
        slot = field_->sub(slot, field_->mul(c, o.coeffs_[static_cast<std::size_t>(j)]));
      }
    }
    return {field_, v, std::move(out), v + rel};
  }

  TruncatedLaurentSeries pow(std::int64_t e) const {
    require(e >= 0, Errc::InvalidArgument, "negative exponent");
    TruncatedLaurentSeries result;
    TruncatedLaurentSeries base = *this;
    bool first = true;
    while (e > 0) {
      if (e & 1) {
        result = first ? base : result * base;
        first = false;
      }
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return first ? constant(field_, 1, prec_ - (is_zero() ? 0 : val_)) : result;
  }

  /// Exact equality of the represented approximations.
  bool operator==(const TruncatedLaurentSeries& o) const {
    return field_ == o.field_ && prec_ == o.prec_ && coeffs_ == o.coeffs_ && (is_zero() || val_ == o.val_);
  }
  bool operator!=(const TruncatedLaurentSeries& o) const { return !(*this == o); }

  /// Agreement modulo t^{min(prec)}.
  bool agrees_with(const TruncatedLaurentSeries& o) const {
    const std::int64_t k = std::min(prec_, o.prec_);
    return truncate(k) == o.truncate(k);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += std::to_string(coeffs_[i]) + "*t^" + std::to_string(val_ + static_cast<std::int64_t>(i));
    }
    if (!out.empty()) out += " + ";
    out += "O(t^" + std::to_string(prec_) + ")";
    return out;
  }

 private:
  void same_field(const Field& f) const {
    require(f == field_, Errc::OwnerMismatch, "series over different fields");
  }

  TruncatedLaurentSeries add_impl(const TruncatedLaurentSeries& o, bool subtract) const {
    same_field(o.field_);
    const std::int64_t prec = std::min(prec_, o.prec_);
    std::int64_t lo = prec;
    if (!is_zero()) lo = std::min(lo, val_);
    if (!o.is_zero()) lo = std::min(lo, o.val_);
    std::vector<Elem> out(static_cast<std::size_t>(prec - lo), 0);
    for (std::int64_t e = lo; e < prec; ++e) {
      const Elem b = o.coeff(e);
      out[static_cast<std::size_t>(e - lo)] = subtract ? field_->sub(coeff(e), b) : field_->add(coeff(e), b);
    }
    return {field_, lo, std::move(out), prec};
  }

  Field field_;
  std::int64_t val_ = 0;
  std::vector<Elem> coeffs_;
  std::int64_t prec_ = 0;
};

/// Parses literals such as "2*t^3 + 1*t^4 + O(t^6)". Coefficients are residue
/// field element indices; without an O-term the default precision applies.
inline TruncatedLaurentSeries ls_parse(const LocalFieldSpec& F, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  require(!s.empty(), Errc::ParseError, "empty series literal");
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // (exponent, signed coefficient)
  std::optional<std::int64_t> prec;
  std::size_t pos = 0;
  auto read_int = [&](std::int64_t& out) {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos > start && std::isdigit(static_cast<unsigned char>(s[pos - 1])), Errc::ParseError,
            "expected integer in '" + text + "'");
    out = std::stoll(s.substr(start, pos - start));
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    if (s.compare(pos, 4, "O(t^") == 0) {
      pos += 4;
      std::int64_t k = 0;
      read_int(k);
      require(pos < s.size() && s[pos] == ')', Errc::ParseError, "unterminated O-term");
      ++pos;
      prec = k;
      continue;
    }
    if (s.compare(pos, 3, "O(t") == 0 && pos + 3 < s.size() && s[pos + 3] == ')') {
      pos += 4;
      prec = 1;
      continue;
    }
    std::int64_t c = 1;
    bool have_coeff = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      read_int(c);
      have_coeff = true;
    }
    std::int64_t e = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 't')) {
      if (s[pos] == '*') {
        require(have_coeff, Errc::ParseError, "dangling '*'");
        ++pos;
      }
      require(pos < s.size() && s[pos] == 't', Errc::ParseError, "expected 't' in '" + text + "'");
      ++pos;
      e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        read_int(e);
      }
    } else {
      require(have_coeff, Errc::ParseError, "unexpected character in '" + text + "'");
    }
    require(c >= 0 && c < F.q(), Errc::ParseError, "coefficient index out of range");
    terms.emplace_back(e, sign * c);
  }
  const std::int64_t k = prec.value_or(F.default_precision);
  std::int64_t lo = k;
  for (auto [e, c] : terms) lo = std::min(lo, e);
  std::vector<FieldSpec::Elem> coeffs(static_cast<std::size_t>(std::max<std::int64_t>(k - lo, 0)), 0);
  const auto& f = *F.residue;
  for (auto [e, c] : terms) {
    if (e >= k) continue;
    auto& slot = coeffs[static_cast<std::size_t>(e - lo)];
    const auto a = static_cast<FieldSpec::Elem>(c < 0 ? -c : c);
    slot = c < 0 ? f.sub(slot, a) : f.add(slot, a);
  }
  return {F.residue, lo, std::move(coeffs), k};
}

struct UnitDecomposition {
  std::int64_t v;
  FFElement teich;
  TruncatedLaurentSeries one_unit;
};

/// x = t^v * [teich] * one_unit.
inline UnitDecomposition ls_unit_decompose(const TruncatedLaurentSeries& x) {
  require(!x.is_zero(), Errc::ZeroElement, "cannot decompose an element that is zero to precision");
  const std::int64_t v = x.valuation();
  FFElement lead = x.leading();
  auto one_unit = x.shift(-v).scale(lead.inverse());
  return {v, lead, std::move(one_unit)};
}

namespace detail {

// Newton iteration for y^n = u with u a one-unit; quadratic convergence.
inline TruncatedLaurentSeries one_unit_root(const TruncatedLaurentSeries& u, std::int64_t n) {
  const Field& f = u.field();
  const std::int64_t prec = u.precision();
  auto y = TruncatedLaurentSeries::constant(f, 1, prec);
  const FFElement n_inv = FFElement::from_int(f, n).inverse();
  for (int iter = 0; iter < 64; ++iter) {
    auto y_pow = y.pow(n - 1);
    auto residual = y_pow * y - u;
    if (residual.is_zero()) return y;
    auto correction = residual / y_pow;
    y = y - correction.scale(n_inv);
  }
  fail(Errc::NoRoot, "Hensel iteration did not converge");
}

}  // namespace detail

/// Exponent b of the canonical n-th root g^b of g^a in F_q^x, if any.
inline std::optional<std::int64_t> canonical_root_log(std::int64_t a, std::int64_t n, std::int64_t q) {
  const std::int64_t order = q - 1;
  const std::int64_t g = std::gcd(n, order);
  if (a % g != 0) return std::nullopt;
  const std::int64_t m = order / g;
  if (m == 1) return 0;
  return mod((a / g) * inv_mod(n / g, m), m);
}

/// n-th root with canonical Teichmüller part; NoRoot on valuation or residue obstruction.
inline TruncatedLaurentSeries ls_nth_root(const TruncatedLaurentSeries& x, std::int64_t n) {
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  const Field& f = x.field();
  require(n % f->p() != 0, Errc::PDividesN, "p divides n");
  require(!x.is_zero(), Errc::ZeroElement, "root of an element that is zero to precision");
  const auto dec = ls_unit_decompose(x);
  if (mod(dec.v, n) != 0) {
    fail(Errc::NoRoot, "valuation " + std::to_string(dec.v) + " is not divisible by " + std::to_string(n));
  }
  const auto b = canonical_root_log(f->log(dec.teich.index()), n, f->q());
  if (!b) fail(Errc::NoRoot, "leading coefficient is not an n-th power in the residue field");
  const FFElement teich_root{f, f->exp(*b)};
  return detail::one_unit_root(dec.one_unit, n).scale(teich_root).shift(dec.v / n);
}

struct PowerClass {
  std::int64_t valuation_class;  // v mod n
  std::int64_t residue_class;    // dlog(teich) mod gcd(n, q - 1)
  bool operator==(const PowerClass&) const = default;
};

/// Class of x in F^x / (F^x)^n = Z/n x F_q^x / (F_q^x)^n.
inline PowerClass ls_power_class(const TruncatedLaurentSeries& x, std::int64_t n) {
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  const Field& f = x.field();
  require(n % f->p() != 0, Errc::PDividesN, "p divides n");
  const auto dec = ls_unit_decompose(x);
  const std::int64_t g = std::gcd(n, f->q() - 1);
  return {mod(dec.v, n), mod(f->log(dec.teich.index()), g)};
}

}  // namespace padic
