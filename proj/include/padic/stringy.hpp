#pragma once

// Stringy point counts and E-polynomials of [A^n/Gamma], optionally twisted by
// a gerbe given through its per-sector characters.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/error.hpp"
#include "padic/galois.hpp"
#include "padic/orbifold.hpp"
#include "padic/qexp.hpp"

namespace padic {

/// Finite sum of c x^u y^v with rational exponents and integer coefficients.
class EPoly {
 public:
  using Key = std::pair<Rational, Rational>;

  EPoly() = default;
  static EPoly monomial(const BigInt& c, const Rational& u, const Rational& v) {
    EPoly e;
    e.add_term({u, v}, c);
    return e;
  }
  static EPoly xy_power(const Rational& k) { return monomial(1, k, k); }

  const std::map<Key, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  EPoly operator+(const EPoly& o) const {
    EPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
  }
  EPoly operator*(const EPoly& o) const {
    EPoly r;
    for (const auto& [k1, c1] : terms_)
      for (const auto& [k2, c2] : o.terms_) r.add_term({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
    return r;
  }
  EPoly operator*(const BigInt& s) const {
    EPoly r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
  }
  EPoly& operator+=(const EPoly& o) { return *this = *this + o; }
  bool operator==(const EPoly& o) const { return terms_ == o.terms_; }

  /// x^u y^v -> q^{(u+v)/2}.
  QExp specialize() const {
    QExp r;
    for (const auto& [k, c] : terms_) r += QExp::monomial(Rational(c), (k.first + k.second) / 2);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += it->second.str() + "*x^" + padic::to_string(it->first.first) + "*y^" + padic::to_string(it->first.second);
    }
    return s;
  }

 private:
  void add_term(const Key& k, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Key, BigInt> terms_;
};

/// Per-sector characters kappa_gamma of a mu_r-gerbe, indexed by element enumeration order.
class GerbeData {
 public:
  GerbeData(FinAbGroup group, std::int64_t r, std::vector<Character> kappa)
      : group_(std::move(group)), r_(r), kappa_(std::move(kappa)) {
    require(r_ >= 1, Errc::InvalidArgument, "gerbe order must be positive");
    require(static_cast<std::int64_t>(kappa_.size()) == group_.order(), Errc::InvalidArgument,
            "one character per group element expected");
    for (const auto& k : kappa_) {
      require(k.owner() == group_, Errc::OwnerMismatch, "kappa character of a different group");
      require(r_ % k.order() == 0, Errc::InvalidArgument, "kappa takes values outside mu_r");
    }
    require(kappa_.empty() || kappa_.front().is_trivial(), Errc::InvalidArgument, "kappa of the identity must be trivial");
  }

  static GerbeData trivial(const FinAbGroup& g) {
    return {g, 1, std::vector<Character>(static_cast<std::size_t>(g.order()), Character::trivial(g))};
  }

  /// kappa_gamma(tau) = sum_{i,j} gamma_i B_ij tau_j / d_j.
  static GerbeData from_form(const FinAbGroup& g, std::int64_t r, const std::vector<std::vector<std::int64_t>>& form) {
    const auto& d = g.factors();
    require(form.size() == g.rank(), Errc::InvalidArgument, "form has wrong size");
    for (std::size_t i = 0; i < d.size(); ++i) {
      require(form[i].size() == g.rank(), Errc::InvalidArgument, "form has wrong size");
      for (std::size_t j = 0; j < d.size(); ++j)
        require(mod(d[i] * form[i][j], d[j]) == 0, Errc::InvalidArgument, "form is not well defined on Gamma");
    }
    std::vector<Character> kappa;
    for (const auto& a : g.elements()) {
      GroupElement ex(d.size(), 0);
      for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t i = 0; i < d.size(); ++i) ex[j] += a[i] * form[i][j];
      kappa.emplace_back(g, ex);
    }
    return {g, r, std::move(kappa)};
  }

  const FinAbGroup& group() const { return group_; }
  std::int64_t r() const { return r_; }
  const Character& kappa(const GroupElement& a) const {
    return kappa_[static_cast<std::size_t>(group_.index_of(group_.reduce(a)))];
  }
  bool is_trivial() const {
    return std::all_of(kappa_.begin(), kappa_.end(), [](const Character& k) { return k.is_trivial(); });
  }
  bool is_bilinear() const {
    for (const auto& a : group_.elements())
      for (const auto& b : group_.elements())
        if (kappa(group_.add(a, b)) != kappa(a) + kappa(b)) return false;
    return true;
  }

 private:
  FinAbGroup group_;
  std::int64_t r_;
  std::vector<Character> kappa_;
};

struct StrataRow {
  ShiftRecord shift;
  std::int64_t component = 0;         // V^gamma is connected for linear actions
  QExp count;                         // groupoid count of [V^gamma/Gamma](F_q)
  std::vector<BigInt> twisted_counts;  // #V^gamma_tau(F_q), tau in enumeration order
  EPoly epoly;
  std::optional<Character> kappa;
};

struct StrataTable {
  LinearDiagonalModel model;
  std::int64_t xi_exponent = 1;
  std::vector<StrataRow> rows;
};

inline StrataTable strata_from_action(const LinearDiagonalModel& model, std::int64_t xi_exponent = 1) {
  StrataTable table{model, xi_exponent, {}};
  const std::int64_t q = model.field->q();
  for (const auto& rec : shifts(model, xi_exponent)) {
    StrataRow row;
    row.shift = rec;
    const auto sub = model.restrict_to(fixed_coordinates(rec));
    for (const auto& tau : model.group.elements()) row.twisted_counts.push_back(twist_pointcount(GammaVarietyAction{sub}, tau, 1));
    const auto [groupoid, method] = stratum_groupoid_count(model, rec);
    (void)method;
    const QExp lang = QExp::power(Rational(rec.fixed_dim));
    require(lang.equal_at(QExp(groupoid), q), Errc::InvalidArgument, "stratum count differs from q^dim");
    row.count = lang;
    row.epoly = EPoly::xy_power(Rational(rec.fixed_dim));
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline StrataTable strata_from_action(const LinearCyclicAction& action, std::int64_t xi_exponent = 1) {
  return strata_from_action(action.to_diagonal(), xi_exponent);
}

inline StrataTable attach_gerbe(StrataTable table, const GerbeData& gerbe) {
  require(gerbe.group() == table.model.group, Errc::OwnerMismatch, "gerbe for a different group");
  for (auto& row : table.rows) row.kappa = gerbe.kappa(row.shift.element);
  return table;
}

namespace detail {

inline const Character* row_kappa(const StrataRow& row, const std::optional<GerbeData>& gerbe) {
  if (gerbe) return &gerbe->kappa(row.shift.element);
  return row.kappa ? &*row.kappa : nullptr;
}

/// (1/|Gamma|) sum_tau kappa(tau) #Y_tau(F_q), exact.
inline Rational twisted_row_count(const FinAbGroup& g, const StrataRow& row, const Character& kappa) {
  Cyclotomic acc(1);
  const auto elems = g.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    acc += Cyclotomic::from_q_mod_z(kappa(elems[i])) * Rational(row.twisted_counts[i]);
  return acc.to_rational() / g.order();
}

}  // namespace detail

/// sum over rows of q^F times the (possibly kappa-twisted) stratum count.
inline QExp stringy_count(const StrataTable& table, const std::optional<GerbeData>& gerbe = std::nullopt) {
  const std::int64_t q = table.model.field->q();
  if (gerbe) require(gerbe->group() == table.model.group, Errc::OwnerMismatch, "gerbe for a different group");
  QExp total;
  for (const auto& row : table.rows) {
    const Character* kappa = detail::row_kappa(row, gerbe);
    if (kappa == nullptr) {
      total += row.count * QExp::power(row.shift.F);
    } else {
      total += QExp::monomial(detail::twisted_row_count(table.model.group, row, *kappa), row.shift.F);
    }
  }
  return total.normalize(q);
}

/// sum over rows of (xy)^F times the kappa-isotypical part of the stratum's E-polynomial.
inline EPoly stringy_epoly(const StrataTable& table, const std::optional<GerbeData>& gerbe = std::nullopt) {
  if (gerbe) require(gerbe->group() == table.model.group, Errc::OwnerMismatch, "gerbe for a different group");
  EPoly total;
  for (const auto& row : table.rows) {
    EPoly term = row.epoly * EPoly::xy_power(row.shift.F);
    if (const Character* kappa = detail::row_kappa(row, gerbe)) {
      // Twisted forms of affine space all carry the same class, so the isotypical
      // part is the whole row or nothing.
      const Rational avg = character_sum(*kappa).to_rational() / table.model.group.order();
      require(is_integer(avg), Errc::NonRationalValue, "isotypical multiplicity is not integral");
      term = term * boost::multiprecision::numerator(avg);
    }
    total += term;
  }
  return total;
}

/// Relabels rows gamma -> gamma^c and recomputes shifts with xi^c.
inline StrataTable xi_reindex(const StrataTable& table, std::int64_t c) {
  const FinAbGroup& g = table.model.group;
  const std::int64_t n = g.order();
  require(std::gcd(mod(c, n), n) == 1, Errc::InvalidArgument, "c must be coprime to |Gamma|");
  StrataTable out{table.model, n == 1 ? 1 : mod(table.xi_exponent * c, n), {}};
  for (const auto& row : table.rows) {
    StrataRow r = row;
    r.shift = shift_of(table.model, g.scale(row.shift.element, c), out.xi_exponent);
    require(r.shift.fixed_dim == row.shift.fixed_dim, Errc::InvalidArgument, "reindexing changed a fixed locus");
    out.rows.push_back(std::move(r));
  }
  std::sort(out.rows.begin(), out.rows.end(), [&g](const StrataRow& a, const StrataRow& b) {
    return g.index_of(a.shift.element) < g.index_of(b.shift.element);
  });
  return out;
}

}  // namespace padic
