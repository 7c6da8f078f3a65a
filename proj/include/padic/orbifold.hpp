#pragma once

// Linear quotient singularities A^n/Gamma over F_q((t)): fermionic shifts,
// the specialization map, and exact finite-level orbifold volumes.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/error.hpp"
#include "padic/ff.hpp"
#include "padic/galois.hpp"
#include "padic/localfield.hpp"
#include "padic/qexp.hpp"

namespace padic {

/// Z/d acting on A^n by diag(zeta^{e_1}, ..., zeta^{e_n}), 1 <= e_i <= d.
struct LinearCyclicAction {
  std::int64_t d = 1;
  std::vector<std::int64_t> weights;
  std::int64_t q = 2;

  LinearCyclicAction() = default;
  LinearCyclicAction(std::int64_t order, std::vector<std::int64_t> w, std::int64_t field_size)
      : d(order), weights(std::move(w)), q(field_size) {
    require(d >= 1, Errc::InvalidArgument, "order must be positive");
    const auto [p, m] = prime_power(q);
    (void)m;
    require(d % p != 0, Errc::PDividesN, "p divides the group order");
    require((q - 1) % d == 0, Errc::RootsOfUnityMissing, "d does not divide q - 1");
    for (auto e : weights) require(e >= 1 && e <= d, Errc::InvalidArgument, "weights must lie in [1, d]");
  }

  bool is_trivial() const {
    return std::all_of(weights.begin(), weights.end(), [this](std::int64_t e) { return e == d; });
  }

  LinearDiagonalModel to_diagonal() const {
    const auto g = FinAbGroup::cyclic(d);
    std::vector<Character> coords;
    for (auto e : weights) coords.emplace_back(g, g.is_trivial() ? GroupElement{} : GroupElement{mod(e, d)});
    return {g, ff_field_of_size(q), std::move(coords)};
  }
};

struct ShiftRecord {
  GroupElement element;
  std::int64_t order = 1;
  std::vector<std::int64_t> exponents;  // w_i in [0, order)
  std::int64_t fixed_dim = 0;
  Rational F;  // sum w_i / r
  Rational w;  // F + fixed_dim
};

/// Shift data of one element; xi_exponent replaces the canonical primitive roots zeta_r by zeta_r^xi.
inline ShiftRecord shift_of(const LinearDiagonalModel& model, const GroupElement& a, std::int64_t xi_exponent = 1) {
  const FinAbGroup& g = model.group;
  require(std::gcd(mod(xi_exponent, std::max<std::int64_t>(g.order(), 1)), g.order()) == 1 || g.order() == 1,
          Errc::InvalidArgument, "xi exponent must be coprime to |Gamma|");
  ShiftRecord rec;
  rec.element = g.reduce(a);
  rec.order = g.element_order(rec.element);
  const std::int64_t r = rec.order, e = g.exponent();
  const std::int64_t xi_inv = r == 1 ? 0 : inv_mod(xi_exponent, r);
  rec.F = 0;
  for (const auto& chi : model.coords) {
    // a acts by zeta_E^k = zeta_r^{k r / E}
    const std::int64_t s = mod(chi.numerator_over_exponent(rec.element) * r / e, r);
    const std::int64_t wi = r == 1 ? 0 : mod(s * xi_inv, r);
    rec.exponents.push_back(wi);
    if (wi == 0) ++rec.fixed_dim;
    rec.F += Rational(wi) / r;
  }
  rec.w = rec.F + rec.fixed_dim;
  return rec;
}

/// One record per group element, in enumeration order.
inline std::vector<ShiftRecord> shifts(const LinearDiagonalModel& model, std::int64_t xi_exponent = 1) {
  std::vector<ShiftRecord> out;
  for (const auto& a : model.group.elements()) out.push_back(shift_of(model, a, xi_exponent));
  return out;
}

inline std::vector<ShiftRecord> shifts(const LinearCyclicAction& action, std::int64_t xi_exponent = 1) {
  return shifts(action.to_diagonal(), xi_exponent);
}

/// Coordinates of V^gamma for the element of a shift record.
inline std::vector<std::size_t> fixed_coordinates(const ShiftRecord& rec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rec.exponents.size(); ++i)
    if (rec.exponents[i] == 0) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Specialization for A^1 / mu_d, with u = x^d the coordinate on the quotient.

struct Specialization {
  TorsorClass cls;
  std::int64_t inertia_power = 0;  // inertia generated by gamma^{inertia_power}
  bool at_origin = false;          // reduction lies on the origin stratum
  FFElement residue;               // u mod t when the reduction is off the origin
};

inline Specialization specialize_1d(const TruncatedLaurentSeries& u, std::int64_t d) {
  require(!u.is_zero(), Errc::ZeroToPrecision, "generic point is not in the free locus");
  require(u.valuation() >= 0, Errc::InvalidArgument, "u is not integral");
  const auto& f = u.field();
  require((f->q() - 1) % d == 0, Errc::RootsOfUnityMissing, "d does not divide q - 1");
  Specialization s;
  s.cls = kummer_class(u, d);
  s.inertia_power = s.cls.ram.empty() ? 0 : s.cls.ram[0];
  s.at_origin = u.valuation() > 0;
  s.residue = s.at_origin ? FFElement(f, 0) : u.leading();
  return s;
}

// ---------------------------------------------------------------------------
// One-dimensional blocks: the set S = {z^d t^e : z in O^x} ∪ {its t^{jd} multiples}
// = {x : v(x) >= e, v(x) = e mod d, x t^{-e} a d-th power}, with density |x|^{(1-d)/d}.

inline std::int64_t block_precision_threshold(std::int64_t d, std::int64_t e) { return e + 2 * d; }

/// Sum of q^{-k} |x|^{(1-d)/d} over the classes x mod t^k in S with v(x) < k.
/// Membership depends only on (v(x), leading coefficient), so classes are grouped
/// by that pair with multiplicity q^{k-1-v}.
inline QExp block_partial_sum(std::int64_t d, std::int64_t e, const Field& field, std::int64_t k) {
  const std::int64_t q = field->q();
  QExp total;
  for (std::int64_t v = 0; v < k; ++v) {
    if (v < e) continue;
    std::int64_t members = 0;
    for (std::int64_t a = 1; a < q; ++a) {
      // Representative a t^v (1 + t); the unit part is a d-th power iff a is.
      auto x = TruncatedLaurentSeries(field, v, {static_cast<FieldSpec::Elem>(a), static_cast<FieldSpec::Elem>(a)}, k);
      try {
        (void)ls_nth_root(x.shift(-e), d);
        ++members;
      } catch (const Error& err) {
        if (err.code() != Errc::NoRoot) throw;
      }
    }
    if (members == 0) continue;
    // q^{k-1-v} classes each of Haar measure q^{-k}, weight q^{-v(1-d)/d}
    total += QExp::monomial(Rational(members), Rational(-1 - v) - Rational(v * (1 - d), d));
  }
  return total.normalize(q);
}

/// Exact block volume from the classes below t^k: the part with v >= e + jd is
/// t^{jd} S, of measure q^{-j} mu(S), where j is least with e + jd >= k.
inline QExp block_volume_at(std::int64_t d, std::int64_t e, const Field& field, std::int64_t k) {
  require(k > e, Errc::PrecisionTooLow, "precision must exceed e");
  const std::int64_t j = (k - e + d - 1) / d;
  const Rational qj = Rational(BigInt(1) * boost::multiprecision::pow(BigInt(field->q()), static_cast<unsigned>(j)));
  const QExp partial = block_partial_sum(d, e, field, k);
  return (partial * (qj / (qj - 1))).normalize(field->q());
}

inline QExp block_closed_form(std::int64_t d, std::int64_t e, std::int64_t q) {
  return QExp::monomial(Rational(1, d), Rational(-e, d)).normalize(q);
}

/// Orbifold volume of the sector set S; PrecisionTooLow below the threshold or
/// when the value moves between k and k+1.
inline QExp orb_fiber_volume_1d(std::int64_t d, std::int64_t e, std::int64_t q, std::int64_t k) {
  require(d >= 1, Errc::InvalidArgument, "d must be positive");
  require(e >= 1 && e <= d, Errc::InvalidArgument, "e must lie in [1, d]");
  require((q - 1) % d == 0, Errc::RootsOfUnityMissing, "d does not divide q - 1");
  const Field field = ff_field_of_size(q);
  require(k >= block_precision_threshold(d, e), Errc::PrecisionTooLow,
          "precision " + std::to_string(k) + " below threshold " + std::to_string(block_precision_threshold(d, e)));
  const QExp v = block_volume_at(d, e, field, k);
  const QExp v_next = block_volume_at(d, e, field, k + 1);
  require(v == v_next, Errc::PrecisionTooLow, "volume not stable between k and k+1");
  return v;
}

// ---------------------------------------------------------------------------
// n-dimensional fibers and totals for diagonal abelian actions.

/// Point of a twisted stratum, with coordinates in F_{q^E}; empty means the origin.
struct StratumPoint {
  std::vector<FieldSpec::Elem> coords;
};

struct OrbTarget {
  TorsorClass cls;  // ram = inertia element gamma, unr = twist tau
  StratumPoint point;
};

namespace detail {

struct StratumGeometry {
  Field big;
  std::vector<FieldSpec::Elem> embed;
};

inline StratumGeometry stratum_geometry(const LinearDiagonalModel& model) {
  const Field big = ff_make_field(model.field->p(), static_cast<int>(model.field->m() * model.group.exponent()));
  return {big, ff_embedding(model.field, big)};
}

/// Product of per-coordinate block volumes: q^{-1} on fixed coordinates and r * mu(S_{r,w_i})
/// on moving ones (the 1/r of each 1-d quotient is replaced by a single 1/|Stab|).
inline QExp sector_block_product(const ShiftRecord& rec, const Field& field, std::int64_t k) {
  QExp prod = Rational(1);
  for (auto wi : rec.exponents) {
    if (wi == 0) {
      prod *= orb_fiber_volume_1d(1, 1, field->q(), std::max<std::int64_t>(k, 3));
    } else {
      prod *= orb_fiber_volume_1d(rec.order, wi, field->q(), k) * Rational(rec.order);
    }
  }
  return prod.normalize(field->q());
}

}  // namespace detail

/// Minimal precision accepted by every block of every sector.
inline std::int64_t orb_precision_threshold(const LinearDiagonalModel& model) {
  return block_precision_threshold(model.group.exponent(), model.group.exponent());
}

inline QExp orb_fiber_volume(const LinearDiagonalModel& model, const OrbTarget& target, std::int64_t k,
                             std::int64_t xi_exponent = 1) {
  require(target.cls.owner == model.group, Errc::OwnerMismatch, "torsor class of a different group");
  const auto rec = shift_of(model, target.cls.ram, xi_exponent);
  const auto geo = detail::stratum_geometry(model);
  const auto& big = geo.big;
  const std::size_t n = model.dim();
  std::vector<FieldSpec::Elem> y = target.point.coords;
  if (y.empty()) y.assign(n, 0);
  require(y.size() == n, Errc::InvalidArgument, "stratum point has wrong dimension");
  const auto tau = model.group.reduce(target.cls.unr);
  for (std::size_t i = 0; i < n; ++i) {
    require(static_cast<std::int64_t>(y[i]) < big->q(), Errc::InvalidArgument, "coordinate out of range");
    require(y[i] == 0 || rec.exponents[i] == 0, Errc::InvalidArgument, "point is not on the fixed locus of gamma");
    const auto frob = big->pow(y[i], model.field->q());
    require(frob == big->mul(geo.embed[model.scalar(tau, i)], y[i]), Errc::InvalidArgument,
            "point is not rational on the twisted stratum");
  }
  std::int64_t stab = 0;
  for (const auto& a : model.group.elements()) {
    bool fixes = true;
    for (std::size_t i = 0; i < n && fixes; ++i) fixes = y[i] == 0 || model.scalar(a, i) == 1;
    if (fixes) ++stab;
  }
  return (detail::sector_block_product(rec, model.field, k) / Rational(stab)).normalize(model.field->q());
}

inline QExp orb_fiber_volume(const LinearCyclicAction& action, const OrbTarget& target, std::int64_t k) {
  return orb_fiber_volume(action.to_diagonal(), target, k);
}

struct SectorVolume {
  ShiftRecord shift;
  QExp block;              // fiber volume times |Aut(x)|
  Rational stratum_count;  // groupoid count of [V^gamma/Gamma](F_q)
  std::string count_method;
  QExp contribution;
};

struct OrbVolumeReport {
  QExp total;
  std::vector<SectorVolume> sectors;
  std::int64_t precision = 0;
};

/// Groupoid count of [V^gamma/Gamma](F_q): orbit enumeration of the point model when it
/// fits, otherwise the average of twisted counts.
inline std::pair<Rational, std::string> stratum_groupoid_count(const LinearDiagonalModel& model,
                                                               const ShiftRecord& rec) {
  const auto sub = model.restrict_to(fixed_coordinates(rec));
  try {
    return {burnside_check(GammaVarietyAction{sub}).groupoid_count, "orbit-enumeration"};
  } catch (const Error& err) {
    if (err.code() != Errc::ModelTooLarge) throw;
  }
  BigInt total = 0;
  for (const auto& tau : model.group.elements()) total += twist_pointcount(GammaVarietyAction{sub}, tau, 1);
  return {Rational(total) / model.group.order(), "twist-average"};
}

inline OrbVolumeReport orb_volume_report(const LinearDiagonalModel& model, std::int64_t k, std::int64_t xi_exponent = 1) {
  OrbVolumeReport rep;
  rep.precision = k;
  const std::int64_t q = model.field->q();
  for (const auto& rec : shifts(model, xi_exponent)) {
    SectorVolume s;
    s.shift = rec;
    s.block = detail::sector_block_product(rec, model.field, k);
    std::tie(s.stratum_count, s.count_method) = stratum_groupoid_count(model, rec);
    s.contribution = (s.block * s.stratum_count).normalize(q);
    rep.total += s.contribution;
    rep.sectors.push_back(std::move(s));
  }
  rep.total = rep.total.normalize(q);
  return rep;
}

inline QExp orb_total_volume(const LinearDiagonalModel& model, std::int64_t k) { return orb_volume_report(model, k).total; }
inline QExp orb_total_volume(const LinearCyclicAction& action, std::int64_t k) {
  return orb_total_volume(action.to_diagonal(), k);
}

// ---------------------------------------------------------------------------
// Weil volumes of smooth affine schemes over O = F_q[[t]].

/// Integer polynomial in named variables.
struct MPoly {
  std::vector<std::pair<std::int64_t, std::vector<int>>> terms;  // (coefficient, exponents)
};

struct WeilModel {
  std::vector<std::string> vars;
  std::vector<MPoly> equations;
  std::string text;
};

namespace detail {

inline MPoly parse_mpoly(const std::string& s, std::vector<std::string>& vars, bool allow_new) {
  MPoly poly;
  std::size_t pos = 0;
  auto var_index = [&](const std::string& name) -> int {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it != vars.end()) return static_cast<int>(it - vars.begin());
    require(allow_new, Errc::ParseError, "unknown variable '" + name + "'");
    vars.push_back(name);
    return static_cast<int>(vars.size() - 1);
  };
  auto read_uint = [&]() {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos > start, Errc::ParseError, "expected a number in '" + s + "'");
    return std::stoll(s.substr(start, pos - start));
  };
  std::vector<std::pair<std::int64_t, std::vector<std::pair<int, int>>>> raw;
  require(!s.empty(), Errc::ParseError, "empty polynomial");
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else {
      require(raw.empty(), Errc::ParseError, "expected '+' or '-' in '" + s + "'");
    }
    std::int64_t coef = 1;
    std::vector<std::pair<int, int>> factors;
    bool first = true;
    while (true) {
      require(pos < s.size(), Errc::ParseError, "dangling operator in '" + s + "'");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coef *= read_uint();
      } else if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
        std::size_t start = pos;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
        const int v = var_index(s.substr(start, pos - start));
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = static_cast<int>(read_uint());
        }
        factors.emplace_back(v, e);
      } else {
        fail(Errc::ParseError, "unexpected character in '" + s + "'");
      }
      first = false;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    (void)first;
    raw.emplace_back(sign * coef, std::move(factors));
  }
  for (auto& [c, fs] : raw) {
    std::vector<int> ex(vars.size(), 0);
    for (auto [v, e] : fs) ex[static_cast<std::size_t>(v)] += e;
    poly.terms.emplace_back(c, std::move(ex));
  }
  return poly;
}

}  // namespace detail

/// "x,y: x^2+y^2-1; ..." with the variable list optional ("x^2+y^2-1").
/// "x:" is the affine line.
inline WeilModel weil_parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  WeilModel model;
  model.text = text;
  std::string body = s;
  bool fixed_vars = false;
  if (auto colon = s.find(':'); colon != std::string::npos) {
    std::stringstream vs(s.substr(0, colon));
    std::string v;
    while (std::getline(vs, v, ',')) {
      require(!v.empty() && std::isalpha(static_cast<unsigned char>(v[0])), Errc::ParseError, "bad variable name");
      require(std::find(model.vars.begin(), model.vars.end(), v) == model.vars.end(), Errc::ParseError,
              "duplicate variable '" + v + "'");
      model.vars.push_back(v);
    }
    body = s.substr(colon + 1);
    fixed_vars = true;
  }
  std::stringstream es(body);
  std::string eq;
  std::vector<std::string> eqs;
  while (std::getline(es, eq, ';'))
    if (!eq.empty()) eqs.push_back(eq);
  if (!fixed_vars) {
    // Collect names first so variables are ordered alphabetically.
    std::set<std::string> names;
    for (const auto& e : eqs) {
      std::vector<std::string> tmp;
      (void)detail::parse_mpoly(e, tmp, true);
      names.insert(tmp.begin(), tmp.end());
    }
    model.vars.assign(names.begin(), names.end());
  }
  require(!model.vars.empty(), Errc::ParseError, "model has no variables");
  for (const auto& e : eqs) model.equations.push_back(detail::parse_mpoly(e, model.vars, false));
  for (auto& p : model.equations)
    for (auto& [c, ex] : p.terms) ex.resize(model.vars.size(), 0);
  return model;
}

namespace detail {

using Trunc = std::vector<FieldSpec::Elem>;  // coefficients of 1, t, ..., t^{k-1}

inline Trunc trunc_mul(const FieldSpec& f, const Trunc& a, const Trunc& b) {
  Trunc r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j)
      if (b[j] != 0) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

inline Trunc eval_mpoly(const FieldSpec& f, const MPoly& poly, const std::vector<Trunc>& x) {
  const std::size_t k = x.empty() ? 1 : x[0].size();
  Trunc acc(k, 0);
  for (const auto& [c, ex] : poly.terms) {
    Trunc term(k, 0);
    term[0] = f.from_int(c);
    if (term[0] == 0) continue;
    for (std::size_t v = 0; v < ex.size(); ++v)
      for (int e = 0; e < ex[v]; ++e) term = trunc_mul(f, term, x[v]);
    for (std::size_t i = 0; i < k; ++i) acc[i] = f.add(acc[i], term[i]);
  }
  return acc;
}

inline FieldSpec::Elem eval_derivative(const FieldSpec& f, const MPoly& poly, std::size_t var,
                                       const std::vector<FieldSpec::Elem>& x) {
  FieldSpec::Elem acc = 0;
  for (const auto& [c, ex] : poly.terms) {
    if (ex[var] == 0) continue;
    FieldSpec::Elem term = f.from_int(c * ex[var]);
    for (std::size_t v = 0; v < ex.size(); ++v) {
      const int e = v == var ? ex[v] - 1 : ex[v];
      term = f.mul(term, f.pow(x[v], e));
    }
    acc = f.add(acc, term);
  }
  return acc;
}

inline std::size_t rank_over(const FieldSpec& f, std::vector<std::vector<FieldSpec::Elem>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const auto inv = f.inv(m[rank][c]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const auto factor = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

struct WeilReport {
  std::int64_t q = 0;
  std::int64_t dim = 0;
  std::int64_t fq_count = 0;
  std::vector<BigInt> counts;   // #X(O/t^j) for j = 1..k
  std::vector<Rational> ratios;  // counts[j-1] / q^{j dim}
  Rational formula;              // #X(F_q) / q^dim
  bool stable() const {
    return std::all_of(ratios.begin(), ratios.end(), [this](const Rational& r) { return r == formula; });
  }
};

inline constexpr std::int64_t kMaxLiftCandidates = 50'000'000;

/// Counts #X(O/t^j) by lifting solutions one t-adic digit at a time.
inline WeilReport weil_report(const WeilModel& model, std::int64_t q, std::int64_t k) {
  require(k >= 1, Errc::InvalidArgument, "k must be positive");
  const Field field = ff_field_of_size(q);
  const auto& f = *field;
  const std::size_t n = model.vars.size();
  const std::size_t r = model.equations.size();
  require(r <= n, Errc::InvalidArgument, "more equations than variables");
  WeilReport rep;
  rep.q = q;
  rep.dim = static_cast<std::int64_t>(n - r);

  std::int64_t box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    box *= q;
    require(box <= kMaxModelPoints, Errc::ModelTooLarge, "F_q-points of the ambient space exceed 10^6");
  }
  std::vector<std::vector<detail::Trunc>> sols;
  for (std::int64_t idx = 0; idx < box; ++idx) {
    std::vector<detail::Trunc> x(n, detail::Trunc(1, 0));
    std::int64_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      x[i][0] = static_cast<FieldSpec::Elem>(rest % q);
      rest /= q;
    }
    bool ok = true;
    for (const auto& eq : model.equations) ok = ok && detail::eval_mpoly(f, eq, x)[0] == 0;
    if (!ok) continue;
    std::vector<std::vector<FieldSpec::Elem>> jac(r, std::vector<FieldSpec::Elem>(n));
    std::vector<FieldSpec::Elem> pt(n);
    for (std::size_t i = 0; i < n; ++i) pt[i] = x[i][0];
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < n; ++b) jac[a][b] = detail::eval_derivative(f, model.equations[a], b, pt);
    require(detail::rank_over(f, jac) == r, Errc::SingularReduction, "Jacobian drops rank at an F_q-point");
    sols.push_back(std::move(x));
  }
  rep.fq_count = static_cast<std::int64_t>(sols.size());
  BigInt qdim = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(rep.dim));
  rep.formula = Rational(rep.fq_count) / Rational(qdim);
  rep.counts.push_back(rep.fq_count);
  rep.ratios.push_back(rep.formula);
  for (std::int64_t j = 1; j < k; ++j) {
    require(static_cast<long double>(sols.size()) * static_cast<long double>(box) <= kMaxLiftCandidates,
            Errc::ModelTooLarge, "lifting enumeration exceeds budget");
    std::vector<std::vector<detail::Trunc>> next;
    for (const auto& s : sols) {
      for (std::int64_t idx = 0; idx < box; ++idx) {
        std::vector<detail::Trunc> x = s;
        std::int64_t rest = idx;
        for (std::size_t i = 0; i < n; ++i) {
          x[i].push_back(static_cast<FieldSpec::Elem>(rest % q));
          rest /= q;
        }
        bool ok = true;
        for (const auto& eq : model.equations) {
          const auto val = detail::eval_mpoly(f, eq, x);
          ok = std::all_of(val.begin(), val.end(), [](FieldSpec::Elem c) { return c == 0; });
          if (!ok) break;
        }
        if (ok) next.push_back(std::move(x));
      }
    }
    sols = std::move(next);
    rep.counts.push_back(static_cast<std::int64_t>(sols.size()));
    const BigInt denom = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>((j + 1) * rep.dim));
    rep.ratios.push_back(Rational(rep.counts.back()) / Rational(denom));
  }
  return rep;
}

/// #X(O/t^k) / q^{k dim}.
inline Rational weil_volume(const WeilModel& model, std::int64_t q, std::int64_t k) {
  return weil_report(model, q, k).ratios.back();
}

}  // namespace padic
