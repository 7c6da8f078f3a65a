#pragma once

// The acceptance battery: one criterion per verified identity, each with an exact
// verdict, a runtime budget and a deterministic detail record.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic/catalog.hpp"
#include "padic/duality.hpp"
#include "padic/galois.hpp"
#include "padic/mirrorsim.hpp"
#include "padic/orbifold.hpp"
#include "padic/parallel.hpp"
#include "padic/report.hpp"
#include "padic/stringy.hpp"

namespace padic {

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string anchor;
  std::string summary;
  bool exact_pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0 = no budget
  Json detail;
  bool pass() const { return exact_pass && (limit_seconds <= 0 || seconds < limit_seconds); }
};

struct Criterion {
  int id;
  std::string key;
  std::string anchor;
  double limit_seconds;
  std::function<CriterionResult(std::uint64_t seed)> run;
};

namespace suite_detail {

inline CriterionResult weil_volume(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json models = Json::array();
  int smooth = 0;
  for (const auto& m : builtin_weil_models()) {
    const auto model = weil_parse(m.text);
    const auto rep = weil_report(model, m.q, 3);
    Json counts = Json::array(), ratios = Json::array();
    for (const auto& c : rep.counts) counts.push_back(c.str());
    for (const auto& x : rep.ratios) ratios.push_back(to_string(x));
    models.push_back({{"model", m.text}, {"q", m.q}, {"dim", rep.dim}, {"fq_count", rep.fq_count},
                      {"counts_k1_k2_k3", counts}, {"ratios", ratios}, {"formula", to_string(rep.formula)},
                      {"stable", rep.stable()}});
    r.exact_pass = r.exact_pass && rep.stable();
    if (m.q == 3 || m.q == 5 || m.q == 7) ++smooth;
  }
  r.exact_pass = r.exact_pass && smooth >= 5;
  r.detail = {{"models", models}};
  r.summary = std::to_string(models.size()) + " smooth models, #X(O/t^k)/q^(k dim) constant for k=1..3";
  return r;
}

inline CriterionResult orbifold_fiber(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json cases = Json::array();
  for (std::int64_t d : {2, 3, 4})
    for (std::int64_t q : {5, 7, 13}) {
      if ((q - 1) % d != 0) continue;
      for (std::int64_t e = 1; e <= d; ++e) {
        const std::int64_t k = block_precision_threshold(d, e);
        const QExp finite = orb_fiber_volume_1d(d, e, q, k);
        const QExp closed = block_closed_form(d, e, q);
        const bool eq = finite == closed;
        r.exact_pass = r.exact_pass && eq;
        cases.push_back({{"d", d}, {"e", e}, {"q", q}, {"k", k}, {"finite_level", to_json(finite)},
                         {"closed_form", to_json(closed)}, {"equal", eq}});
      }
    }
  r.detail = {{"cases", cases}};
  r.summary = std::to_string(cases.size()) + " (d,e,q) blocks equal q^(-e/d)/d";
  return r;
}

inline CriterionResult volume_stringy(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json rows = Json::array();
  const auto models = builtin_action_models();
  const auto results = parallel_map<Json>(models.size(), [&](std::size_t i) {
    const auto& m = models[i].model;
    const std::int64_t q = m.field->q();
    const std::int64_t k = orb_precision_threshold(m);
    const QExp vol = orb_total_volume(m, k);
    const QExp st = stringy_count(strata_from_action(m));
    const QExp scaled = (vol * QExp::power(Rational(static_cast<std::int64_t>(m.dim())))).normalize(q);
    return Json{{"model", models[i].name}, {"k", k}, {"volume", to_json(vol)}, {"stringy_count", to_json(st)},
                {"equal", scaled.equal_at(st, q)}};
  });
  for (const auto& row : results) {
    r.exact_pass = r.exact_pass && row["equal"].get<bool>();
    rows.push_back(row);
  }
  r.detail = {{"models", rows}};
  r.summary = std::to_string(rows.size()) + " action models, vol * q^n = stringy count";
  return r;
}

inline CriterionResult stringy_sanity(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json a1 = Json::array();
  const EPoly expected = EPoly::xy_power(2) + EPoly::xy_power(1);
  for (std::int64_t q : {3, 5, 7, 9}) {
    const auto table = strata_from_action(LinearCyclicAction(2, {1, 1}, q));
    const EPoly e = stringy_epoly(table);
    const QExp c = stringy_count(table);
    const bool ok = e == expected && e.specialize().equal_at(c, q);
    r.exact_pass = r.exact_pass && ok;
    a1.push_back({{"q", q}, {"epoly", to_json(e)}, {"count", to_json(c)}, {"pass", ok}});
  }
  Json reindex = Json::array();
  for (const auto& nm : builtin_action_models()) {
    const auto& m = nm.model;
    const std::int64_t n = m.group.order();
    if (n > 6) continue;
    const auto table = strata_from_action(m);
    std::vector<std::optional<GerbeData>> gerbes{std::nullopt, GerbeData::trivial(m.group)};
    if (m.group.rank() == 1) gerbes.push_back(GerbeData::from_form(m.group, m.group.exponent(), {{1}}));
    bool ok = true;
    std::int64_t tried = 0;
    for (const auto& g : gerbes) {
      const QExp base_count = stringy_count(table, g);
      const EPoly base_epoly = stringy_epoly(table, g);
      if (g && g->is_trivial()) ok = ok && base_count == stringy_count(table) && base_epoly == stringy_epoly(table);
      ok = ok && base_epoly.specialize().equal_at(base_count, m.field->q());
      for (std::int64_t c = 1; c <= std::max<std::int64_t>(n, 1); ++c) {
        if (std::gcd(c, n) != 1) continue;
        const auto t2 = xi_reindex(table, c);
        ok = ok && stringy_count(t2, g) == base_count && stringy_epoly(t2, g) == base_epoly;
        ++tried;
      }
    }
    r.exact_pass = r.exact_pass && ok;
    reindex.push_back({{"model", nm.name}, {"reindexings_checked", tried}, {"pass", ok}});
  }
  r.detail = {{"a2_mod_mu2", a1}, {"xi_reindex", reindex}};
  r.summary = "E_st(A^2/mu_2) = (xy)^2 + xy; xi-reindexing invariance on " + std::to_string(reindex.size()) + " models";
  return r;
}

inline CriterionResult twisting(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json rows = Json::array();
  const auto toys = builtin_toy_models();
  const auto results = parallel_map<Json>(toys.size(), [&](std::size_t i) {
    const auto& action = toys[i].action;
    const auto b = burnside_check(action);
    bool zeta = true;
    Json counts = Json::array();
    for (const auto& tau : action_group(action).elements()) {
      Json per_m = Json::array();
      for (std::int64_t m = 1; m <= 4; ++m) {
        const auto direct = twist_pointcount(action, tau, m);
        const auto enumerated = twist_pointcount_by_enumeration(action, tau, m);
        zeta = zeta && direct == enumerated;
        per_m.push_back(direct.str());
      }
      counts.push_back({{"tau", to_json(tau)}, {"counts_m1_to_m4", per_m}});
    }
    return Json{{"model", toys[i].name}, {"groupoid_count", to_string(b.groupoid_count)},
                {"twist_average", to_string(b.twist_average)}, {"burnside_equal", b.equal()},
                {"zeta_consistent", zeta}, {"twisted_counts", counts}};
  });
  for (const auto& row : results) {
    r.exact_pass = r.exact_pass && row["burnside_equal"].get<bool>() && row["zeta_consistent"].get<bool>();
    rows.push_back(row);
  }
  r.detail = {{"models", rows}};
  r.summary = std::to_string(rows.size()) + " toy models: Burnside equality and twisted counts for m <= 4";
  return r;
}

struct BatteryEntry {
  std::int64_t q = 0, n = 0;
  std::vector<EllipticCurveModel> curves;
  std::vector<UnramifiedModule> modules;
  std::int64_t skipped = 0;  // torsion field beyond scale
};

inline constexpr std::size_t kBatteryTarget = 30;
inline constexpr std::size_t kBatteryMinimum = 20;

/// First curves (in coefficient order) whose n-torsion field is within scale.
inline const std::vector<BatteryEntry>& curve_battery() {
  static std::once_flag once;
  static std::vector<BatteryEntry> battery;
  std::call_once(once, [] {
    std::vector<std::pair<std::int64_t, std::int64_t>> jobs;
    for (std::int64_t q : {5, 7, 13})
      for (std::int64_t n : {2, 3, 4}) jobs.emplace_back(q, n);
    battery = parallel_map<BatteryEntry>(jobs.size(), [&](std::size_t i) {
      BatteryEntry entry;
      entry.q = jobs[i].first;
      entry.n = jobs[i].second;
      for (const auto& E : short_weierstrass_curves(entry.q)) {
        if (entry.curves.size() >= kBatteryTarget) break;
        try {
          entry.modules.push_back(ec_torsion_module(E, entry.n));
          entry.curves.push_back(E);
        } catch (const Error& e) {
          if (e.code() != Errc::TorsionFieldTooLarge) throw;
          ++entry.skipped;
        }
      }
      return entry;
    });
  });
  return battery;
}

inline Json curve_json(const EllipticCurveModel& E) {
  Json c = Json::array();
  for (auto a : E.coeffs()) c.push_back(a);
  return c;
}

inline CriterionResult euler(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json groups = Json::array();
  for (const auto& entry : curve_battery()) {
    Json curves = Json::array();
    bool ok = entry.curves.size() >= kBatteryMinimum;
    for (std::size_t i = 0; i < entry.curves.size(); ++i) {
      const auto& M = entry.modules[i];
      const auto rep = check_euler(M);
      const bool symmetric = h1_size(M) == h1_size(M.dual());
      ok = ok && rep.pass && symmetric;
      curves.push_back({{"curve", curve_json(entry.curves[i])}, {"h1", rep.h1}, {"M_F", rep.invariants},
                        {"Mdual_F", rep.dual_invariants}, {"dual_h1_equal", symmetric}, {"pass", rep.pass}});
    }
    r.exact_pass = r.exact_pass && ok;
    groups.push_back({{"q", entry.q}, {"n", entry.n}, {"curves_checked", entry.curves.size()},
                      {"skipped_torsion_field_too_large", entry.skipped}, {"pass", ok}, {"curves", curves}});
  }
  r.detail = {{"battery", groups}};
  r.summary = "|H^1| = |M(F)||M^dual(F)| on the curve battery over F_5, F_7, F_13, n = 2,3,4";
  return r;
}

inline CriterionResult selfdual(std::uint64_t) {
  CriterionResult r;
  r.exact_pass = true;
  Json groups = Json::array();
  for (const auto& entry : curve_battery()) {
    bool ok = entry.curves.size() >= kBatteryMinimum;
    Json curves = Json::array();
    for (const auto& E : entry.curves) {
      const auto rep = check_selfdual(E, entry.n);
      ok = ok && rep.pass;
      curves.push_back({{"curve", curve_json(E)}, {"order", rep.group_order}, {"quotient", rep.quotient},
                        {"kernel", rep.kernel}, {"pass", rep.pass}});
    }
    r.exact_pass = r.exact_pass && ok;
    groups.push_back({{"q", entry.q}, {"n", entry.n}, {"pass", ok}, {"curves", curves}});
  }
  r.detail = {{"battery", groups}};
  r.summary = "|E(F_q)/nE(F_q)| = |E[n](F_q)| on the same battery";
  return r;
}

inline CriterionResult mirror(std::uint64_t seed) {
  CriterionResult r;
  r.exact_pass = true;
  std::int64_t fibers = 0, vanishing = 0, groups_checked = 0;
  bool ok = true;
  const auto groups = all_abelian_groups(64);
  auto check_fiber = [&](const FiberModel& f, const GroupElement& g0, const GroupElement& h0) {
    const auto fi = fiber_integrals(f);
    ++fibers;
    ok = ok && fi.I1 == fi.I2;
    if (fi.case_label == 2 || fi.case_label == 3) {
      ok = ok && fi.I1 == 0 && fi.I2 == 0;
      ++vanishing;
    }
    if (fi.case_label != 1) {
      const auto tr = fiber_integrals_translated(f, g0, h0);
      ok = ok && tr.I1 == fi.I1 && tr.I2 == fi.I2;
    }
  };
  for (const auto& G : groups) {
    if (G.is_trivial()) continue;
    ++groups_checked;
    // phi in {id, [2], [3], 0} on G, plus the zero map to every other group of the same order up to 16.
    std::vector<std::pair<FinAbGroup, std::vector<GroupElement>>> maps;
    for (std::int64_t mult : {1, 2, 3, 0}) {
      std::vector<GroupElement> phi;
      for (std::size_t i = 0; i < G.rank(); ++i) {
        GroupElement e = G.identity();
        e[i] = mult;
        phi.push_back(G.reduce(e));
      }
      maps.emplace_back(G, std::move(phi));
    }
    if (G.order() <= 16)
      for (const auto& H : groups)
        if (H.order() == G.order() && !(H == G)) maps.emplace_back(H, std::vector<GroupElement>(G.rank(), H.identity()));
    const auto g0 = G.element_at(G.order() - 1);
    for (const auto& [H, phi] : maps) {
      FiberModel proto{G, H, phi, Character::trivial(H), Character::trivial(G), Rational(G.order()), 0, 0};
      const auto kb = kernel_bookkeeping(proto);
      ok = ok && kb.pass;
      const auto h0 = H.element_at(H.order() - 1);
      for (const auto& t1 : all_characters(H))
        for (const auto& t2 : all_characters(G)) {
          FiberModel f = proto;
          f.t1 = t1;
          f.t2 = t2;
          check_fiber(f, g0, h0);
        }
    }
  }
  // Seeded random models from curves.
  Json random = Json::array();
  for (std::int64_t q : {5, 7, 13}) {
    const auto curves = short_weierstrass_curves(q);
    for (std::size_t i = 0; i < 4 && i < curves.size(); ++i)
      for (std::int64_t n : {2, 3}) {
        const auto model = make_model_from_curve(curves[i], n, 100, seed + i);
        const auto gi = global_identity(model);
        bool fiberwise = true, bookkeeping = true;
        for (const auto& fi : gi.fibers) fiberwise = fiberwise && fi.I1 == fi.I2;
        for (const auto& f : model.fibers) bookkeeping = bookkeeping && kernel_bookkeeping(f).pass;
        ok = ok && gi.pass && fiberwise && bookkeeping;
        random.push_back({{"curve", curve_json(curves[i])}, {"q", q}, {"n", n}, {"fibers", model.fibers.size()},
                          {"sum_I1", to_string(gi.sum1)}, {"sum_I2", to_string(gi.sum2)}, {"pass", gi.pass && fiberwise && bookkeeping}});
      }
  }
  r.exact_pass = ok;
  r.detail = {{"exhaustive_groups", groups_checked}, {"exhaustive_fibers", fibers},
              {"case_2_3_fibers_vanishing", vanishing}, {"random_models", random}};
  r.summary = std::to_string(fibers) + " exhaustive fibers and " + std::to_string(random.size()) +
              " seeded 100-fiber models with I1 = I2";
  return r;
}

inline CriterionResult pairing(std::uint64_t) {
  CriterionResult r;
  bool ok = true;
  Json rows = Json::array();
  for (const auto& g : all_abelian_groups(8)) {
    const std::int64_t q = admissible_field_size(g);
    const LocalFieldSpec F(ff_field_of_size(q), 8);
    const auto classes = h1_enumerate(g, F);
    const std::size_t n = classes.size();
    const std::int64_t e = g.exponent();
    auto index_of = [&](const TorsorClass& c) {
      return static_cast<std::size_t>(g.index_of(c.unr) * g.order() + g.index_of(c.ram));
    };
    // Pairing values as k / exponent.
    std::vector<std::vector<std::int64_t>> table(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational v = h1_pairing(classes[i], classes[j]) * e;
        table[i][j] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
      }
    std::vector<std::vector<std::size_t>> sum(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] = index_of(h1_add(classes[i], classes[j]));
    bool skew = true, additive = true, nondegenerate = true, annihilates = true;
    for (std::size_t i = 0; i < n; ++i) {
      bool radical = true;
      for (std::size_t j = 0; j < n; ++j) {
        skew = skew && mod(table[i][j] + table[j][i], e) == 0;
        if (table[i][j] != 0) radical = false;
        const bool both_unr = classes[i].is_unramified() && classes[j].is_unramified();
        const bool both_tame = g.is_identity(classes[i].unr) && g.is_identity(classes[j].unr);
        if (both_unr || both_tame) annihilates = annihilates && table[i][j] == 0;
        for (std::size_t k = 0; k < n; ++k)
          additive = additive && mod(table[sum[i][j]][k] - table[i][k] - table[j][k], e) == 0;
      }
      if (radical && i != 0) nondegenerate = false;
    }
    const bool pass = skew && additive && nondegenerate && annihilates;
    ok = ok && pass;
    rows.push_back({{"group", g.to_string()}, {"q", q}, {"classes", n}, {"skew", skew}, {"bi_additive", additive},
                    {"nondegenerate", nondegenerate}, {"unramified_isotropic", annihilates}, {"pass", pass}});
  }
  r.exact_pass = ok;
  r.detail = {{"groups", rows}};
  r.summary = "skew, bi-additive, nondegenerate, unramified-isotropic on " + std::to_string(rows.size()) +
              " groups of order <= 8";
  return r;
}

}  // namespace suite_detail

inline const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> list{
      {1, "weil-volume", "weil-volume-formula", 10, suite_detail::weil_volume},
      {2, "orbifold-fiber-volume", "orbifold-fiber-volume-theorem", 60, suite_detail::orbifold_fiber},
      {3, "volume-equals-stringy", "volume-equals-stringy-count", 30, suite_detail::volume_stringy},
      {4, "stringy-sanity", "stringy-epolynomial-and-xi-independence", 0, suite_detail::stringy_sanity},
      {5, "twisting", "twisted-point-counts-burnside", 0, suite_detail::twisting},
      {6, "euler", "local-euler-characteristic-formula", 120, suite_detail::euler},
      {7, "selfdual", "self-dual-isogeny-cardinality", 0, suite_detail::selfdual},
      {8, "mirror", "fibrewise-and-global-mirror-identity", 30, suite_detail::mirror},
      {9, "pairing", "local-pairing-skew-annihilator", 0, suite_detail::pairing},
  };
  return list;
}

/// Runs criteria whose key contains filter (all when empty), in order.
inline std::vector<CriterionResult> run_suite(const std::string& filter, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria()) {
    if (!filter.empty() && c.key.find(filter) == std::string::npos) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c.run(seed);
    } catch (const std::exception& e) {
      r.exact_pass = false;
      r.summary = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.id = c.id;
    r.key = c.key;
    r.anchor = c.anchor;
    r.limit_seconds = c.limit_seconds;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace padic
