#pragma once

// Versioned run configurations and the per-command report builders behind the
// command-line driver.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padic/catalog.hpp"
#include "padic/duality.hpp"
#include "padic/mirrorsim.hpp"
#include "padic/orbifold.hpp"
#include "padic/report.hpp"
#include "padic/stringy.hpp"
#include "padic/suite.hpp"

namespace padic {

enum class ExitCode : int { Ok = 0, CheckFailed = 1, InvalidInput = 2 };

struct RunConfig {
  int version = 1;
  std::string command;
  std::map<std::string, std::string> params;

  static const std::map<std::string, std::vector<std::string>>& allowed_keys() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"orbvol", {"d", "weights", "q", "group", "characters", "k"}},
        {"stringy", {"d", "weights", "q", "group", "characters", "gerbe_form", "gerbe_order"}},
        {"weil", {"model", "q", "k"}},
        {"twist-count", {"d", "weights", "q", "group", "characters", "toy", "tau", "m"}},
        {"euler", {"curve", "q", "n"}},
        {"selfdual", {"curve", "q", "n"}},
        {"mirror-sim", {"curve", "q", "n", "base_size", "seed", "xi"}},
        {"suite", {"filter", "seed"}},
    };
    return keys;
  }

  void validate() const {
    require(version == 1, Errc::ParseError, "unsupported config version " + std::to_string(version));
    const auto& keys = allowed_keys();
    auto it = keys.find(command);
    require(it != keys.end(), Errc::ParseError, "unknown command '" + command + "'");
    for (const auto& [k, v] : params) {
      (void)v;
      require(std::find(it->second.begin(), it->second.end(), k) != it->second.end(), Errc::ParseError,
              "unknown key '" + k + "' for command " + command);
    }
  }

  /// "key = value" lines; '#' starts a comment.
  static RunConfig parse_text(const std::string& text) {
    RunConfig cfg;
    cfg.version = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      require(eq != std::string::npos, Errc::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      require(!key.empty(), Errc::ParseError, "line " + std::to_string(lineno) + ": empty key");
      if (key == "version") {
        try {
          cfg.version = std::stoi(value);
        } catch (const std::exception&) {
          fail(Errc::ParseError, "version must be an integer");
        }
      } else if (key == "command") {
        cfg.command = value;
      } else {
        require(cfg.params.emplace(key, value).second, Errc::ParseError, "duplicate key '" + key + "'");
      }
    }
    cfg.validate();
    return cfg;
  }

  std::string to_text() const {
    std::string s = "version = " + std::to_string(version) + "\ncommand = " + command + "\n";
    for (const auto& [k, v] : params) s += k + " = " + v + "\n";
    return s;
  }

  Json to_json() const {
    Json j;
    j["version"] = version;
    j["command"] = command;
    for (const auto& [k, v] : params) j[k] = v;
    return j;
  }

  static RunConfig from_json(const Json& j) {
    require(j.is_object(), Errc::ParseError, "config must be an object");
    RunConfig cfg;
    cfg.version = 0;
    for (const auto& [k, v] : j.items()) {
      if (k == "version") {
        require(v.is_number_integer(), Errc::ParseError, "version must be an integer");
        cfg.version = v.get<int>();
      } else if (k == "command") {
        cfg.command = v.get<std::string>();
      } else {
        require(v.is_string(), Errc::ParseError, "parameter '" + k + "' must be a string");
        cfg.params[k] = v.get<std::string>();
      }
    }
    cfg.validate();
    return cfg;
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  }
  std::string need(const std::string& key) const {
    auto v = get(key);
    require(v.has_value(), Errc::ParseError, "missing parameter '" + key + "' for " + command);
    return *v;
  }
};

namespace cli_detail {

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    require(used == s.size(), Errc::ParseError, "bad integer for " + what + ": '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(Errc::ParseError, "bad integer for " + what + ": '" + s + "'");
  }
}

inline std::vector<std::int64_t> parse_int_list(std::string s, const std::string& what) {
  std::erase_if(s, [](char c) { return c == '[' || c == ']' || c == ' '; });
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, what));
  require(!out.empty(), Errc::ParseError, "empty list for " + what);
  return out;
}

/// Action from either (d, weights, q) or (group, characters, q); characters are ';'-separated tuples.
inline LinearDiagonalModel parse_action(const RunConfig& cfg) {
  const std::int64_t q = parse_int(cfg.need("q"), "q");
  if (auto group = cfg.get("group")) {
    require(!cfg.get("d") && !cfg.get("weights"), Errc::ParseError, "give either d/weights or group/characters");
    const FinAbGroup g = FinAbGroup::parse(*group);
    std::vector<Character> coords;
    std::stringstream ss(cfg.need("characters"));
    std::string item;
    while (std::getline(ss, item, ';')) coords.emplace_back(g, parse_element(g, item));
    return {g, ff_field_of_size(q), std::move(coords)};
  }
  const std::int64_t d = parse_int(cfg.need("d"), "d");
  return LinearCyclicAction(d, parse_int_list(cfg.need("weights"), "weights"), q).to_diagonal();
}

inline EllipticCurveModel parse_curve(const RunConfig& cfg) {
  const std::int64_t q = parse_int(cfg.need("q"), "q");
  const Field f = ff_field_of_size(q);
  auto c = parse_int_list(cfg.need("curve"), "curve");
  require(c.size() == 5, Errc::ParseError, "curve needs [a1,a2,a3,a4,a6]");
  std::array<std::int64_t, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) {
    if (f->m() == 1) c[i] = mod(c[i], q);
    require(c[i] >= 0 && c[i] < q, Errc::ParseError, "curve coefficient out of range for F_" + std::to_string(q));
    a[i] = c[i];
  }
  return {f, a};
}

inline Json shift_json(const ShiftRecord& s) {
  return {{"element", to_json(s.element)}, {"order", s.order}, {"F", to_string(s.F)}, {"w", to_string(s.w)},
          {"fixed_dim", s.fixed_dim}};
}

inline Json matrix_json(const ModMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (auto v : r) row.push_back(v);
    rows.push_back(row);
  }
  return rows;
}

inline Json group_json(const FinAbGroup& g) { return g.to_string(); }

inline void run_orbvol(const RunConfig& cfg, Report& rep) {
  const auto model = parse_action(cfg);
  const std::int64_t q = model.field->q();
  const std::int64_t k = cfg.get("k") ? parse_int(*cfg.get("k"), "k") : orb_precision_threshold(model);
  const auto vol = orb_volume_report(model, k);
  const QExp stringy = stringy_count(strata_from_action(model));
  const QExp expected = (stringy * QExp::power(-Rational(static_cast<std::int64_t>(model.dim())))).normalize(q);
  Json sectors = Json::array();
  bool blocks_ok = true;
  for (const auto& s : vol.sectors) {
    const QExp closed = QExp::power(-s.shift.w).normalize(q);
    blocks_ok = blocks_ok && s.block == closed;
    Json row = shift_json(s.shift);
    row["block_volume"] = to_json(s.block);
    row["closed_form_q^-w"] = to_json(closed);
    row["stratum_groupoid_count"] = to_string(s.stratum_count);
    row["count_method"] = s.count_method;
    row["contribution"] = to_json(s.contribution);
    sectors.push_back(row);
  }
  rep.outputs["group"] = group_json(model.group);
  rep.outputs["q"] = q;
  rep.outputs["dim"] = model.dim();
  rep.outputs["total_volume"] = to_json(vol.total);
  rep.outputs["stringy_count_over_q^n"] = to_json(expected);
  rep.outputs["sectors"] = sectors;
  rep.precision_used = k;
  rep.check("sector-volume-equals-q^-w", "orbifold-fiber-volume-theorem", blocks_ok);
  rep.check("total-volume-equals-stringy-count", "volume-equals-stringy-count", vol.total.equal_at(expected, q));
}

inline void run_stringy(const RunConfig& cfg, Report& rep) {
  const auto model = parse_action(cfg);
  const std::int64_t q = model.field->q();
  auto table = strata_from_action(model);
  std::optional<GerbeData> gerbe;
  if (auto form = cfg.get("gerbe_form")) {
    ModMatrix m;
    std::stringstream ss(*form);
    std::string row;
    while (std::getline(ss, row, ';')) m.push_back(parse_int_list(row, "gerbe_form"));
    const std::int64_t r = cfg.get("gerbe_order") ? parse_int(*cfg.get("gerbe_order"), "gerbe_order") : model.group.exponent();
    gerbe = GerbeData::from_form(model.group, r, m);
  } else {
    require(!cfg.get("gerbe_order"), Errc::ParseError, "gerbe_order given without gerbe_form");
  }
  const QExp count = stringy_count(table, gerbe);
  const EPoly epoly = stringy_epoly(table, gerbe);
  bool xi_ok = true;
  const std::int64_t n = model.group.order();
  for (std::int64_t c = 1; c <= n; ++c) {
    if (std::gcd(c, n) != 1) continue;
    const auto t2 = xi_reindex(table, c);
    xi_ok = xi_ok && stringy_count(t2, gerbe) == count && stringy_epoly(t2, gerbe) == epoly;
  }
  Json sectors = Json::array();
  for (const auto& row : table.rows) {
    Json j = shift_json(row.shift);
    j["count"] = to_json(row.count);
    j["epoly"] = to_json(row.epoly);
    if (gerbe) j["kappa"] = to_json(gerbe->kappa(row.shift.element).exps());
    sectors.push_back(j);
  }
  rep.outputs["group"] = group_json(model.group);
  rep.outputs["q"] = q;
  rep.outputs["count_terms"] = to_json(count);
  rep.outputs["epoly_terms"] = to_json(epoly);
  rep.outputs["sector_breakdown"] = sectors;
  rep.outputs["xi_invariance_checked"] = true;
  if (gerbe) rep.outputs["gerbe_bilinear"] = gerbe->is_bilinear();
  rep.check("epoly-specializes-to-count", "stringy-epolynomial", epoly.specialize().equal_at(count, q));
  rep.check("xi-reindex-invariance", "stringy-invariants-independent-of-xi", xi_ok);
  if (gerbe && gerbe->is_trivial())
    rep.check("trivial-gerbe-gives-untwisted", "twisted-stringy-count", count == stringy_count(table));
}

inline void run_weil(const RunConfig& cfg, Report& rep) {
  const auto model = weil_parse(cfg.need("model"));
  const std::int64_t q = parse_int(cfg.need("q"), "q");
  const std::int64_t k = cfg.get("k") ? parse_int(*cfg.get("k"), "k") : 3;
  const auto r = weil_report(model, q, k);
  Json counts = Json::array(), ratios = Json::array();
  for (const auto& c : r.counts) counts.push_back(c.str());
  for (const auto& x : r.ratios) ratios.push_back(to_string(x));
  Json vars = Json::array();
  for (const auto& v : model.vars) vars.push_back(v);
  rep.outputs["variables"] = vars;
  rep.outputs["dim"] = r.dim;
  rep.outputs["fq_count"] = r.fq_count;
  rep.outputs["counts"] = counts;
  rep.outputs["ratios"] = ratios;
  rep.outputs["volume"] = to_string(r.ratios.back());
  rep.outputs["formula"] = to_string(r.formula);
  rep.precision_used = k;
  rep.check("ratio-independent-of-k", "weil-volume-formula", r.stable());
}

inline void run_twist_count(const RunConfig& cfg, Report& rep) {
  std::optional<GammaVarietyAction> action;
  if (auto toy = cfg.get("toy")) {
    for (auto& t : builtin_toy_models())
      if (t.name == *toy) action = t.action;
    require(action.has_value(), Errc::ParseError, "unknown toy model '" + *toy + "'");
  } else {
    action = GammaVarietyAction{parse_action(cfg)};
  }
  const FinAbGroup& g = action_group(*action);
  std::vector<GroupElement> taus;
  if (auto tau = cfg.get("tau")) {
    taus.push_back(parse_element(g, *tau));
  } else {
    taus = g.elements();
  }
  std::vector<std::int64_t> ms{1, 2, 3, 4};
  if (auto m = cfg.get("m")) ms = {parse_int(*m, "m")};
  Json rows = Json::array();
  bool consistent = true, skipped = false;
  for (const auto& tau : taus)
    for (auto m : ms) {
      const auto direct = twist_pointcount(*action, tau, m);
      Json row{{"tau", to_json(tau)}, {"m", m}, {"count", direct.str()}};
      try {
        const auto other = twist_pointcount_by_enumeration(*action, tau, m);
        row["enumerated"] = other.str();
        consistent = consistent && other == direct;
      } catch (const Error& e) {
        if (e.code() != Errc::ModelTooLarge) throw;
        row["enumerated"] = "skipped: field beyond 10^6";
        skipped = true;
      }
      rows.push_back(row);
    }
  rep.outputs["group"] = group_json(g);
  rep.outputs["counts"] = rows;
  rep.check("twist-count-matches-enumeration", "twisted-point-counts-frobenius", consistent);
  rep.outputs["enumeration_skipped"] = skipped;
  try {
    const auto b = burnside_check(*action);
    rep.outputs["groupoid_count"] = to_string(b.groupoid_count);
    rep.outputs["twist_average"] = to_string(b.twist_average);
    rep.check("burnside-groupoid-equals-twist-average", "twisted-point-counts-burnside", b.equal());
  } catch (const Error& e) {
    if (e.code() != Errc::ModelTooLarge) throw;
    rep.outputs["groupoid_count"] = "skipped: point model beyond 10^6";
  }
}

inline void run_euler(const RunConfig& cfg, Report& rep) {
  const auto E = parse_curve(cfg);
  const std::int64_t n = parse_int(cfg.need("n"), "n");
  TorsionModuleInfo info;
  const auto M = ec_torsion_module(E, n, &info);
  const auto r = check_euler(M);
  const std::int64_t count = ec_count(E);
  rep.outputs["curve"] = suite_detail::curve_json(E);
  rep.outputs["q"] = E.q();
  rep.outputs["n"] = n;
  rep.outputs["point_count"] = count;
  rep.outputs["group"] = group_json(ec_group(E));
  rep.outputs["torsion_field_degree"] = info.extension_degree;
  rep.outputs["sigma"] = matrix_json(M.sigma);
  rep.outputs["sigma_dual"] = matrix_json(M.dual().sigma);
  rep.outputs["h1_size"] = r.h1;
  rep.outputs["M_F"] = r.invariants;
  rep.outputs["Mdual_F"] = r.dual_invariants;
  const std::int64_t det = n == 1 ? 0 : mod(M.sigma[0][0] * M.sigma[1][1] - M.sigma[0][1] * M.sigma[1][0], n);
  rep.check("det-sigma-is-q", "weil-pairing-determinant", n == 1 || det == mod(E.q(), n));
  rep.check("trace-sigma-is-q+1-#E", "frobenius-trace", n == 1 || mod(M.sigma[0][0] + M.sigma[1][1], n) == mod(E.q() + 1 - count, n));
  rep.check("h1-equals-product", "local-euler-characteristic-formula", r.pass);
  rep.check("h1-of-dual-equal", "local-duality-perfect-pairing", h1_size(M) == h1_size(M.dual()));
}

inline void run_selfdual(const RunConfig& cfg, Report& rep) {
  const auto E = parse_curve(cfg);
  const std::int64_t n = parse_int(cfg.need("n"), "n");
  const auto r = check_selfdual(E, n);
  rep.outputs["curve"] = suite_detail::curve_json(E);
  rep.outputs["q"] = E.q();
  rep.outputs["n"] = n;
  rep.outputs["group"] = group_json(ec_group(E));
  rep.outputs["group_order"] = r.group_order;
  rep.outputs["quotient_E/nE"] = r.quotient;
  rep.outputs["kernel_E[n]"] = r.kernel;
  rep.outputs["assumption"] = "F-points replaced by residue-field points (good reduction, n prime to p)";
  rep.check("coker-equals-ker", "self-dual-isogeny-cardinality", r.pass);
}

inline void run_mirror(const RunConfig& cfg, Report& rep) {
  const auto E = parse_curve(cfg);
  const std::int64_t n = parse_int(cfg.need("n"), "n");
  const std::int64_t base = cfg.get("base_size") ? parse_int(*cfg.get("base_size"), "base_size") : 10;
  const std::int64_t seed = cfg.get("seed") ? parse_int(*cfg.get("seed"), "seed") : 42;
  require(seed >= 0, Errc::ParseError, "seed must be non-negative");
  const Rational xi = cfg.get("xi") ? parse_rational(*cfg.get("xi")) : Rational(0);
  auto model = make_model_from_curve(E, n, base, static_cast<std::uint64_t>(seed));
  for (auto& f : model.fibers) {
    if (!f.t1.is_trivial()) f.xi1 = frac(xi);
    if (!f.t2.is_trivial()) f.xi2 = frac(xi);
  }
  const auto gi = global_identity(model);
  Json fibers = Json::array();
  bool fiberwise = true, vanish = true, bookkeeping = true, translation = true;
  std::int64_t t2_on_kernel = 0;
  for (std::size_t i = 0; i < model.fibers.size(); ++i) {
    const auto& f = model.fibers[i];
    const auto& fi = gi.fibers[i];
    fiberwise = fiberwise && fi.I1 == fi.I2;
    if (fi.case_label == 2 || fi.case_label == 3) vanish = vanish && fi.I1 == 0 && fi.I2 == 0;
    const auto kb = kernel_bookkeeping(f);
    bookkeeping = bookkeeping && kb.pass;
    const auto tr = fiber_integrals_translated(f, f.G.element_at(f.G.order() - 1), f.H.element_at(f.H.order() - 1));
    translation = translation && tr.I1 == fi.I1 && tr.I2 == fi.I2;
    if (t2_trivial_on_kernel(f)) ++t2_on_kernel;
    fibers.push_back({{"t1", to_json(f.t1.exps())}, {"t2", to_json(f.t2.exps())}, {"case", fi.case_label},
                      {"I1", to_string(fi.I1)}, {"I2", to_string(fi.I2)}, {"ker_phi", kb.kernel}});
  }
  // xi only enters fibers where the corresponding character is nontrivial, whose integrals vanish.
  Json sensitivity = Json::array();
  bool xi_independent = true;
  for (const Rational& x : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1, 3)}) {
    auto m2 = model;
    for (auto& f : m2.fibers) {
      f.xi1 = f.t1.is_trivial() ? Rational(0) : x;
      f.xi2 = f.t2.is_trivial() ? Rational(0) : x;
    }
    const auto g2 = global_identity(m2);
    xi_independent = xi_independent && g2.sum1 == gi.sum1 && g2.sum2 == gi.sum2;
    sensitivity.push_back({{"xi", to_string(x)}, {"sum_I1", to_string(g2.sum1)}, {"sum_I2", to_string(g2.sum2)}});
  }
  rep.outputs["group"] = group_json(model.fibers.front().G);
  rep.outputs["normalization"] = to_string(model.N);
  rep.outputs["fibers"] = fibers;
  rep.outputs["sum_I1"] = to_string(gi.sum1);
  rep.outputs["sum_I2"] = to_string(gi.sum2);
  rep.outputs["fibers_with_t2_trivial_on_ker_phi"] = t2_on_kernel;
  rep.outputs["xi_sensitivity"] = sensitivity;
  rep.check("fibrewise-I1-equals-I2", "fibrewise-mirror-identity", fiberwise);
  rep.check("case-2-3-integrals-vanish", "fibrewise-mirror-character-cancellation", vanish);
  rep.check("global-identity", "global-mirror-identity", gi.pass);
  rep.check("kernel-bookkeeping", "self-dual-isogeny-cardinality", bookkeeping);
  rep.check("translation-invariance", "translation-invariance-of-forms", translation);
  rep.check("xi-independence", "fibrewise-mirror-character-cancellation", xi_independent);
}

inline void run_suite_command(const RunConfig& cfg, Report& rep, bool timing) {
  const std::string filter = cfg.get("filter").value_or("");
  const std::int64_t seed = cfg.get("seed") ? parse_int(*cfg.get("seed"), "seed") : 42;
  require(seed >= 0, Errc::ParseError, "seed must be non-negative");
  Json criteria = Json::array();
  for (const auto& r : run_suite(filter, static_cast<std::uint64_t>(seed))) {
    Json j{{"id", r.id}, {"key", r.key}, {"summary", r.summary}, {"exact_pass", r.exact_pass}};
    if (r.limit_seconds > 0) j["budget_seconds"] = r.limit_seconds;
    if (timing) j["seconds"] = r.seconds;
    j["detail"] = r.detail;
    criteria.push_back(j);
    rep.check(std::to_string(r.id) + "-" + r.key, r.anchor, r.pass());
  }
  rep.outputs["criteria"] = criteria;
}

}  // namespace cli_detail

struct RunResult {
  Report report;
  ExitCode code = ExitCode::Ok;
  std::string error;
};

/// Executes one configuration. Input errors map to InvalidInput, failed checks to CheckFailed.
inline RunResult run(const RunConfig& cfg, bool timing = false) {
  RunResult out;
  out.report.command = cfg.command;
  const auto start = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    out.report.inputs = cfg.to_json();
    auto& rep = out.report;
    if (cfg.command == "orbvol") cli_detail::run_orbvol(cfg, rep);
    else if (cfg.command == "stringy") cli_detail::run_stringy(cfg, rep);
    else if (cfg.command == "weil") cli_detail::run_weil(cfg, rep);
    else if (cfg.command == "twist-count") cli_detail::run_twist_count(cfg, rep);
    else if (cfg.command == "euler") cli_detail::run_euler(cfg, rep);
    else if (cfg.command == "selfdual") cli_detail::run_selfdual(cfg, rep);
    else if (cfg.command == "mirror-sim") cli_detail::run_mirror(cfg, rep);
    else cli_detail::run_suite_command(cfg, rep, timing);
    out.code = rep.all_pass() ? ExitCode::Ok : ExitCode::CheckFailed;
  } catch (const Error& e) {
    out.code = ExitCode::InvalidInput;
    out.error = e.what();
  }
  out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace padic
