#pragma once

// Built-in models exercised by the acceptance battery and the CLI.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "padic/galois.hpp"
#include "padic/orbifold.hpp"

namespace padic {

struct NamedAction {
  std::string name;
  LinearDiagonalModel model;
};

inline LinearDiagonalModel diagonal_model(const std::string& group, std::int64_t q,
                                          const std::vector<GroupElement>& coord_exps) {
  const FinAbGroup g = FinAbGroup::parse(group);
  std::vector<Character> coords;
  for (const auto& e : coord_exps) coords.emplace_back(g, e);
  return {g, ff_field_of_size(q), std::move(coords)};
}

/// Quotient singularities A^n/Gamma used for the volume/stringy comparisons.
inline std::vector<NamedAction> builtin_action_models() {
  std::vector<NamedAction> out;
  auto cyclic = [&out](std::int64_t d, std::vector<std::int64_t> w, std::int64_t q) {
    std::string name = "A" + std::to_string(w.size()) + "/Z" + std::to_string(d) + "(";
    for (std::size_t i = 0; i < w.size(); ++i) name += (i ? "," : "") + std::to_string(w[i]);
    name += ")@F" + std::to_string(q);
    out.push_back({name, LinearCyclicAction(d, std::move(w), q).to_diagonal()});
  };
  cyclic(1, {1, 1}, 5);
  cyclic(2, {1}, 3);
  cyclic(2, {1}, 5);
  cyclic(2, {1}, 9);
  cyclic(2, {1, 1}, 3);
  cyclic(2, {1, 1}, 5);
  cyclic(2, {1, 1}, 7);
  cyclic(2, {1, 1, 1}, 3);
  cyclic(3, {1}, 7);
  cyclic(3, {1, 2}, 7);
  cyclic(3, {1, 1}, 7);
  cyclic(3, {1, 1}, 13);
  cyclic(4, {1, 3}, 5);
  cyclic(4, {1, 1}, 13);
  cyclic(4, {1, 2}, 5);
  cyclic(6, {1, 5}, 7);
  out.push_back({"A2/(Z2xZ2)(diag)@F3", diagonal_model("Z/2 x Z/2", 3, {{1, 0}, {0, 1}})});
  out.push_back({"A2/(Z2xZ2)(diag)@F5", diagonal_model("Z/2 x Z/2", 5, {{1, 0}, {0, 1}})});
  out.push_back({"A3/(Z2xZ2)(mixed)@F5", diagonal_model("Z/2 x Z/2", 5, {{1, 0}, {0, 1}, {1, 1}})});
  return out;
}

struct NamedToy {
  std::string name;
  GammaVarietyAction action;
};

/// Small Gamma-varieties over F_q for the twisting identities.
inline std::vector<NamedToy> builtin_toy_models() {
  std::vector<NamedToy> out;
  auto lin = [&out](const std::string& name, const std::string& group, std::int64_t q,
                    const std::vector<GroupElement>& exps) {
    out.push_back({name, GammaVarietyAction{diagonal_model(group, q, exps)}});
  };
  lin("A1/Z2@F3", "Z/2", 3, {{1}});
  lin("A1/Z2@F5", "Z/2", 5, {{1}});
  lin("A2/Z2(1,1)@F3", "Z/2", 3, {{1}, {1}});
  lin("A2/Z2(1,1)@F5", "Z/2", 5, {{1}, {1}});
  lin("A2/Z2(1,0)@F3", "Z/2", 3, {{1}, {0}});
  lin("A2/(Z2xZ2)@F3", "Z/2 x Z/2", 3, {{1, 0}, {0, 1}});
  auto pts = [&out](const std::string& name, const std::string& group, std::vector<std::vector<std::uint32_t>> gens,
                    std::vector<std::uint32_t> frob) {
    out.push_back({name, GammaVarietyAction{PointSetModel(FinAbGroup::parse(group), std::move(gens), std::move(frob))}});
  };
  pts("swap2", "Z/2", {{1, 0}}, {0, 1});
  pts("swap2-frob", "Z/2", {{1, 0}}, {1, 0});
  pts("Z3-two-orbits", "Z/3", {{1, 2, 0, 4, 5, 3}}, {3, 4, 5, 0, 1, 2});
  pts("Z3-twisted-frob", "Z/3", {{1, 2, 0, 4, 5, 3}}, {1, 2, 0, 3, 4, 5});
  pts("Z4-cycle-and-fixed", "Z/4", {{1, 2, 3, 0, 4}}, {2, 3, 0, 1, 4});
  pts("Z2xZ2-regular", "Z/2 x Z/2", {{1, 0, 3, 2}, {2, 3, 0, 1}}, {1, 0, 3, 2});
  pts("trivial-3cycle", "1", {}, {1, 2, 0});
  return out;
}

struct NamedWeil {
  std::string text;
  std::int64_t q;
};

inline std::vector<NamedWeil> builtin_weil_models() {
  return {{"x:", 5},
          {"x^2+y^2-1", 3},
          {"x^2+y^2-1", 5},
          {"x^2+y^2-1", 7},
          {"x*y-1", 3},
          {"y^2-x^3-x-1", 5},
          {"x^2+y^2+z^2-1", 3},
          {"x,y,z: x+y+z; x*y-1", 7}};
}

/// Every finite abelian group of order at most max_order, by order then factors.
inline std::vector<FinAbGroup> all_abelian_groups(std::int64_t max_order) {
  std::vector<FinAbGroup> out;
  // Chains d_1 | d_2 | ... listed from the largest factor down.
  std::vector<std::vector<std::int64_t>> chains;
  std::vector<std::int64_t> cur;
  auto extend = [&](auto&& self, std::int64_t bound, std::int64_t remaining) -> void {
    chains.emplace_back(cur.rbegin(), cur.rend());
    for (std::int64_t d = 2; d <= remaining; ++d) {
      if (bound % d != 0 || d > bound) continue;
      cur.push_back(d);
      self(self, d, remaining / d);
      cur.pop_back();
    }
  };
  for (std::int64_t top = 2; top <= max_order; ++top) {
    cur = {top};
    extend(extend, top, max_order / top);
  }
  for (auto& c : chains) out.emplace_back(c);
  out.emplace_back();
  std::sort(out.begin(), out.end(), [](const FinAbGroup& a, const FinAbGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.factors() < b.factors();
  });
  return out;
}

/// Smallest prime power q with exponent(g) | q - 1 and p not dividing |g|.
inline std::int64_t admissible_field_size(const FinAbGroup& g) {
  for (std::int64_t q = 2;; ++q) {
    const auto ps = prime_factors(q);
    if (ps.size() != 1 || g.order() % ps[0] == 0) continue;
    if ((q - 1) % g.exponent() == 0 && q <= kMaxFieldSize) return q;
  }
}

}  // namespace padic
