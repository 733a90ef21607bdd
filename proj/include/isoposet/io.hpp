#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "automorphism.hpp"
#include "catalog.hpp"
#include "charsep.hpp"
#include "orbit_poset.hpp"

namespace isoposet {

using json = nlohmann::ordered_json;

/// A number when it fits in 64 bits, otherwise its decimal string.
inline json order_json(const big_order& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(n);
  return n.str();
}

inline json group_json(const PermutationGroup& g) {
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(x.to_string());
  return json{{"order", g.order()}, {"generators", gens}};
}

/// Strata with their orbits, the strict relation, Hasse edges and, when a
/// chiral projection is given, its fibers and chiral pairs.
inline json poset_json(const StratifiedPoset& p, const Projection* chiral = nullptr) {
  json strata = json::array();
  for (std::size_t s = 0; s < p.stratum_count(); ++s) {
    json orbits = json::array();
    for (auto a = p.stratum_begin(s); a < p.stratum_end(s); ++a) {
      const auto& o = p.orbit(a);
      orbits.push_back(
          json{{"id", o.id()}, {"representative", o.representative.to_string()}, {"size", o.members.size()}});
    }
    strata.push_back(json{{"shape", p.domain()[s].label()}, {"orbits", orbits}});
  }
  json relation = json::array();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.less(a, b)) relation.push_back(json::array({p.orbit(a).id(), p.orbit(b).id()}));
  json hasse = json::array();
  for (auto [a, b] : hasse_edges(p)) hasse.push_back(json::array({p.orbit(a).id(), p.orbit(b).id()}));
  json out{{"degree", p.degree()}, {"group", group_json(p.group())}, {"strata", strata},
           {"relation", relation}, {"hasse_edges", hasse}};
  if (chiral) {
    json fibers = json::array(), pairs = json::array();
    for (const auto& f : chiral->fibers()) {
      json ids = json::array();
      for (auto a : f) ids.push_back(p.orbit(a).id());
      fibers.push_back(ids);
    }
    for (auto [a, b] : chiral_pairs(*chiral)) pairs.push_back(json::array({p.orbit(a).id(), p.orbit(b).id()}));
    out["fibers"] = fibers;
    out["chiral_pairs"] = pairs;
  }
  return out;
}

/// Graphviz digraph: one rank per stratum, coarsest on top, edges from the
/// covering orbit down to the covered one.
inline std::string poset_dot(const StratifiedPoset& p, bool legend = false) {
  std::ostringstream out;
  out << "digraph T {\n  rankdir=TB;\n  node [shape=plaintext];\n";
  for (std::size_t s = 0; s < p.stratum_count(); ++s) {
    out << "  subgraph stratum_" << s << " {\n    rank=same;\n";
    for (auto a = p.stratum_begin(s); a < p.stratum_end(s); ++a) {
      out << "    o" << a << " [label=\"" << p.orbit(a).id();
      if (legend) out << "\\n" << p.orbit(a).representative.to_string();
      out << "\"];\n";
    }
    out << "  }\n";
  }
  for (auto [lower, upper] : hasse_edges(p)) out << "  o" << upper << " -> o" << lower << ";\n";
  out << "}\n";
  return out.str();
}

inline json automorphism_group_json(const GroupSummary& g) {
  json gens = json::array();
  for (const auto& x : g.generators) gens.push_back(x);
  json strata = json::array();
  for (const auto& s : g.strata) {
    json orbits = json::array();
    for (const auto& o : s.orbits) orbits.push_back(o);
    strata.push_back(json{{"shape", s.shape},
                          {"orbits", orbits},
                          {"action_order", s.action_order ? json(*s.action_order) : json(nullptr)}});
  }
  return json{{"order", order_json(g.order)},
              {"generators", gens},
              {"abelian_invariants", g.abelian_invariants ? json(*g.abelian_invariants) : json(nullptr)},
              {"strata", strata}};
}

inline json separation_json(const SeparationRecord& r, const StratifiedPoset& p) {
  json pairs = json::array();
  for (const auto& sp : r.separating)
    pairs.push_back(json{{"chi", sp.chi},
                         {"theta", sp.theta},
                         {"separates", sp.from_first ? "first_from_second" : "second_from_first"},
                         {"witness", sp.witness ? json(sp.witness->to_string()) : json(nullptr)}});
  return json{{"a", p.orbit(r.orbit_a).id()},
              {"b", p.orbit(r.orbit_b).id()},
              {"mode", r.pairs_of_characters ? "pairs_of_characters" : "characters"},
              {"same_structural_orbit", r.same_structural_orbit},
              {"separating", pairs},
              {"indistinguishable", r.indistinguishable}};
}

inline json verdict_json(const PairVerdict& v) {
  return json{{"a", v.a},
              {"b", v.b},
              {"substitution", v.substitution},
              {"pairs_of_characters", v.pairs_of_characters},
              {"characters", v.characters},
              {"witness", v.witness ? json(*v.witness) : json(nullptr)}};
}

inline json report_json(const AnalysisReport& r) {
  json strata = json::array();
  for (const auto& [shape, size] : r.strata) strata.push_back(json{{"shape", shape}, {"orbits", size}});
  json chiral = json::array();
  for (const auto& [a, b] : r.chiral_pairs) chiral.push_back(json::array({a, b}));
  json fusion = json::array();
  for (const auto& [shape, sets] : r.structural_fusion) fusion.push_back(json{{"shape", shape}, {"orbits", sets}});
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
  return json{{"molecule", r.molecule},
              {"degree", r.degree},
              {"D", r.D},
              {"groups", json{{"G", r.order_G}, {"Gp", r.order_Gp}, {"Gpp", r.order_Gpp}, {"Np", r.order_Np}}},
              {"poset", json{{"strata", strata}, {"hasse_edges", r.hasse_edge_count}}},
              {"aut0", automorphism_group_json(r.aut0)},
              {"aut0_equivariant", automorphism_group_json(r.aut0_equivariant)},
              {"hidden_order", order_json(r.hidden_order)},
              {"chiral_pairs", chiral},
              {"structural_fusion", fusion},
              {"verdicts", verdicts},
              {"notes", r.notes}};
}

}  // namespace isoposet
