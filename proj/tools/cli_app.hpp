#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isoposet/automorphism.hpp"
#include "isoposet/catalog.hpp"
#include "isoposet/charsep.hpp"
#include "isoposet/io.hpp"
#include "isoposet/orbit_poset.hpp"

namespace isoposet::cli {

struct Options {
  std::string command;
  std::string molecule;
  std::string spec_path;
  std::string D;
  std::string format = "text";
  std::string output;
  bool legend = false;
  bool limit_override = false;
  std::string stratum;
  std::vector<std::string> pair;
};

class usage_error : public error {
 public:
  using error::error;
};

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline std::string set_text(const std::vector<std::string>& ids) { return "{" + join(ids, ", ") + "}"; }

inline std::string orbit_label(const StratifiedPoset& p, std::size_t a, bool legend) {
  return legend ? p.orbit(a).id() + " [" + p.orbit(a).representative.to_string() + "]" : p.orbit(a).id();
}

inline void group_text(std::ostream& out, const std::string& title, const GroupSummary& g) {
  out << title << ": order " << g.order.str() << "\n";
  if (g.abelian_invariants) {
    std::vector<std::string> inv;
    for (auto x : *g.abelian_invariants) inv.push_back(std::to_string(x));
    out << "  abelianization invariants: [" << join(inv, ", ") << "]\n";
  }
  out << "  generators:\n";
  for (const auto& x : g.generators) out << "    " << x << "\n";
  out << "  stratum actions:\n";
  for (const auto& s : g.strata) {
    std::vector<std::string> orbits;
    for (const auto& o : s.orbits) orbits.push_back(set_text(o));
    out << "    " << s.shape << ": " << join(orbits, " ")
        << (s.action_order ? "  (action order " + std::to_string(*s.action_order) + ")" : "") << "\n";
  }
}

inline void cmd_poset(Analysis& an, const Options& o, std::ostream& out) {
  const auto& p = an.poset();
  if (o.format == "dot") {
    out << poset_dot(p, o.legend);
    return;
  }
  if (o.format == "json") {
    out << poset_json(p, &an.chiral_projection()).dump(2) << "\n";
    return;
  }
  out << "molecule " << an.spec().name << ", degree " << p.degree() << ", |G| = " << p.group().order() << "\n";
  for (std::size_t s = 0; s < p.stratum_count(); ++s) {
    out << p.domain()[s].label() << ": " << p.stratum_size(s) << " orbit(s)\n";
    for (auto a = p.stratum_begin(s); a < p.stratum_end(s); ++a)
      out << "  " << p.orbit(a).id() << "  representative " << p.orbit(a).representative.to_string() << ", size "
          << p.orbit(a).members.size() << "\n";
  }
  const auto edges = hasse_edges(p);
  out << "Hasse edges (" << edges.size() << "):\n";
  for (auto [lower, upper] : edges)
    out << "  " << orbit_label(p, upper, o.legend) << " -> " << orbit_label(p, lower, o.legend) << "\n";
}

inline void cmd_aut(Analysis& an, const Options& o, std::ostream& out) {
  const auto& p = an.poset();
  const auto a0 = summarize(an.aut0(), p, an.limits());
  const auto a0e = summarize(an.aut0_equivariant(), p, an.limits());
  if (o.format == "json") {
    out << json{{"aut0", automorphism_group_json(a0)}, {"aut0_equivariant", automorphism_group_json(a0e)}}.dump(2)
        << "\n";
    return;
  }
  group_text(out, "Aut0", a0);
  group_text(out, "Aut0' (equivariant)", a0e);
}

inline void cmd_hidden(Analysis& an, const Options& o, std::ostream& out) {
  const auto& p = an.poset();
  const auto& h = an.hidden();
  std::vector<std::pair<std::string, std::string>> table;
  for (const auto& nu : coset_representatives(an.normalizer_prime(), an.spec().G))
    table.emplace_back(nu.to_string(), induced_automorphism(nu, p).to_string(p));
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& [nu, hat] : table) rows.push_back(json{{"nu", nu}, {"induced", hat}});
    json elements = json::array();
    for (const auto& x : h.elements()) elements.push_back(x.to_string(p));
    out << json{{"normalizer_order", an.normalizer_prime().order()},
                {"order", order_json(h.order())},
                {"elements", elements},
                {"table", rows}}
               .dump(2)
        << "\n";
    return;
  }
  out << "|N'| = " << an.normalizer_prime().order() << ", hidden subgroup order " << h.order().str() << "\n";
  for (const auto& [nu, hat] : table) out << "  " << nu << " -> " << hat << "\n";
}

inline void cmd_chiral(Analysis& an, const Options& o, std::ostream& out) {
  const auto& p = an.poset();
  const auto& proj = an.chiral_projection();
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [a, b] : chiral_pairs(proj)) pairs.emplace_back(p.orbit(a).id(), p.orbit(b).id());
  const auto tau = an.tau();
  const auto tau_hat = an.chiral_automorphism().to_string(p);
  std::vector<std::string> de;
  for (const auto& lambda : chiral_support_ideal(project(an.spec().G, an.spec().Gp, partitions_of(p.degree(), an.limits()),
                                                         an.limits())))
    de.push_back(lambda.label());
  if (o.format == "json") {
    json jp = json::array();
    for (const auto& [a, b] : pairs) jp.push_back(json::array({a, b}));
    out << json{{"tau", tau ? json(tau->to_string()) : json(nullptr)},
                {"chiral_involution", tau_hat},
                {"chiral_pairs", jp},
                {"D_e", de}}
               .dump(2)
        << "\n";
    return;
  }
  out << "tau: " << (tau ? tau->to_string() : std::string("none (Gp = G)")) << "\n";
  out << "chiral involution: " << tau_hat << "\n";
  out << "chiral pairs (" << pairs.size() << "):\n";
  for (const auto& [a, b] : pairs) out << "  {" << a << ", " << b << "}\n";
  out << "D_e: " << (de.empty() ? "(empty)" : join(de, " ")) << "\n";
}

inline std::vector<std::size_t> selected_strata(const StratifiedPoset& p, const Options& o) {
  std::vector<std::size_t> out;
  if (!o.stratum.empty()) {
    const auto s = p.stratum_index(Partition::parse(o.stratum));
    if (!s) throw invalid_input("shape " + Partition::parse(o.stratum).label() + " is not in D");
    out.push_back(*s);
  } else {
    for (std::size_t s = 0; s < p.stratum_count(); ++s) out.push_back(s);
  }
  return out;
}

inline void cmd_characters(Analysis& an, const Options& o, std::ostream& out) {
  const auto& p = an.poset();
  auto& sep = an.separator();
  const auto& chars = sep.group_characters();
  json jdoc{{"group_characters", json::array()}, {"strata", json::array()}};
  std::ostringstream text;
  text << "X_G (" << chars.size() << "):\n";
  for (std::size_t c = 0; c < chars.size(); ++c) {
    text << "  chi" << c << " " << chars[c].to_string() << "\n";
    jdoc["group_characters"].push_back(json{{"index", c}, {"values", chars[c].to_string()}});
  }
  for (auto s : selected_strata(p, o)) {
    const auto& thetas = sep.young_characters(s);
    text << p.domain()[s].label() << ": X_S (" << thetas.size() << ")\n";
    json jthetas = json::array();
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      text << "  theta" << t << " " << thetas[t].to_string() << "\n";
      jthetas.push_back(json{{"index", t}, {"values", thetas[t].to_string()}});
    }
    text << "  membership (rows = orbits, columns = chi.theta):\n    " << std::string(16, ' ');
    for (std::size_t c = 0; c < chars.size(); ++c)
      for (std::size_t t = 0; t < thetas.size(); ++t) text << " " << c << "." << t;
    text << "\n";
    json rows = json::array();
    for (auto a = p.stratum_begin(s); a < p.stratum_end(s); ++a) {
      std::string id = p.orbit(a).id();
      text << "    " << id << std::string(id.size() < 16 ? 16 - id.size() : 0, ' ');
      json cells = json::array();
      for (std::size_t c = 0; c < chars.size(); ++c)
        for (std::size_t t = 0; t < thetas.size(); ++t) {
          const bool in = sep.member(c, t, a);
          text << (in ? "  in" : " out");
          cells.push_back(json{{"chi", c}, {"theta", t}, {"member", in}});
        }
      text << "\n";
      rows.push_back(json{{"orbit", id}, {"cells", cells}});
    }
    jdoc["strata"].push_back(json{{"shape", p.domain()[s].label()}, {"young_characters", jthetas}, {"membership", rows}});
  }
  if (o.format == "json") out << jdoc.dump(2) << "\n";
  else out << text.str();
}

inline void cmd_distinguish(Analysis& an, const Options& o, std::ostream& out) {
  const auto& p = an.poset();
  if (!o.pair.empty()) {
    if (o.pair.size() != 2) throw usage_error("--pair takes two orbit ids");
    const auto a = p.require_orbit(o.pair[0]), b = p.require_orbit(o.pair[1]);
    const auto sub = an.substitution_verdict(a, b);
    const auto pc = an.separator().compare(a, b, an.structural_projection(), true);
    const auto c = an.separator().compare(a, b, an.structural_projection(), false);
    if (o.format == "json") {
      out << json{{"a", o.pair[0]},
                  {"b", o.pair[1]},
                  {"substitution",
                   json{{"same_structural_orbit", sub.same_structural_orbit},
                        {"witness", sub.witness ? json(sub.witness->to_string(p)) : json(nullptr)},
                        {"indistinguishable", sub.indistinguishable()}}},
                  {"pairs_of_characters", separation_json(pc, p)},
                  {"characters", separation_json(c, p)}}
                 .dump(2)
          << "\n";
      return;
    }
    out << o.pair[0] << " vs " << o.pair[1] << "\n";
    out << "  same structural orbit: " << (sub.same_structural_orbit ? "yes" : "no") << "\n";
    out << "  substitution reactions: " << (sub.indistinguishable() ? "indistinguishable" : "distinguishable");
    if (sub.witness) out << " (automorphism " << sub.witness->to_string(p) << ")";
    out << "\n  pairs of characters: " << (pc.indistinguishable ? "indistinguishable" : "distinguishable") << " ("
        << pc.separating.size() << " separating pair(s))\n";
    out << "  characters: " << (c.indistinguishable ? "indistinguishable" : "distinguishable") << " ("
        << c.separating.size() << " separating character(s))\n";
    return;
  }
  json jdoc = json::array();
  for (auto s : selected_strata(p, o)) {
    std::vector<std::string> classes;
    json jclasses = json::array();
    for (const auto& cls : an.substitution_classes(s)) {
      std::vector<std::string> ids;
      for (auto a : cls) ids.push_back(p.orbit(a).id());
      classes.push_back(set_text(ids));
      jclasses.push_back(ids);
    }
    const auto verdicts = stratum_verdicts(an, s);
    if (o.format == "json") {
      json jv = json::array();
      for (const auto& v : verdicts) jv.push_back(verdict_json(v));
      jdoc.push_back(json{{"shape", p.domain()[s].label()}, {"substitution_classes", jclasses}, {"verdicts", jv}});
      continue;
    }
    out << p.domain()[s].label() << ": " << join(classes, " ") << "\n";
    for (const auto& v : verdicts)
      out << "  " << v.a << " ~ " << v.b << ": substitution " << (v.substitution ? "same" : "differ")
          << ", pairs of characters " << (v.pairs_of_characters ? "same" : "differ") << ", characters "
          << (v.characters ? "same" : "differ") << "\n";
  }
  if (o.format == "json") out << jdoc.dump(2) << "\n";
}

inline void cmd_report(Analysis& an, const Options& o, std::ostream& out) {
  const auto r = full_report(an);
  if (o.format == "json") {
    out << report_json(r).dump(2) << "\n";
    return;
  }
  out << "molecule " << r.molecule << ", degree " << r.degree << ", D = " << join(r.D, " ") << "\n";
  out << "|G| = " << r.order_G << ", |Gp| = " << r.order_Gp << ", |Gpp| = " << r.order_Gpp << ", |N'| = " << r.order_Np
      << "\n";
  out << "strata:";
  for (const auto& [shape, n] : r.strata) out << " " << shape << ":" << n;
  out << "\nHasse edges: " << r.hasse_edge_count << "\n";
  group_text(out, "Aut0", r.aut0);
  group_text(out, "Aut0' (equivariant)", r.aut0_equivariant);
  out << "hidden subgroup order: " << r.hidden_order.str() << "\n";
  out << "chiral pairs (" << r.chiral_pairs.size() << "):";
  for (const auto& [a, b] : r.chiral_pairs) out << " {" << a << ", " << b << "}";
  out << "\nstructural fusion:\n";
  for (const auto& [shape, sets] : r.structural_fusion) {
    std::vector<std::string> parts;
    for (const auto& s : sets) parts.push_back(set_text(s));
    out << "  " << shape << ": " << join(parts, " ") << "\n";
  }
  out << "indistinguishable pairs (substitution / pairs of characters / characters):\n";
  for (const auto& v : r.verdicts)
    if (v.substitution || v.pairs_of_characters || v.characters)
      out << "  " << v.a << " ~ " << v.b << ": " << (v.substitution ? "yes" : "no") << " / "
          << (v.pairs_of_characters ? "yes" : "no") << " / " << (v.characters ? "yes" : "no") << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
}

inline void dispatch(const Options& o, std::ostream& out) {
  if (o.format == "dot" && o.command != "poset") throw usage_error("--format dot is only valid for the poset command");
  if (o.molecule.empty() == o.spec_path.empty()) throw usage_error("give exactly one of --molecule or --spec");
  const auto limits = o.limit_override ? Limits::overridden() : Limits{};
  auto spec = o.molecule.empty() ? load_spec(o.spec_path) : builtin(o.molecule);
  std::optional<std::vector<Partition>> D;
  if (!o.D.empty()) D = parse_shapes(o.D);
  Analysis an(std::move(spec), std::move(D), limits);
  if (o.command == "poset") cmd_poset(an, o, out);
  else if (o.command == "aut") cmd_aut(an, o, out);
  else if (o.command == "hidden") cmd_hidden(an, o, out);
  else if (o.command == "chiral") cmd_chiral(an, o, out);
  else if (o.command == "characters") cmd_characters(an, o, out);
  else if (o.command == "distinguish") cmd_distinguish(an, o, out);
  else cmd_report(an, o, out);
}

/// Exit status: 0 success, 1 usage or input error, 2 computation limit.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbit posets of substitution isomers: automorphisms, chirality and character separation", "isoposet"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--molecule", o.molecule, "builtin molecule: benzene, cyclopropane, ethene");
  app.add_option("--spec", o.spec_path, "molecule spec file");
  app.add_option("--D", o.D, "shapes separated by ';', e.g. \"4,2;3,3\" (default: the molecule's D, else all)");
  app.add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--output", o.output, "write to this file instead of standard output");
  app.add_flag("--legend", o.legend, "show each orbit's representative tabloid");
  app.add_flag("--limit-override", o.limit_override, "lift the size limits of the brute-force algorithms");
  app.add_option("--stratum", o.stratum, "restrict characters/distinguish to one shape, e.g. \"4,2\"");
  app.add_option("--pair", o.pair, "two orbit ids for distinguish, e.g. \"(4,2)#1\" \"(4,2)#2\"")->expected(2);
  const std::vector<std::pair<const char*, const char*>> commands{
      {"poset", "strata, orbits and Hasse edges"},
      {"aut", "Aut0 and its equivariant subgroup"},
      {"hidden", "hidden symmetries induced by the normalizer"},
      {"chiral", "chiral pairs, chiral involution and D_e"},
      {"characters", "one-dimensional characters and membership tables"},
      {"distinguish", "pairwise indistinguishability verdicts"},
      {"report", "the full analysis report"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&o, n = std::string(name)] { o.command = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 1;
  }
  try {
    std::ostringstream doc;
    dispatch(o, doc);
    if (o.output.empty()) {
      out << doc.str();
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw invalid_input("cannot write \"" + o.output + "\"");
      f << doc.str();
    }
    return 0;
  } catch (const limit_exceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace isoposet::cli
