#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "automorphism.hpp"
#include "charsep.hpp"
#include "errors.hpp"
#include "orbit_poset.hpp"
#include "permgroup.hpp"
#include "tabloid.hpp"

namespace isoposet {

/// A molecule: substitution (G), stereo (Gp) and structural (Gpp) isomerism groups.
struct MoleculeSpec {
  std::string name;
  std::size_t degree = 0;
  PermutationGroup G, Gp, Gpp;
  std::vector<Partition> default_D;
  std::vector<std::string> notes;
};

/// Subgroup-chain and index checks. An empty failure list means valid.
struct ValidationReport {
  std::vector<std::string> failures;
  bool valid() const { return failures.empty(); }
};

inline ValidationReport validate(const MoleculeSpec& spec) {
  ValidationReport r;
  auto check = [&](bool ok, std::string msg) {
    if (!ok) r.failures.push_back(std::move(msg));
  };
  check(spec.degree >= 1, "degree must be positive");
  check(spec.G.degree() == spec.degree, "G has degree " + std::to_string(spec.G.degree()));
  check(spec.Gp.degree() == spec.degree, "Gp has degree " + std::to_string(spec.Gp.degree()));
  check(spec.Gpp.degree() == spec.degree, "Gpp has degree " + std::to_string(spec.Gpp.degree()));
  if (!r.valid()) return r;
  const bool g_in_gp = spec.G.is_subgroup_of(spec.Gp);
  check(g_in_gp, "G is not a subgroup of Gp");
  check(spec.Gp.is_subgroup_of(spec.Gpp), "Gp is not a subgroup of Gpp");
  if (g_in_gp) {
    const auto idx = index(spec.Gp, spec.G);
    check(idx == 1 || idx == 2, "index of G in Gp is " + std::to_string(idx) + ", expected 1 or 2");
  }
  for (const auto& lambda : spec.default_D)
    check(lambda.degree() == spec.degree, "shape " + lambda.label() + " is not a partition of the degree");
  return r;
}

/// Sorted fiber sizes per stratum, e.g. (2,2) -> {2,1}.
using FusionPattern = std::map<Partition, std::vector<std::size_t>, CoarserFirst>;

inline FusionPattern fusion_pattern(const Projection& proj) {
  FusionPattern out;
  const auto& t = proj.target();
  for (std::size_t s = 0; s < t.stratum_count(); ++s) {
    auto& sizes = out[t.domain()[s]];
    for (auto x = t.stratum_begin(s); x < t.stratum_end(s); ++x) sizes.push_back(proj.fiber(x).size());
    std::sort(sizes.rbegin(), sizes.rend());
  }
  return out;
}

/// All overgroups V ≥ base in S_d with |V| ≤ max_order, in increasing order
/// and then by element list.
inline std::vector<PermutationGroup> overgroups(const PermutationGroup& base, std::size_t max_order,
                                                const Limits& limits = {}) {
  const auto sd = symmetric_group(base.degree(), limits);
  std::set<std::vector<Permutation>> seen{base.elements()};
  std::vector<PermutationGroup> found{base}, frontier{base};
  while (!frontier.empty()) {
    std::vector<PermutationGroup> next;
    for (const auto& H : frontier)
      for (const auto& g : sd.elements()) {
        if (H.contains(g)) continue;
        auto gens = H.generators();
        gens.push_back(g);
        auto V = PermutationGroup::try_generate(base.degree(), std::move(gens), max_order);
        if (!V || !seen.insert(V->elements()).second) continue;
        found.push_back(*V);
        next.push_back(std::move(*V));
      }
    frontier = std::move(next);
  }
  std::sort(found.begin(), found.end(), [](const PermutationGroup& a, const PermutationGroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements() < b.elements();
  });
  return found;
}

namespace detail {

inline PermutationGroup group_of(std::size_t d, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> gens;
  for (auto c : cycles) gens.push_back(Permutation::parse(d, c));
  return generate_group(d, std::move(gens));
}

inline std::vector<Partition> shapes(std::initializer_list<const char*> texts) {
  std::vector<Partition> out;
  for (auto t : texts) out.push_back(Partition::parse(t));
  return out;
}

/// The smallest overgroup of `base` (then lexicographically least) whose
/// fusion of T_{D;W} has the given pattern; records how many matched.
inline PermutationGroup pin_structural_group(const PermutationGroup& W, const PermutationGroup& base,
                                             const std::vector<Partition>& D, const FusionPattern& wanted,
                                             std::size_t max_order, std::optional<std::size_t> exact_order,
                                             std::vector<std::string>& notes) {
  auto poset = std::make_shared<const StratifiedPoset>(build_poset(W, D));
  std::vector<PermutationGroup> matches;
  for (auto& V : overgroups(base, max_order)) {
    if (exact_order && V.order() != *exact_order) continue;
    if (fusion_pattern(fuse(poset, V)) == wanted) matches.push_back(std::move(V));
  }
  if (matches.empty()) throw std::logic_error("no overgroup reproduces the structural fusion pattern");
  if (matches.size() > 1)
    notes.push_back("Gpp: " + std::to_string(matches.size()) +
                    " overgroups reproduce the structural fusion pattern; the smallest, lexicographically "
                    "least one was chosen");
  return matches.front();
}

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"benzene", "cyclopropane", "ethene"};
  return names;
}

/// Orbit statistics every builtin must reproduce; empty when all hold.
inline std::vector<std::string> builtin_statistics_failures(const MoleculeSpec& spec) {
  std::vector<std::string> out;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) out.push_back(spec.name + ": " + what);
  };
  auto strata = [](const StratifiedPoset& p) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < p.stratum_count(); ++i) s.push_back(p.stratum_size(i));
    return s;
  };
  if (spec.name == "ethene") {
    const auto p = build_poset(spec.G, partitions_of(4));
    expect(spec.G.order() == 4 && spec.Gp == spec.G, "G must be the Klein four group with Gp = G");
    expect(strata(p) == std::vector<std::size_t>{1, 1, 3, 3, 6}, "strata sizes must be 1,1,3,3,6");
  } else if (spec.name == "benzene") {
    const auto p = build_poset(spec.G, spec.default_D);
    expect(spec.G.order() == 12 && spec.Gp == spec.G, "G must have order 12 with Gp = G");
    expect(strata(p) == std::vector<std::size_t>{3, 3}, "strata (4,2) and (3,3) must have 3 orbits each");
  } else if (spec.name == "cyclopropane") {
    auto p = std::make_shared<const StratifiedPoset>(build_poset(spec.G, spec.default_D));
    expect(spec.G.order() == 6 && spec.Gp.order() == 12 && spec.Gpp.order() == 48, "orders must be 6, 12, 48");
    expect(strata(*p) == std::vector<std::size_t>{1, 1, 4, 5, 4}, "strata sizes must be 1,1,4,5,4");
    expect(chiral_pairs(project(p, spec.Gp)).size() == 4, "there must be 4 chiral pairs");
  }
  return out;
}

/// Built-in molecules, validated against their orbit statistics.
inline MoleculeSpec builtin(std::string_view name) {
  MoleculeSpec s;
  s.name = std::string(name);
  if (name == "ethene") {
    s.degree = 4;
    s.G = detail::group_of(4, {"(12)(34)", "(13)(24)"});
    s.Gp = s.G;
    const FusionPattern wanted{{Partition::parse("4"), {1}},
                               {Partition::parse("3,1"), {1}},
                               {Partition::parse("2,2"), {2, 1}},
                               {Partition::parse("2,1,1"), {2, 1}},
                               {Partition::parse("1,1,1,1"), {2, 2, 2}}};
    s.Gpp = detail::pin_structural_group(s.G, s.Gp, partitions_of(4), wanted, 24, std::nullopt, s.notes);
    s.default_D = partitions_of(4);
  } else if (name == "benzene") {
    s.degree = 6;
    s.G = detail::group_of(6, {"(123456)", "(16)(25)(34)"});
    s.Gp = s.G;
    s.Gpp = s.G;
    s.default_D = detail::shapes({"4,2", "3,3"});
    s.notes.push_back("Gpp is taken equal to Gp; structural-identity verdicts depend on that assumption");
  } else if (name == "cyclopropane") {
    s.degree = 6;
    s.G = detail::group_of(6, {"(123)(456)", "(14)(26)(35)"});
    s.Gp = detail::group_of(6, {"(123)(456)", "(14)(26)(35)", "(14)(25)(36)"});
    s.default_D = detail::shapes({"6", "5,1", "4,2", "4,1,1", "3,3"});
    const FusionPattern wanted{{Partition::parse("6"), {1}},
                               {Partition::parse("5,1"), {1}},
                               {Partition::parse("4,2"), {3, 1}},
                               {Partition::parse("4,1,1"), {4, 1}},
                               {Partition::parse("3,3"), {2, 2}}};
    s.Gpp = detail::pin_structural_group(s.G, s.Gp, s.default_D, wanted, 48, 48, s.notes);
  } else {
    throw invalid_input("unknown molecule \"" + std::string(name) + "\" (builtins: benzene, cyclopropane, ethene)");
  }
  const auto report = validate(s);
  if (!report.valid()) throw std::logic_error("builtin " + s.name + " is invalid: " + report.failures.front());
  const auto stats = builtin_statistics_failures(s);
  if (!stats.empty()) throw std::logic_error("builtin check failed: " + stats.front());
  return s;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

/// Shapes separated by ';', e.g. "4,2;3,3".
inline std::vector<Partition> parse_shapes(std::string_view text) {
  std::vector<Partition> out;
  for (const auto& piece : detail::split(text, ';')) out.push_back(Partition::parse(piece));
  detail::require(!out.empty(), "empty list of shapes");
  return out;
}

/// Line-oriented molecule description:
///   name=<text>  degree=<int>  G=<cycles;...>  Gp=<cycles;...>  Gpp=<cycles;...>  D=<shapes;...>
/// '#' starts a comment. Gp defaults to G, Gpp to Gp.
inline MoleculeSpec parse_spec(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    detail::require(eq != std::string::npos, "line " + std::to_string(line_no) + ": expected key=value");
    const auto key = detail::trim(std::string_view(t).substr(0, eq));
    static const std::set<std::string> known{"name", "degree", "G", "Gp", "Gpp", "D"};
    detail::require(known.count(key) == 1, "line " + std::to_string(line_no) + ": unknown key \"" + key + "\"");
    detail::require(fields.count(key) == 0, "line " + std::to_string(line_no) + ": duplicate key \"" + key + "\"");
    fields[key] = detail::trim(std::string_view(t).substr(eq + 1));
  }
  for (const char* key : {"name", "degree", "G"})
    detail::require(fields.count(key) == 1, std::string("missing key \"") + key + "\"");

  MoleculeSpec s;
  s.name = fields["name"];
  try {
    std::size_t used = 0;
    const auto d = std::stoul(fields["degree"], &used);
    detail::require(used == fields["degree"].size() && d >= 1 && d <= 16, "");
    s.degree = d;
  } catch (const std::exception&) {
    throw invalid_input("degree must be an integer between 1 and 16");
  }
  auto group = [&](const std::string& text, const std::vector<Permutation>& extra) {
    std::vector<Permutation> gens = extra;
    for (const auto& c : detail::split(text, ';')) gens.push_back(Permutation::parse(s.degree, c));
    return generate_group(s.degree, std::move(gens));
  };
  s.G = group(fields["G"], {});
  s.Gp = fields.count("Gp") ? group(fields["Gp"], {}) : s.G;
  s.Gpp = fields.count("Gpp") ? group(fields["Gpp"], {}) : s.Gp;
  if (fields.count("D")) s.default_D = parse_shapes(fields["D"]);
  const auto report = validate(s);
  detail::require(report.valid(), "invalid molecule spec: " + (report.valid() ? "" : report.failures.front()));
  return s;
}

inline MoleculeSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot read molecule spec \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

/// Substitution-reaction verdict for two orbits of one stratum.
struct SubstitutionVerdict {
  bool same_structural_orbit = false;
  std::optional<PosetAutomorphism> witness;
  bool indistinguishable() const { return same_structural_orbit && witness.has_value(); }
};

/// Lazily computed analysis of one molecule over one set of shapes.
class Analysis {
 public:
  explicit Analysis(MoleculeSpec spec, std::optional<std::vector<Partition>> D = std::nullopt,
                    Limits limits = {})
      : spec_(std::move(spec)), limits_(limits) {
    const auto report = validate(spec_);
    detail::require(report.valid(), "invalid molecule spec: " + (report.valid() ? "" : report.failures.front()));
    if (D) domain_ = std::move(*D);
    else if (!spec_.default_D.empty()) domain_ = spec_.default_D;
    else domain_ = partitions_of(spec_.degree, limits_);
    for (const auto& lambda : domain_)
      detail::require(lambda.degree() == spec_.degree, "shape " + lambda.label() + " is not a partition of " +
                                                           std::to_string(spec_.degree));
    poset_ = std::make_shared<const StratifiedPoset>(build_poset(spec_.G, domain_, limits_));
    domain_ = poset_->domain();
  }

  const MoleculeSpec& spec() const { return spec_; }
  const Limits& limits() const { return limits_; }
  const std::vector<Partition>& domain() const { return domain_; }
  const StratifiedPoset& poset() const { return *poset_; }
  const std::shared_ptr<const StratifiedPoset>& poset_ptr() const { return poset_; }

  const Projection& chiral_projection() {
    if (!chiral_) chiral_.emplace(project(poset_, spec_.Gp, limits_));
    return *chiral_;
  }
  const Projection& structural_projection() {
    if (!structural_) structural_.emplace(fuse(poset_, spec_.Gpp, limits_));
    return *structural_;
  }

  /// N' = N(G) ∩ N(Gp).
  const PermutationGroup& normalizer_prime() {
    if (!np_) np_ = intersect_normalizers(spec_.G, spec_.Gp, limits_);
    return *np_;
  }

  /// The least element of Gp∖G, if Gp ≠ G.
  std::optional<Permutation> tau() const {
    for (const auto& x : spec_.Gp.elements())
      if (!spec_.G.contains(x)) return x;
    return std::nullopt;
  }

  /// τ̂, or the identity when Gp = G.
  const PosetAutomorphism& chiral_automorphism() {
    if (!tau_hat_) {
      const auto t = tau();
      tau_hat_ = t ? chiral_involution(chiral_projection(), *t) : PosetAutomorphism::identity(poset_->size());
    }
    return *tau_hat_;
  }

  const PosetAutGroup& aut0() {
    if (!aut0_) aut0_ = isoposet::aut0(*poset_, limits_);
    return *aut0_;
  }
  const PosetAutGroup& aut0_equivariant() {
    if (!aut0e_) aut0e_ = isoposet::aut0_equivariant(*poset_, chiral_automorphism(), limits_);
    return *aut0e_;
  }
  const PosetAutGroup& hidden() {
    if (!hidden_) hidden_ = hidden_subgroup(*poset_, normalizer_prime(), spec_.G);
    return *hidden_;
  }

  CharacterSeparator& separator() {
    if (!separator_) separator_ = std::make_unique<CharacterSeparator>(poset_, normalizer_prime(), limits_);
    return *separator_;
  }

  /// a and b indistinguishable via substitution reactions: one structural
  /// orbit, and some equivariant automorphism maps a to b.
  SubstitutionVerdict substitution_verdict(std::size_t a, std::size_t b) {
    detail::require(a < poset_->size() && b < poset_->size(), "substitution_verdict: orbit out of range");
    detail::require(poset_->stratum_of(a) == poset_->stratum_of(b), "substitution_verdict: orbits of different shapes");
    SubstitutionVerdict v;
    v.same_structural_orbit = structural_projection()(a) == structural_projection()(b);
    if (aut0_equivariant().enumerated()) {
      for (const auto& x : aut0_equivariant().elements())
        if (x(a) == b) {
          v.witness = x;
          break;
        }
    } else {
      v.witness = find_automorphism(*poset_, a, b, &chiral_automorphism(), limits_);
    }
    return v;
  }

  /// Classes of the substitution verdict within one stratum.
  std::vector<std::vector<std::size_t>> substitution_classes(std::size_t stratum) {
    std::vector<std::vector<std::size_t>> classes;
    for (auto a = poset_->stratum_begin(stratum); a < poset_->stratum_end(stratum); ++a) {
      auto it = std::find_if(classes.begin(), classes.end(), [&](const std::vector<std::size_t>& c) {
        return substitution_verdict(c.front(), a).indistinguishable();
      });
      if (it == classes.end()) classes.push_back({a});
      else it->push_back(a);
    }
    return classes;
  }

 private:
  MoleculeSpec spec_;
  Limits limits_;
  std::vector<Partition> domain_;
  std::shared_ptr<const StratifiedPoset> poset_;
  std::optional<Projection> chiral_, structural_;
  std::optional<PermutationGroup> np_;
  std::optional<PosetAutomorphism> tau_hat_;
  std::optional<PosetAutGroup> aut0_, aut0e_, hidden_;
  std::unique_ptr<CharacterSeparator> separator_;
};

/// Per-stratum summary of a group action.
struct StratumSummary {
  std::string shape;
  std::vector<std::vector<std::string>> orbits;
  std::optional<std::size_t> action_order;
};

struct GroupSummary {
  big_order order;
  std::vector<std::string> generators;
  std::optional<std::vector<std::size_t>> abelian_invariants;
  std::vector<StratumSummary> strata;
};

struct PairVerdict {
  std::string a, b;
  bool substitution = false;
  bool pairs_of_characters = false;
  bool characters = false;
  std::optional<std::string> witness;
};

struct AnalysisReport {
  std::string molecule;
  std::size_t degree = 0;
  std::vector<std::string> D;
  std::size_t order_G = 0, order_Gp = 0, order_Gpp = 0, order_Np = 0;
  std::vector<std::pair<std::string, std::size_t>> strata;
  std::size_t hasse_edge_count = 0;
  GroupSummary aut0, aut0_equivariant;
  big_order hidden_order;
  std::vector<std::pair<std::string, std::string>> chiral_pairs;
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> structural_fusion;
  std::vector<PairVerdict> verdicts;
  std::vector<std::string> notes;
};

inline GroupSummary summarize(const PosetAutGroup& g, const StratifiedPoset& p, const Limits& limits = {}) {
  const auto st = describe(g, p, limits);
  GroupSummary out;
  out.order = st.order;
  for (const auto& x : g.generators()) out.generators.push_back(x.to_string(p));
  out.abelian_invariants = st.abelian_invariants;
  for (const auto& sa : st.strata) {
    StratumSummary ss;
    ss.shape = sa.shape.label();
    for (const auto& o : sa.orbits) {
      std::vector<std::string> ids;
      for (auto a : o) ids.push_back(p.orbit(a).id());
      ss.orbits.push_back(std::move(ids));
    }
    ss.action_order = sa.action_order;
    out.strata.push_back(std::move(ss));
  }
  return out;
}

/// Verdicts for every unordered pair of orbits in one stratum.
inline std::vector<PairVerdict> stratum_verdicts(Analysis& an, std::size_t stratum) {
  const auto& p = an.poset();
  std::vector<PairVerdict> out;
  for (auto a = p.stratum_begin(stratum); a < p.stratum_end(stratum); ++a)
    for (auto b = a + 1; b < p.stratum_end(stratum); ++b) {
      PairVerdict v;
      v.a = p.orbit(a).id();
      v.b = p.orbit(b).id();
      const auto sub = an.substitution_verdict(a, b);
      v.substitution = sub.indistinguishable();
      if (sub.witness) v.witness = sub.witness->to_string(p);
      v.pairs_of_characters = an.separator().compare(a, b, an.structural_projection(), true).indistinguishable;
      v.characters = an.separator().compare(a, b, an.structural_projection(), false).indistinguishable;
      out.push_back(std::move(v));
    }
  return out;
}

inline AnalysisReport full_report(Analysis& an) {
  const auto& p = an.poset();
  const auto& spec = an.spec();
  AnalysisReport r;
  r.molecule = spec.name;
  r.degree = spec.degree;
  for (const auto& lambda : an.domain()) r.D.push_back(lambda.label());
  r.order_G = spec.G.order();
  r.order_Gp = spec.Gp.order();
  r.order_Gpp = spec.Gpp.order();
  r.order_Np = an.normalizer_prime().order();
  for (std::size_t s = 0; s < p.stratum_count(); ++s) r.strata.emplace_back(p.domain()[s].label(), p.stratum_size(s));
  r.hasse_edge_count = hasse_edges(p).size();
  r.aut0 = summarize(an.aut0(), p, an.limits());
  r.aut0_equivariant = summarize(an.aut0_equivariant(), p, an.limits());
  r.hidden_order = an.hidden().order();
  for (auto [a, b] : chiral_pairs(an.chiral_projection())) r.chiral_pairs.emplace_back(p.orbit(a).id(), p.orbit(b).id());
  const auto& st = an.structural_projection();
  for (std::size_t s = 0; s < p.stratum_count(); ++s) {
    std::vector<std::vector<std::string>> sets;
    for (auto t = st.target().stratum_begin(s); t < st.target().stratum_end(s); ++t) {
      std::vector<std::string> ids;
      for (auto a : st.fiber(t)) ids.push_back(p.orbit(a).id());
      sets.push_back(std::move(ids));
    }
    std::sort(sets.begin(), sets.end());
    r.structural_fusion.emplace_back(p.domain()[s].label(), std::move(sets));
  }
  for (std::size_t s = 0; s < p.stratum_count(); ++s) {
    auto v = stratum_verdicts(an, s);
    r.verdicts.insert(r.verdicts.end(), v.begin(), v.end());
  }
  r.notes = spec.notes;
  return r;
}

inline AnalysisReport full_report(const MoleculeSpec& spec, std::optional<std::vector<Partition>> D = std::nullopt,
                                  const Limits& limits = {}) {
  Analysis an(spec, std::move(D), limits);
  return full_report(an);
}

}  // namespace isoposet
