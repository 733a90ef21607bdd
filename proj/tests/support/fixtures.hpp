#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "isoposet/automorphism.hpp"
#include "isoposet/catalog.hpp"
#include "isoposet/charsep.hpp"
#include "isoposet/orbit_poset.hpp"
#include "isoposet/permgroup.hpp"
#include "isoposet/tabloid.hpp"

namespace fixtures {

using namespace isoposet;

inline Permutation perm(std::size_t d, const char* text) { return Permutation::parse(d, text); }

inline PermutationGroup group(std::size_t d, std::initializer_list<const char*> gens) {
  std::vector<Permutation> g;
  for (auto x : gens) g.push_back(perm(d, x));
  return generate_group(d, std::move(g));
}

inline std::vector<Partition> shapes(std::initializer_list<const char*> texts) {
  std::vector<Partition> out;
  for (auto t : texts) out.push_back(Partition::parse(t));
  return out;
}

inline PermutationGroup klein() { return group(4, {"(12)(34)", "(13)(24)"}); }
inline PermutationGroup klein_d4() { return group(4, {"(12)(34)", "(13)(24)", "(12)"}); }
inline PermutationGroup cyclopropane_G() { return group(6, {"(123)(456)", "(14)(26)(35)"}); }
inline PermutationGroup cyclopropane_Gp() { return group(6, {"(123)(456)", "(14)(26)(35)", "(14)(25)(36)"}); }
inline std::vector<Partition> cyclopropane_D() { return shapes({"6", "5,1", "4,2", "4,1,1", "3,3"}); }

inline std::shared_ptr<const StratifiedPoset> poset(const PermutationGroup& W, std::vector<Partition> D) {
  return std::make_shared<const StratifiedPoset>(build_poset(W, std::move(D)));
}

inline std::vector<std::size_t> strata_sizes(const StratifiedPoset& p) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < p.stratum_count(); ++s) out.push_back(p.stratum_size(s));
  return out;
}

/// Molecules reused across tests; builtins are built once per process.
inline const MoleculeSpec& molecule(const std::string& name) {
  static const MoleculeSpec ethene = builtin("ethene");
  static const MoleculeSpec benzene = builtin("benzene");
  static const MoleculeSpec cyclopropane = builtin("cyclopropane");
  if (name == "ethene") return ethene;
  if (name == "benzene") return benzene;
  return cyclopropane;
}

}  // namespace fixtures
