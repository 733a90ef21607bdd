#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"

namespace props {

using namespace isoposet;
using Failures = std::vector<std::string>;

inline void expect(Failures& f, bool ok, const std::string& what) {
  if (!ok) f.push_back(what);
}

/// ν ↦ ν̂ over the whole normalizer: automorphism, homomorphism, W in the
/// kernel, and (when (1^d) ∈ D) kernel exactly W.
inline Failures induced_automorphisms(const PermutationGroup& W, const std::vector<Partition>& D) {
  Failures f;
  const auto p = build_poset(W, D);
  const auto N = normalizer(W);
  const bool full_kernel = p.stratum_index(Partition(std::vector<std::size_t>(W.degree(), 1))).has_value();
  std::vector<PosetAutomorphism> hats;
  for (const auto& nu : N.elements()) {
    hats.push_back(induced_automorphism(nu, p));
    const auto& h = hats.back();
    expect(f, is_stratified_automorphism(p, h.map()), "nu^ is not an automorphism for nu = " + nu.to_string());
    if (W.contains(nu)) expect(f, h.is_identity(), "nu^ is not the identity for nu in W: " + nu.to_string());
    if (full_kernel && h.is_identity()) expect(f, W.contains(nu), "kernel element outside W: " + nu.to_string());
  }
  for (std::size_t i = 0; i < N.order(); ++i)
    for (std::size_t j = 0; j < N.order(); ++j) {
      const auto lhs = induced_automorphism(N.elements()[i] * N.elements()[j], p);
      if (lhs != hats[i] * hats[j]) {
        f.push_back("homomorphism law fails for " + N.elements()[i].to_string() + ", " + N.elements()[j].to_string());
        return f;
      }
    }
  return f;
}

/// τ̂ swaps exactly the chiral pairs, is the same for every τ ∈ W'∖W, and is
/// an involution iff D meets D_e.
inline Failures chiral_involution_behaviour(const PermutationGroup& W, const PermutationGroup& Wp,
                                            const std::vector<Partition>& D) {
  Failures f;
  const auto D_e = chiral_support_ideal(project(W, Wp, partitions_of(W.degree())));
  const auto proj = project(fixtures::poset(W, D), Wp);
  std::optional<PosetAutomorphism> first;
  for (const auto& tau : Wp.elements()) {
    if (W.contains(tau)) continue;
    const auto t = chiral_involution(proj, tau);
    if (first) expect(f, t == *first, "chiral involution depends on the choice of tau");
    first = t;
    for (const auto& fiber : proj.fibers()) {
      if (fiber.size() == 1) expect(f, t(fiber[0]) == fiber[0], "tau^ moves a size-1 fiber");
      if (fiber.size() == 2) expect(f, t(fiber[0]) == fiber[1] && t(fiber[1]) == fiber[0], "tau^ fails to swap a pair");
    }
  }
  if (!first) return f;
  bool meets = false;
  for (const auto& lambda : proj.source().domain())
    meets = meets || std::find(D_e.begin(), D_e.end(), lambda) != D_e.end();
  expect(f, (first->is_identity()) != meets, "tau^ identity status disagrees with D meeting D_e");
  if (!first->is_identity()) expect(f, (*first * *first).is_identity(), "tau^ is not an involution");
  return f;
}

/// Descent to T_{D;W'} is a homomorphism with τ̂ in its kernel.
inline Failures descent(const PermutationGroup& W, const PermutationGroup& Wp, const std::vector<Partition>& D) {
  Failures f;
  const auto proj = project(fixtures::poset(W, D), Wp);
  std::optional<Permutation> tau;
  for (const auto& x : Wp.elements())
    if (!W.contains(x)) {
      tau = x;
      break;
    }
  const auto t = tau ? chiral_involution(proj, *tau) : PosetAutomorphism::identity(proj.source().size());
  const auto G = aut0_equivariant(proj.source(), t);
  const auto& el = G.elements();
  std::vector<PosetAutomorphism> down;
  for (const auto& a : el) {
    down.push_back(descend(a, proj));
    expect(f, is_stratified_automorphism(proj.target(), down.back().map()), "descended map is not an automorphism");
  }
  expect(f, descend(t, proj).is_identity(), "tau^ does not descend to the identity");
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j)
      if (descend(el[i] * el[j], proj) != down[i] * down[j]) {
        f.push_back("descent is not multiplicative");
        return f;
      }
  return f;
}

/// Every chiral pair is indistinguishable via substitution reactions, via
/// pairs of characters and via characters.
inline Failures chiral_pairs_indistinguishable(const MoleculeSpec& spec, const std::vector<Partition>& D) {
  Failures f;
  Analysis an(spec, D);
  const auto& p = an.poset();
  for (auto [a, b] : chiral_pairs(an.chiral_projection())) {
    const auto pair = p.orbit(a).id() + ", " + p.orbit(b).id();
    expect(f, an.substitution_verdict(a, b).indistinguishable(), "chiral pair fails substitution verdict: " + pair);
    expect(f, an.separator().compare(a, b, an.structural_projection(), true).indistinguishable,
           "chiral pair distinguishable via pairs of characters: " + pair);
    expect(f, an.separator().compare(a, b, an.structural_projection(), false).indistinguishable,
           "chiral pair distinguishable via characters: " + pair);
  }
  for (std::size_t s = 0; s < p.stratum_count(); ++s)
    for (auto a = p.stratum_begin(s); a < p.stratum_end(s); ++a)
      for (auto b = a + 1; b < p.stratum_end(s); ++b)
        if (an.separator().compare(a, b, an.structural_projection(), true).indistinguishable)
          expect(f, an.separator().compare(a, b, an.structural_projection(), false).indistinguishable,
                 "pairs-indistinguishable but characters-distinguishable: " + p.orbit(a).id() + ", " + p.orbit(b).id());
  return f;
}

/// ν̂ maps T_{λ;χ,θ} onto T_{λ;νχ,θ} for every ν ∈ N, χ, λ ∈ D, θ; counts agree.
inline Failures character_equivariance(const PermutationGroup& W, const std::vector<Partition>& D) {
  Failures f;
  const auto p = fixtures::poset(W, D);
  const auto N = normalizer(W);
  CharacterSeparator sep(p, N);
  const auto& chars = sep.group_characters();
  for (const auto& nu : N.elements()) {
    const auto hat = induced_automorphism(nu, *p);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      const auto moved = act_on_character(nu, chars[c]);
      for (std::size_t s = 0; s < p->stratum_count(); ++s) {
        const auto& lambda = p->domain()[s];
        const auto& thetas = sep.young_characters(s);
        for (std::size_t t = 0; t < thetas.size(); ++t) {
          const auto before = chi_theta_set(*p, lambda, chars[c], thetas[t]);
          const auto after = chi_theta_set(*p, lambda, moved, thetas[t]);
          std::set<std::size_t> image;
          for (auto a : before) image.insert(hat(a));
          const std::string where = " (nu " + nu.to_string() + ", chi" + std::to_string(c) + ", " + lambda.label() +
                                    ", theta" + std::to_string(t) + ")";
          expect(f, image == std::set<std::size_t>(after.begin(), after.end()), "nu^ does not map the set" + where);
          expect(f, orbit_counts(*p, lambda, chars[c], thetas[t]) == orbit_counts(*p, lambda, moved, thetas[t]),
                 "orbit counts differ" + where);
        }
      }
    }
  }
  return f;
}

/// Aut₀ elements are automorphisms forming a group; the equivariant subgroup
/// commutes with t and preserves chiral pairs; hidden ≤ Aut₀' ≤ Aut₀.
inline Failures automorphism_group_invariants(Analysis& an) {
  Failures f;
  const auto& p = an.poset();
  const auto& A = an.aut0();
  const auto& Ae = an.aut0_equivariant();
  const auto& t = an.chiral_automorphism();
  for (const auto& x : A.elements()) expect(f, is_stratified_automorphism(p, x.map()), "Aut0 element fails the order check");
  for (const auto& x : A.elements()) {
    for (const auto& y : A.elements())
      if (!std::binary_search(A.elements().begin(), A.elements().end(), x * y)) {
        f.push_back("Aut0 is not closed under composition");
        return f;
      }
    if (!std::binary_search(A.elements().begin(), A.elements().end(), x.inverse())) {
      f.push_back("Aut0 is not closed under inverses");
      return f;
    }
  }
  if (t.is_identity()) expect(f, Ae.elements() == A.elements(), "equivariant group differs from Aut0 with t = 1");
  const auto pairs = chiral_pairs(an.chiral_projection());
  std::set<std::pair<std::size_t, std::size_t>> pair_set(pairs.begin(), pairs.end());
  for (const auto& x : Ae.elements()) {
    expect(f, x * t == t * x, "equivariant element does not commute with tau^");
    expect(f, A.contains(x), "equivariant element outside Aut0");
    for (auto [a, b] : pairs) {
      const auto xa = x(a), xb = x(b);
      expect(f, pair_set.count({std::min(xa, xb), std::max(xa, xb)}) == 1, "chiral pair not mapped to a chiral pair");
    }
  }
  for (const auto& h : an.hidden().elements()) expect(f, Ae.contains(h), "hidden element outside Aut0'");
  return f;
}

}  // namespace props
