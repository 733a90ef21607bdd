#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "character.hpp"
#include "errors.hpp"
#include "orbit_poset.hpp"
#include "permgroup.hpp"
#include "tabloid.hpp"

namespace isoposet {

/// S_λ, the stabilizer of the canonical tabloid I_λ.
struct YoungSubgroup {
  Partition shape;
  std::shared_ptr<const PermutationGroup> group;
};

inline YoungSubgroup young_subgroup(const Partition& lambda, const Limits& limits = {}) {
  const auto d = lambda.degree();
  std::size_t order = 1;
  for (std::size_t k = 0; k < lambda.length(); ++k)
    for (std::size_t i = 2; i <= lambda[k]; ++i) {
      order *= i;
      detail::within_limit(order, limits.character_group_order, "Young subgroup order");
    }
  std::vector<Permutation> gens;
  std::size_t start = 0;
  for (std::size_t k = 0; k < lambda.length(); ++k) {
    for (std::size_t i = start; i + 1 < start + lambda[k]; ++i) {
      std::vector<Permutation::point_type> im(d);
      for (std::size_t p = 0; p < d; ++p) im[p] = static_cast<Permutation::point_type>(p);
      std::swap(im[i], im[i + 1]);
      gens.emplace_back(std::move(im));
    }
    start += lambda[k];
  }
  return {lambda, std::make_shared<const PermutationGroup>(generate_group(d, std::move(gens)))};
}

/// W_A = {σ ∈ W : σA = A}.
inline PermutationGroup stabilizer(const PermutationGroup& W, const Tabloid& a) {
  detail::require(W.degree() == a.degree(), "stabilizer: degree mismatch");
  std::vector<Permutation> fixing;
  for (const auto& s : W.elements())
    if (apply_permutation(s, a) == a) fixing.push_back(s);
  return PermutationGroup::from_closed_set(W.degree(), std::move(fixing));
}

/// β_{A,χ} = 1 on W_A, where β(σ) = χ(σ)θ(υ⁻¹συ) and υ = coset_rep(A).
inline bool beta_holds(const OneDimCharacter& chi, const OneDimCharacter& theta, const Tabloid& a) {
  detail::require(chi.group().degree() == a.degree() && theta.group().degree() == a.degree(),
                  "beta_holds: degree mismatch");
  const auto I = canonical_tabloid(a.shape());
  for (const auto& g : theta.group().generators())
    detail::require(apply_permutation(g, I) == I, "beta_holds: theta is not a character of S_" + a.shape().label());
  const auto upsilon = coset_rep(a);
  const auto upsilon_inv = upsilon.inverse();
  for (const auto& sigma : chi.group().elements()) {
    if (apply_permutation(sigma, a) != a) continue;
    const auto s = upsilon_inv * sigma * upsilon;
    if (!theta.group().contains(s))
      throw std::logic_error("beta_holds: conjugated stabilizer element " + s.to_string() + " is outside S_lambda");
    if (!(chi(sigma) * theta(s)).is_one()) return false;
  }
  return true;
}

/// Orbits a of stratum λ with a ∈ T_{λ;χ,θ}, as sorted poset indices.
inline std::vector<std::size_t> chi_theta_set(const StratifiedPoset& p, const Partition& lambda,
                                              const OneDimCharacter& chi, const OneDimCharacter& theta) {
  detail::require(chi.group() == p.group(), "chi_theta_set: chi is not a character of W");
  const auto s = p.stratum_index(lambda);
  detail::require(s.has_value(), "chi_theta_set: " + lambda.label() + " is not in D");
  std::vector<std::size_t> out;
  for (auto a = p.stratum_begin(*s); a < p.stratum_end(*s); ++a) {
    const auto& o = p.orbit(a);
    const bool in = beta_holds(chi, theta, o.representative);
    if (o.members.size() > 1 && beta_holds(chi, theta, o.members[1]) != in)
      throw std::logic_error("chi_theta_set: membership depends on the representative of " + o.id());
    if (in) out.push_back(a);
  }
  return out;
}

/// n_{λ;χ,θ}.
inline std::size_t orbit_counts(const StratifiedPoset& p, const Partition& lambda, const OneDimCharacter& chi,
                                const OneDimCharacter& theta) {
  return chi_theta_set(p, lambda, chi, theta).size();
}

/// νχ: σ ↦ χ(ν⁻¹σν).
inline OneDimCharacter act_on_character(const Permutation& nu, const OneDimCharacter& chi) {
  const auto& W = chi.group();
  detail::require(W.normalized_by(nu), "act_on_character: " + nu.to_string() + " does not normalize W");
  const auto nu_inv = nu.inverse();
  std::vector<RootOfUnity> values;
  values.reserve(W.order());
  for (const auto& sigma : W.elements()) values.push_back(chi(nu_inv * sigma * nu));
  return OneDimCharacter(chi.group_ptr(), std::move(values));
}

/// (χ,θ) separates a from b: a ∈ T_{λ;χ,θ} and b ∉ T_{λ;χ,θ}.
inline bool separates(const OneDimCharacter& chi, const OneDimCharacter& theta, const Orbit& a, const Orbit& b) {
  detail::require(a.shape == b.shape, "separates: orbits of different shapes");
  return beta_holds(chi, theta, a.representative) && !beta_holds(chi, theta, b.representative);
}

/// One separating (χ,θ) and the ν reversing it, if any.
struct SeparatingPair {
  std::size_t chi = 0;    // index into the W characters
  std::size_t theta = 0;  // index into the S_λ characters
  bool from_first = true; // separates the first orbit from the second
  std::optional<Permutation> witness;
};

/// Outcome of the pairs-of-characters (or characters-only) test for two orbits.
struct SeparationRecord {
  std::size_t orbit_a = 0, orbit_b = 0;
  bool pairs_of_characters = true;
  bool same_structural_orbit = false;
  std::vector<SeparatingPair> separating;
  bool indistinguishable = false;
};

/// Caches characters, membership tables and the N'/W action for one poset.
class CharacterSeparator {
 public:
  CharacterSeparator(std::shared_ptr<const StratifiedPoset> p, const PermutationGroup& Np, const Limits& limits = {})
      : p_(std::move(p)), limits_(limits) {
    const auto& W = p_->group();
    detail::require(W.is_subgroup_of(Np), "CharacterSeparator: W is not a subgroup of N'");
    for (const auto& g : Np.generators())
      detail::require(W.normalized_by(g), "CharacterSeparator: N' does not normalize W");
    W_ = std::make_shared<const PermutationGroup>(W);
    chars_ = one_dim_characters(W_, limits_);
    nus_ = coset_representatives(Np, W);
    action_.resize(nus_.size());
    for (std::size_t n = 0; n < nus_.size(); ++n)
      for (const auto& chi : chars_) action_[n].push_back(character_index(act_on_character(nus_[n], chi)));
    young_.resize(p_->stratum_count());
    member_.resize(p_->stratum_count());
  }

  const StratifiedPoset& poset() const { return *p_; }
  const std::vector<OneDimCharacter>& group_characters() const { return chars_; }
  /// Coset representatives of N'/W; the first is the identity.
  const std::vector<Permutation>& normalizer_representatives() const { return nus_; }

  std::size_t character_index(const OneDimCharacter& chi) const {
    for (std::size_t i = 0; i < chars_.size(); ++i)
      if (chars_[i].values() == chi.values()) return i;
    throw std::logic_error("character not found in X_W");
  }

  /// Index of ν_n χ_c.
  std::size_t act(std::size_t n, std::size_t c) const { return action_[n][c]; }

  const std::vector<OneDimCharacter>& young_characters(std::size_t stratum) {
    auto& slot = young_[stratum];
    if (slot.empty()) slot = one_dim_characters(young_subgroup(p_->domain()[stratum], limits_).group, limits_);
    return slot;
  }

  /// a ∈ T_{λ;χ_c,θ_t} for the stratum λ of a.
  bool member(std::size_t c, std::size_t t, std::size_t a) {
    const auto s = p_->stratum_of(a);
    auto& table = member_[s];
    if (table.empty()) {
      const auto& thetas = young_characters(s);
      const auto& lambda = p_->domain()[s];
      table.assign(chars_.size() * thetas.size(), std::vector<bool>(p_->stratum_size(s), false));
      for (std::size_t ci = 0; ci < chars_.size(); ++ci)
        for (std::size_t ti = 0; ti < thetas.size(); ++ti)
          for (auto x : chi_theta_set(*p_, lambda, chars_[ci], thetas[ti]))
            table[ci * thetas.size() + ti][x - p_->stratum_begin(s)] = true;
    }
    return table[c * young_characters(s).size() + t][a - p_->stratum_begin(s)];
  }

  bool separates(std::size_t c, std::size_t t, std::size_t a, std::size_t b) {
    return member(c, t, a) && !member(c, t, b);
  }

  /// The pairs-of-characters test (θ ranges over X_{S_λ}) or the
  /// characters-only test (θ trivial) against the structural projection.
  SeparationRecord compare(std::size_t a, std::size_t b, const Projection& structural, bool pairs_of_characters) {
    detail::require(p_->stratum_of(a) == p_->stratum_of(b), "compare: orbits of different shapes");
    detail::require(&structural.source() == p_.get() || structural.source().size() == p_->size(),
                    "compare: structural projection is over a different poset");
    SeparationRecord r;
    r.orbit_a = a;
    r.orbit_b = b;
    r.pairs_of_characters = pairs_of_characters;
    r.same_structural_orbit = structural(a) == structural(b);
    const auto theta_count = pairs_of_characters ? young_characters(p_->stratum_of(a)).size() : 1;
    bool all_reversed = true;
    for (int dir = 0; dir < 2; ++dir) {
      const auto x = dir == 0 ? a : b, y = dir == 0 ? b : a;
      for (std::size_t c = 0; c < chars_.size(); ++c)
        for (std::size_t t = 0; t < theta_count; ++t) {
          if (!separates(c, t, x, y)) continue;
          SeparatingPair sp{c, t, dir == 0, std::nullopt};
          for (std::size_t n = 0; n < nus_.size() && !sp.witness; ++n)
            if (separates(act(n, c), t, y, x)) sp.witness = nus_[n];
          all_reversed = all_reversed && sp.witness.has_value();
          r.separating.push_back(std::move(sp));
        }
    }
    r.indistinguishable = r.same_structural_orbit && all_reversed;
    return r;
  }

 private:
  std::shared_ptr<const StratifiedPoset> p_;
  Limits limits_;
  std::shared_ptr<const PermutationGroup> W_;
  std::vector<OneDimCharacter> chars_;
  std::vector<Permutation> nus_;
  std::vector<std::vector<std::size_t>> action_;
  std::vector<std::vector<OneDimCharacter>> young_;
  std::vector<std::vector<std::vector<bool>>> member_;
};

inline SeparationRecord indistinguishable_via_pairs(std::shared_ptr<const StratifiedPoset> p, std::size_t a,
                                                    std::size_t b, const PermutationGroup& Np,
                                                    const Projection& structural, const Limits& limits = {}) {
  CharacterSeparator sep(std::move(p), Np, limits);
  return sep.compare(a, b, structural, true);
}

inline SeparationRecord indistinguishable_via_characters(std::shared_ptr<const StratifiedPoset> p, std::size_t a,
                                                         std::size_t b, const PermutationGroup& Np,
                                                         const Projection& structural, const Limits& limits = {}) {
  CharacterSeparator sep(std::move(p), Np, limits);
  return sep.compare(a, b, structural, false);
}

}  // namespace isoposet
