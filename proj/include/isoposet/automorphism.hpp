#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "orbit_poset.hpp"
#include "permgroup.hpp"

namespace isoposet {

using big_order = boost::multiprecision::cpp_int;

/// A stratum-preserving order automorphism of a StratifiedPoset, as a
/// permutation of orbit indices.
class PosetAutomorphism {
 public:
  PosetAutomorphism() = default;
  explicit PosetAutomorphism(Permutation map) : map_(std::move(map)) {}

  static PosetAutomorphism identity(std::size_t n) { return PosetAutomorphism(Permutation::identity(n)); }

  const Permutation& map() const { return map_; }
  std::size_t size() const { return map_.degree(); }
  std::size_t operator()(std::size_t a) const { return map_(a); }
  bool is_identity() const { return map_.is_identity(); }

  PosetAutomorphism operator*(const PosetAutomorphism& rhs) const { return PosetAutomorphism(map_ * rhs.map_); }
  PosetAutomorphism inverse() const { return PosetAutomorphism(map_.inverse()); }

  /// Cycle notation on orbit ids: "((2,2)#1 (2,2)#2)((2,1,1)#1 (2,1,1)#2)".
  std::string to_string(const StratifiedPoset& p) const {
    const auto cs = map_.cycles();
    if (cs.empty()) return "()";
    std::string out;
    for (const auto& c : cs) {
      out += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ' ';
        out += p.orbit(c[i]).id();
      }
      out += ')';
    }
    return out;
  }

  friend bool operator==(const PosetAutomorphism&, const PosetAutomorphism&) = default;
  friend auto operator<=>(const PosetAutomorphism&, const PosetAutomorphism&) = default;

 private:
  Permutation map_;
};

/// Maps every stratum onto itself and satisfies f(a) ≤ f(b) ⇔ a ≤ b.
inline bool is_stratified_automorphism(const StratifiedPoset& p, const Permutation& f) {
  if (f.degree() != p.size()) return false;
  for (std::size_t a = 0; a < p.size(); ++a)
    if (p.stratum_of(f(a)) != p.stratum_of(a)) return false;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (p.leq(a, b) != p.leq(f(a), f(b))) return false;
  return true;
}

/// A group of poset automorphisms. Built either from a stabilizer chain
/// (base + transversals, as produced by the automorphism search) or from an
/// explicit element list. Elements are materialized when the order is at most
/// the enumeration cap.
class PosetAutGroup {
 public:
  std::size_t poset_size() const { return n_; }
  const big_order& order() const { return order_; }
  const std::vector<PosetAutomorphism>& generators() const { return generators_; }

  bool enumerated() const { return elements_.has_value(); }
  const std::vector<PosetAutomorphism>& elements() const {
    if (!elements_) throw limit_exceeded("automorphism group of order " + order_.str() + " was not enumerated");
    return *elements_;
  }

  bool contains(const PosetAutomorphism& g) const {
    if (g.size() != n_) return false;
    if (transversals_.empty()) return std::binary_search(elements_->begin(), elements_->end(), g);
    auto h = g;
    for (std::size_t i = 0; i < base_.size(); ++i) {
      const auto image = h(base_[i]);
      const auto& level = transversals_[i];
      auto it = std::find_if(level.begin(), level.end(),
                             [&](const PosetAutomorphism& u) { return u(base_[i]) == image; });
      if (it == level.end()) return false;
      h = it->inverse() * h;
    }
    return h.is_identity();
  }

  /// Group from an explicit, closed element list.
  static PosetAutGroup from_elements(std::size_t n, std::vector<PosetAutomorphism> elements,
                                     std::vector<PosetAutomorphism> generators) {
    PosetAutGroup g;
    g.n_ = n;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    g.order_ = elements.size();
    g.elements_ = std::move(elements);
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    std::erase_if(generators, [](const PosetAutomorphism& x) { return x.is_identity(); });
    g.generators_ = std::move(generators);
    return g;
  }

  /// Group from a stabilizer chain: every element is u₁u₂…u_k with u_i in
  /// transversal i, and u_i fixes base points 1..i-1.
  static PosetAutGroup from_chain(std::size_t n, std::vector<std::size_t> base,
                                  std::vector<std::vector<PosetAutomorphism>> transversals, std::size_t cap) {
    PosetAutGroup g;
    g.n_ = n;
    g.order_ = 1;
    for (const auto& t : transversals) g.order_ *= t.size();
    for (const auto& t : transversals)
      for (const auto& u : t)
        if (!u.is_identity()) g.generators_.push_back(u);
    g.base_ = std::move(base);
    g.transversals_ = std::move(transversals);
    if (g.order_ <= cap) {
      std::vector<PosetAutomorphism> all;
      all.reserve(static_cast<std::size_t>(g.order_));
      std::vector<std::size_t> levels;
      for (std::size_t i = 0; i < g.transversals_.size(); ++i)
        if (g.transversals_[i].size() > 1) levels.push_back(i);
      auto rec = [&](auto&& self, std::size_t li, const PosetAutomorphism& prefix) -> void {
        if (li == levels.size()) {
          all.push_back(prefix);
          return;
        }
        for (const auto& u : g.transversals_[levels[li]]) self(self, li + 1, prefix * u);
      };
      rec(rec, 0, PosetAutomorphism::identity(n));
      std::sort(all.begin(), all.end());
      g.elements_ = std::move(all);
    }
    return g;
  }

 private:
  std::size_t n_ = 0;
  big_order order_ = 1;
  std::vector<PosetAutomorphism> generators_;
  std::optional<std::vector<PosetAutomorphism>> elements_;
  std::vector<std::size_t> base_;
  std::vector<std::vector<PosetAutomorphism>> transversals_;
};

namespace detail {

/// Backtracking search for stratum-preserving order automorphisms, optionally
/// commuting with a fixed involution t. Candidates are pruned by an iterated
/// colour refinement on (stratum, relation profile, fiber size).
class AutomorphismSearch {
 public:
  AutomorphismSearch(const StratifiedPoset& p, const Permutation* involution)
      : p_(p), t_(involution), n_(p.size()) {
    refine();
    // Strata by increasing size, then orbit index.
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto sa = p_.stratum_size(p_.stratum_of(a)), sb = p_.stratum_size(p_.stratum_of(b));
      return sa != sb ? sa < sb : a < b;
    });
  }

  const std::vector<std::size_t>& base() const { return order_; }
  const std::vector<std::size_t>& colour() const { return colour_; }

  std::vector<std::size_t> candidates(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n_; ++c)
      if (colour_[c] == colour_[x]) out.push_back(c);
    return out;
  }

  /// First automorphism (in search order) that agrees with `forced`.
  std::optional<Permutation> find(const std::vector<std::pair<std::size_t, std::size_t>>& forced) {
    image_.assign(n_, kNone);
    used_.assign(n_, false);
    assigned_.clear();
    for (auto [x, c] : forced) {
      if (image_[x] != kNone) {
        if (image_[x] != c) return std::nullopt;
        continue;
      }
      if (used_[c] || !consistent(x, c)) return std::nullopt;
      assign(x, c);
    }
    if (!dfs(0)) return std::nullopt;
    std::vector<Permutation::point_type> im(n_);
    for (std::size_t i = 0; i < n_; ++i) im[i] = static_cast<Permutation::point_type>(image_[i]);
    return Permutation(std::move(im));
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  int relation(std::size_t x, std::size_t y) const {
    if (x == y) return 0;
    if (p_.leq(x, y)) return 1;
    if (p_.leq(y, x)) return 2;
    return 3;
  }

  void refine() {
    colour_.assign(n_, 0);
    {
      std::map<std::pair<std::size_t, bool>, std::size_t> ids;
      for (std::size_t x = 0; x < n_; ++x) {
        const bool fixed = t_ == nullptr || (*t_)(x) == x;
        colour_[x] = ids.try_emplace({p_.stratum_of(x), fixed}, ids.size()).first->second;
      }
    }
    for (std::size_t classes = 0;;) {
      std::map<std::vector<std::size_t>, std::size_t> ids;
      std::vector<std::size_t> next(n_);
      for (std::size_t x = 0; x < n_; ++x) {
        std::vector<std::size_t> sig;
        for (std::size_t y = 0; y < n_; ++y) {
          const auto r = relation(x, y);
          if (r == 1 || r == 2) sig.push_back(colour_[y] * 4 + static_cast<std::size_t>(r));
        }
        std::sort(sig.begin(), sig.end());
        sig.insert(sig.begin(), colour_[x]);
        if (t_) sig.insert(sig.begin() + 1, colour_[(*t_)(x)]);
        next[x] = ids.try_emplace(std::move(sig), ids.size()).first->second;
      }
      colour_ = std::move(next);
      if (ids.size() == classes) break;
      classes = ids.size();
    }
  }

  bool consistent(std::size_t x, std::size_t c) const {
    if (colour_[x] != colour_[c]) return false;
    for (auto y : assigned_) {
      const auto fy = image_[y];
      if (p_.leq(x, y) != p_.leq(c, fy) || p_.leq(y, x) != p_.leq(fy, c)) return false;
    }
    if (t_) {
      const auto tx = (*t_)(x);
      if (tx == x) {
        if ((*t_)(c) != c) return false;
      } else if (image_[tx] != kNone && image_[tx] != (*t_)(c)) {
        return false;
      }
    }
    return true;
  }

  void assign(std::size_t x, std::size_t c) {
    image_[x] = c;
    used_[c] = true;
    assigned_.push_back(x);
  }
  void unassign(std::size_t x) {
    used_[image_[x]] = false;
    image_[x] = kNone;
    assigned_.pop_back();
  }

  bool dfs(std::size_t depth) {
    while (depth < n_ && image_[order_[depth]] != kNone) ++depth;
    if (depth == n_) return true;
    const auto x = order_[depth];
    for (std::size_t c = 0; c < n_; ++c) {
      if (used_[c] || !consistent(x, c)) continue;
      assign(x, c);
      if (dfs(depth + 1)) return true;
      unassign(x);
    }
    return false;
  }

  const StratifiedPoset& p_;
  const Permutation* t_;
  std::size_t n_;
  std::vector<std::size_t> colour_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
  std::vector<std::size_t> assigned_;
};

inline PosetAutGroup automorphism_group(const StratifiedPoset& p, const Permutation* involution,
                                        const Limits& limits) {
  within_limit(p.size(), limits.aut_orbit_count, "orbit count for automorphism search");
  AutomorphismSearch search(p, involution);
  const auto& base = search.base();
  std::vector<std::vector<PosetAutomorphism>> transversals;
  std::vector<std::pair<std::size_t, std::size_t>> forced;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto b = base[i];
    std::vector<PosetAutomorphism> level{PosetAutomorphism::identity(p.size())};
    for (auto c : search.candidates(b)) {
      if (c == b) continue;
      // base points already fixed cannot be images
      if (std::find(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(i), c) !=
          base.begin() + static_cast<std::ptrdiff_t>(i))
        continue;
      forced.emplace_back(b, c);
      if (auto f = search.find(forced)) level.emplace_back(std::move(*f));
      forced.pop_back();
    }
    transversals.push_back(std::move(level));
    forced.emplace_back(b, b);
  }
  return PosetAutGroup::from_chain(p.size(), base, std::move(transversals), limits.aut_enumeration_cap);
}

}  // namespace detail

/// Aut₀(T_{D;W}): all stratum-preserving order automorphisms.
inline PosetAutGroup aut0(const StratifiedPoset& p, const Limits& limits = {}) {
  return detail::automorphism_group(p, nullptr, limits);
}

/// The automorphisms commuting with the W'/W involution t (t = identity when W = W').
inline PosetAutGroup aut0_equivariant(const StratifiedPoset& p, const PosetAutomorphism& t, const Limits& limits = {}) {
  detail::require(is_stratified_automorphism(p, t.map()), "aut0_equivariant: t is not an automorphism of the poset");
  detail::require((t * t).is_identity(), "aut0_equivariant: t is not an involution");
  if (t.is_identity()) return aut0(p, limits);
  return detail::automorphism_group(p, &t.map(), limits);
}

/// Some automorphism with a ↦ b (commuting with t when given).
inline std::optional<PosetAutomorphism> find_automorphism(const StratifiedPoset& p, std::size_t a, std::size_t b,
                                                          const PosetAutomorphism* t = nullptr,
                                                          const Limits& limits = {}) {
  detail::within_limit(p.size(), limits.aut_orbit_count, "orbit count for automorphism search");
  const Permutation* inv = (t && !t->is_identity()) ? &t->map() : nullptr;
  detail::AutomorphismSearch search(p, inv);
  if (auto f = search.find({{a, b}})) return PosetAutomorphism(std::move(*f));
  return std::nullopt;
}

/// ν̂: O_W(A) ↦ O_W(νA), for ν in the normalizer of W.
inline PosetAutomorphism induced_automorphism(const Permutation& nu, const StratifiedPoset& p) {
  detail::require(p.group().normalized_by(nu), "induced_automorphism: " + nu.to_string() + " does not normalize W");
  std::vector<Permutation::point_type> im(p.size());
  for (std::size_t a = 0; a < p.size(); ++a)
    im[a] = static_cast<Permutation::point_type>(*p.locate(apply_permutation(nu, p.orbit(a).representative)));
  return PosetAutomorphism(Permutation(std::move(im)));
}

/// The hidden symmetries {ν̂ : ν ∈ N'}.
inline PosetAutGroup hidden_subgroup(const StratifiedPoset& p, const PermutationGroup& Np, const PermutationGroup& W) {
  detail::require(p.group() == W, "hidden_subgroup: poset was not built over W");
  detail::require(W.is_subgroup_of(Np), "hidden_subgroup: W is not a subgroup of N'");
  for (const auto& g : Np.generators())
    detail::require(W.normalized_by(g), "hidden_subgroup: N' is not inside the normalizer of W");
  std::vector<PosetAutomorphism> elements, gens;
  for (const auto& nu : coset_representatives(Np, W)) elements.push_back(induced_automorphism(nu, p));
  for (const auto& nu : Np.generators()) gens.push_back(induced_automorphism(nu, p));
  return PosetAutGroup::from_elements(p.size(), std::move(elements), std::move(gens));
}

/// τ̂ for τ ∈ W'∖W: swaps the members of every size-2 fiber, fixes the rest.
inline PosetAutomorphism chiral_involution(const Projection& proj, const Permutation& tau) {
  detail::require(!proj.source().group().contains(tau), "chiral_involution: " + tau.to_string() + " lies in W");
  return PosetAutomorphism(coset_action(proj, tau));
}

/// α' on T_{D;W'} with α'ψ = ψα; α must be W'/W-equivariant.
inline PosetAutomorphism descend(const PosetAutomorphism& alpha, const Projection& proj) {
  detail::require(alpha.size() == proj.source().size(), "descend: automorphism size mismatch");
  std::vector<Permutation::point_type> im(proj.target().size());
  for (std::size_t t = 0; t < proj.target().size(); ++t) {
    std::optional<std::size_t> value;
    for (auto a : proj.fiber(t)) {
      const auto v = proj(alpha(a));
      detail::require(!value || *value == v, "descend: automorphism is not W'/W-equivariant");
      value = v;
    }
    im[t] = static_cast<Permutation::point_type>(*value);
  }
  return PosetAutomorphism(Permutation(std::move(im)));
}

/// The restriction of a set of automorphisms to one stratum, as permutations
/// of the stratum's positions.
inline std::vector<Permutation> restrict_to_stratum(const std::vector<PosetAutomorphism>& elements,
                                                    const StratifiedPoset& p, std::size_t stratum) {
  const auto begin = p.stratum_begin(stratum), size = p.stratum_size(stratum);
  std::set<Permutation> out;
  for (const auto& g : elements) {
    std::vector<Permutation::point_type> im(size);
    for (std::size_t i = 0; i < size; ++i) im[i] = static_cast<Permutation::point_type>(g(begin + i) - begin);
    out.insert(Permutation(std::move(im)));
  }
  return {out.begin(), out.end()};
}

/// Elements fixing every orbit of the given strata.
inline std::vector<PosetAutomorphism> pointwise_stabilizer(const PosetAutGroup& g, const StratifiedPoset& p,
                                                           const std::vector<std::size_t>& strata) {
  std::vector<PosetAutomorphism> out;
  for (const auto& x : g.elements()) {
    bool fixes = true;
    for (auto s : strata)
      for (std::size_t a = p.stratum_begin(s); a < p.stratum_end(s) && fixes; ++a) fixes = x(a) == a;
    if (fixes) out.push_back(x);
  }
  return out;
}

/// Action of the group on one stratum.
struct StratumAction {
  Partition shape;
  std::vector<std::vector<std::size_t>> orbits;  // orbit indices of the poset
  std::optional<std::size_t> action_order;       // order of the induced permutation group
};

/// Order, abelian invariants and per-stratum action of an automorphism group.
struct GroupStructure {
  big_order order;
  std::optional<std::vector<std::size_t>> abelian_invariants;
  std::vector<StratumAction> strata;
};

inline GroupStructure describe(const PosetAutGroup& g, const StratifiedPoset& p, const Limits& limits = {}) {
  GroupStructure out;
  out.order = g.order();
  const auto cap = std::min<std::size_t>(limits.aut_enumeration_cap, 100'000);

  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(x.map());
  if (g.order() <= cap) {
    if (auto as_perm = PermutationGroup::try_generate(p.size(), gens, cap))
      out.abelian_invariants = abelian_invariants(*as_perm);
  }

  for (std::size_t s = 0; s < p.stratum_count(); ++s) {
    StratumAction sa;
    sa.shape = p.domain()[s];
    const auto begin = p.stratum_begin(s), end = p.stratum_end(s);
    std::vector<bool> seen(end - begin, false);
    for (auto a = begin; a < end; ++a) {
      if (seen[a - begin]) continue;
      std::vector<std::size_t> orbit{a};
      seen[a - begin] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& x : g.generators()) {
          const auto y = x(orbit[i]);
          if (!seen[y - begin]) {
            seen[y - begin] = true;
            orbit.push_back(y);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      sa.orbits.push_back(std::move(orbit));
    }
    std::vector<Permutation> restricted;
    for (const auto& x : g.generators()) {
      std::vector<Permutation::point_type> im(end - begin);
      for (auto a = begin; a < end; ++a) im[a - begin] = static_cast<Permutation::point_type>(x(a) - begin);
      restricted.emplace_back(std::move(im));
    }
    if (auto r = PermutationGroup::try_generate(end - begin, restricted, cap)) sa.action_order = r->order();
    out.strata.push_back(std::move(sa));
  }
  return out;
}

}  // namespace isoposet
