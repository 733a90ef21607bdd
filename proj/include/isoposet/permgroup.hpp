#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"

namespace isoposet {

/// A finite permutation group stored as its full, lexicographically sorted
/// element list together with a generating set.
class PermutationGroup {
 public:
  PermutationGroup() : PermutationGroup(1) {}

  /// The trivial group of the given degree.
  explicit PermutationGroup(std::size_t degree)
      : degree_(degree), elements_{Permutation::identity(degree)} {}

  /// Closure of `generators`; std::nullopt as soon as the closure would exceed
  /// `max_order` (0 means no bound).
  static std::optional<PermutationGroup> try_generate(std::size_t degree,
                                                      std::vector<Permutation> generators,
                                                      std::size_t max_order = 0) {
    for (const auto& g : generators)
      detail::require(g.degree() == degree, "generator " + g.to_string() + " has degree " +
                                                std::to_string(g.degree()) + ", expected " +
                                                std::to_string(degree));
    PermutationGroup out(degree);
    std::vector<Permutation> gens;
    for (auto& g : generators)
      if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end())
        gens.push_back(std::move(g));

    std::unordered_set<Permutation, PermutationHash> seen{Permutation::identity(degree)};
    std::vector<Permutation> frontier{Permutation::identity(degree)};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& x : frontier)
        for (const auto& g : gens) {
          auto y = x * g;
          if (seen.insert(y).second) {
            if (max_order != 0 && seen.size() > max_order) return std::nullopt;
            next.push_back(std::move(y));
          }
        }
      frontier = std::move(next);
    }
    out.elements_.assign(seen.begin(), seen.end());
    std::sort(out.elements_.begin(), out.elements_.end());
    out.generators_ = std::move(gens);
    return out;
  }

  /// Wraps an element list already known to be closed under composition.
  /// A generating set is chosen greedily in canonical order.
  static PermutationGroup from_closed_set(std::size_t degree, std::vector<Permutation> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::vector<Permutation> gens;
    PermutationGroup current(degree);
    for (const auto& e : elements) {
      if (current.contains(e)) continue;
      gens.push_back(e);
      current = *try_generate(degree, gens);
    }
    detail::require(current.order() == elements.size(), "element set is not a group");
    return current;
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Permutation& identity() const { return elements_.front(); }

  bool contains(const Permutation& p) const {
    return p.degree() == degree_ && std::binary_search(elements_.begin(), elements_.end(), p);
  }

  /// Position of `p` in the canonical element list.
  std::optional<std::size_t> index_of(const Permutation& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool is_subgroup_of(const PermutationGroup& other) const {
    if (degree_ != other.degree_) return false;
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const Permutation& g) { return other.contains(g); });
  }

  bool is_abelian() const {
    for (const auto& a : generators_)
      for (const auto& b : generators_)
        if (a * b != b * a) return false;
    return true;
  }

  /// νWν⁻¹ = W, tested on generators.
  bool normalized_by(const Permutation& nu) const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const Permutation& g) { return contains(conjugate(nu, g)); });
  }

  friend bool operator==(const PermutationGroup& a, const PermutationGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t degree_;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
};

inline PermutationGroup generate_group(std::size_t degree, std::vector<Permutation> generators) {
  return *PermutationGroup::try_generate(degree, std::move(generators));
}

/// S_d, enumerated. Guarded by the normalizer degree limit.
inline PermutationGroup symmetric_group(std::size_t degree, const Limits& limits = {}) {
  detail::within_limit(degree, limits.normalizer_degree, "degree for exhaustive S_d search");
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<Permutation::point_type> t(degree), c(degree);
    std::iota(t.begin(), t.end(), Permutation::point_type{0});
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < degree; ++i) c[i] = static_cast<Permutation::point_type>((i + 1) % degree);
    gens = {Permutation(t), Permutation(c)};
  }
  return generate_group(degree, std::move(gens));
}

/// N = {ν ∈ S_d : νWν⁻¹ = W}, by exhaustive search over S_d.
inline PermutationGroup normalizer(const PermutationGroup& W, const Limits& limits = {}) {
  const auto d = W.degree();
  detail::within_limit(d, limits.normalizer_degree, "degree for normalizer search");
  std::vector<Permutation::point_type> im(d);
  std::iota(im.begin(), im.end(), Permutation::point_type{0});
  std::vector<Permutation> members;
  do {
    Permutation nu(im);
    if (W.normalized_by(nu)) members.push_back(std::move(nu));
  } while (std::next_permutation(im.begin(), im.end()));
  return PermutationGroup::from_closed_set(d, std::move(members));
}

/// N' = N(W) ∩ N(W').
inline PermutationGroup intersect_normalizers(const PermutationGroup& W, const PermutationGroup& Wp,
                                              const Limits& limits = {}) {
  detail::require(W.is_subgroup_of(Wp), "W is not a subgroup of W'");
  const auto n = normalizer(W, limits);
  std::vector<Permutation> members;
  for (const auto& nu : n.elements())
    if (Wp.normalized_by(nu)) members.push_back(nu);
  return PermutationGroup::from_closed_set(W.degree(), std::move(members));
}

/// |V : W|
inline std::size_t index(const PermutationGroup& V, const PermutationGroup& W) {
  detail::require(W.is_subgroup_of(V), "index: not a subgroup");
  return V.order() / W.order();
}

/// One representative per left coset gW, the canonically smallest member of
/// each coset; the identity represents W.
inline std::vector<Permutation> coset_representatives(const PermutationGroup& V,
                                                      const PermutationGroup& W) {
  detail::require(W.is_subgroup_of(V), "coset_representatives: not a subgroup");
  std::vector<bool> covered(V.order(), false);
  std::vector<Permutation> reps;
  for (std::size_t i = 0; i < V.order(); ++i) {
    if (covered[i]) continue;
    const auto& g = V.elements()[i];
    reps.push_back(g);
    for (const auto& w : W.elements()) covered[*V.index_of(g * w)] = true;
  }
  return reps;
}

/// [W, W] as the normal closure of the commutators of the generators.
inline PermutationGroup commutator_subgroup(const PermutationGroup& W) {
  const auto& gens = W.generators();
  std::vector<Permutation> kgens;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      auto c = a.inverse() * b.inverse() * a * b;
      if (!c.is_identity()) kgens.push_back(std::move(c));
    }
  auto K = generate_group(W.degree(), kgens);
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& g : gens)
      for (const auto& k : K.generators()) {
        auto c = conjugate(g, k);
        if (!K.contains(c)) {
          kgens.push_back(std::move(c));
          grew = true;
        }
      }
    if (grew) K = generate_group(W.degree(), kgens);
  }
  return K;
}

/// The quotient W/K as explicit cosets: coset id of every element of W
/// (aligned with W.elements()) and the number of cosets.
struct Quotient {
  std::vector<std::size_t> coset_of;
  std::vector<std::size_t> representative;  // index into W.elements()
  std::size_t order() const { return representative.size(); }
};

inline Quotient quotient(const PermutationGroup& W, const PermutationGroup& K) {
  detail::require(K.is_subgroup_of(W), "quotient: not a subgroup");
  Quotient q;
  constexpr auto unset = static_cast<std::size_t>(-1);
  q.coset_of.assign(W.order(), unset);
  for (std::size_t i = 0; i < W.order(); ++i) {
    if (q.coset_of[i] != unset) continue;
    const auto id = q.representative.size();
    q.representative.push_back(i);
    for (const auto& k : K.elements()) q.coset_of[*W.index_of(W.elements()[i] * k)] = id;
  }
  return q;
}

/// Elementary divisors (prime powers, ascending) of the abelianization W/[W,W].
inline std::vector<std::size_t> abelian_invariants(const PermutationGroup& W) {
  const auto K = commutator_subgroup(W);
  const auto q = quotient(W, K);
  const auto m = q.order();

  // order of each coset in W/K
  std::vector<std::size_t> orders;
  for (auto rep : q.representative) {
    const auto& g = W.elements()[rep];
    auto power = g;
    std::size_t k = 1;
    while (!K.contains(power)) {
      power = power * g;
      ++k;
    }
    orders.push_back(k);
  }

  std::vector<std::size_t> result;
  std::size_t rest = m;
  for (std::size_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    // n_k = #{x : x^(p^k) = 1} = p^(sum_i min(e_i, k)); the number of
    // cyclic factors with exponent >= k is log_p(n_k / n_{k-1}).
    std::vector<std::size_t> at_least;
    std::size_t prev = 1;
    for (std::size_t pk = p;; pk *= p) {
      const auto nk = static_cast<std::size_t>(
          std::count_if(orders.begin(), orders.end(), [&](std::size_t o) { return pk % o == 0; }));
      std::size_t ratio = nk / prev, count = 0;
      while (ratio > 1) {
        ratio /= p;
        ++count;
      }
      if (count == 0) break;
      at_least.push_back(count);
      prev = nk;
    }
    // at_least[k-1] = number of factors with exponent >= k
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const auto exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      std::size_t power = 1;
      for (std::size_t i = 0; i <= k; ++i) power *= p;
      for (std::size_t i = 0; i < exactly; ++i) result.push_back(power);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// Text form used in reports: "<order>: <gen>, <gen>".
inline std::string describe(const PermutationGroup& g) {
  std::string out = "order " + std::to_string(g.order()) + " generated by [";
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (i) out += ", ";
    out += g.generators()[i].to_string();
  }
  return out + "]";
}

}  // namespace isoposet
