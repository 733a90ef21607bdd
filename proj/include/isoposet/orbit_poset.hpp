#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"
#include "permgroup.hpp"
#include "tabloid.hpp"

namespace isoposet {

/// A W-orbit of tabloids of one shape.
struct Orbit {
  Partition shape;
  std::size_t stratum = 0;   // index into the owning poset's domain
  std::size_t position = 0;  // 0-based index within the stratum
  Tabloid representative;    // smallest member in enumeration order
  std::vector<Tabloid> members;

  /// "(2,2)#1"; 1-based within the stratum.
  std::string id() const { return shape.label() + "#" + std::to_string(position + 1); }
};

/// W-orbits of T_λ, ordered by representative.
inline std::vector<Orbit> orbits(const PermutationGroup& W, const Partition& lambda, const Limits& limits = {}) {
  detail::require(W.degree() == lambda.degree(), "orbits: group degree " + std::to_string(W.degree()) +
                                                     " does not match partition " + lambda.label());
  std::vector<Orbit> out;
  std::unordered_map<std::uint64_t, bool> seen;
  for (const auto& t : enumerate_tabloids(lambda, limits)) {
    if (seen.count(t.key())) continue;
    Orbit o;
    o.shape = lambda;
    o.position = out.size();
    std::unordered_map<std::uint64_t, Tabloid> members;
    for (const auto& sigma : W.elements()) {
      auto image = apply_permutation(sigma, t);
      members.emplace(image.key(), std::move(image));
    }
    for (auto& [k, m] : members) {
      seen[k] = true;
      o.members.push_back(std::move(m));
    }
    std::sort(o.members.begin(), o.members.end());
    o.representative = o.members.front();
    out.push_back(std::move(o));
  }
  return out;
}

/// T_{D;W}: the W-orbits of every shape in D with the induced order
/// a ≤ b ⇔ σA ≤ B for some σ ∈ W.
class StratifiedPoset {
 public:
  using bitset = boost::dynamic_bitset<>;

  const PermutationGroup& group() const { return group_; }
  /// Shapes in D, coarsest first.
  const std::vector<Partition>& domain() const { return domain_; }
  std::size_t degree() const { return group_.degree(); }
  std::size_t size() const { return orbits_.size(); }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  const Orbit& orbit(std::size_t i) const { return orbits_[i]; }

  std::size_t stratum_count() const { return domain_.size(); }
  std::size_t stratum_begin(std::size_t s) const { return offsets_[s]; }
  std::size_t stratum_end(std::size_t s) const { return offsets_[s + 1]; }
  std::size_t stratum_size(std::size_t s) const { return offsets_[s + 1] - offsets_[s]; }
  std::size_t stratum_of(std::size_t orbit) const { return orbits_[orbit].stratum; }

  std::optional<std::size_t> stratum_index(const Partition& lambda) const {
    auto it = std::find(domain_.begin(), domain_.end(), lambda);
    if (it == domain_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - domain_.begin());
  }

  bool leq(std::size_t a, std::size_t b) const { return below_[b][a]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && below_[b][a]; }
  /// {a : a ≤ b}
  const bitset& down_set(std::size_t b) const { return below_[b]; }
  /// {b : a ≤ b}
  const bitset& up_set(std::size_t a) const { return above_[a]; }

  /// The orbit containing a tabloid, if its shape is in D.
  std::optional<std::size_t> locate(const Tabloid& t) const {
    auto it = index_.find(t.key());
    if (it == index_.end() || t.degree() != degree()) return std::nullopt;
    return it->second;
  }

  /// Orbit by id ("(2,2)#1").
  std::optional<std::size_t> find(std::string_view id) const {
    for (std::size_t i = 0; i < orbits_.size(); ++i)
      if (orbits_[i].id() == id) return i;
    return std::nullopt;
  }

  std::size_t require_orbit(std::string_view id) const {
    auto i = find(id);
    detail::require(i.has_value(), "no orbit with id \"" + std::string(id) + "\"");
    return *i;
  }

 private:
  friend StratifiedPoset build_poset(const PermutationGroup&, std::vector<Partition>, const Limits&);

  PermutationGroup group_;
  std::vector<Partition> domain_;
  std::vector<Orbit> orbits_;
  std::vector<std::size_t> offsets_;
  std::vector<bitset> below_, above_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

inline StratifiedPoset build_poset(const PermutationGroup& W, std::vector<Partition> D, const Limits& limits = {}) {
  detail::require(!D.empty(), "build_poset: empty set of shapes");
  for (const auto& lambda : D)
    detail::require(lambda.degree() == W.degree(), "build_poset: shape " + lambda.label() +
                                                       " is not a partition of d = " + std::to_string(W.degree()));
  std::sort(D.begin(), D.end(), CoarserFirst{});
  D.erase(std::unique(D.begin(), D.end()), D.end());

  StratifiedPoset p;
  p.group_ = W;
  p.domain_ = std::move(D);
  p.offsets_.push_back(0);
  for (std::size_t s = 0; s < p.domain_.size(); ++s) {
    for (auto& o : orbits(W, p.domain_[s], limits)) {
      o.stratum = s;
      p.orbits_.push_back(std::move(o));
    }
    p.offsets_.push_back(p.orbits_.size());
  }
  const auto n = p.orbits_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& m : p.orbits_[i].members) p.index_[m.key()] = i;

  p.below_.assign(n, StratifiedPoset::bitset(n));
  p.above_.assign(n, StratifiedPoset::bitset(n));
  for (std::size_t b = 0; b < n; ++b) {
    const auto& shape_b = p.orbits_[b].shape;
    const auto& rep_b = p.orbits_[b].representative;
    for (std::size_t a = 0; a < n; ++a) {
      if (!dominance_leq(p.orbits_[a].shape, shape_b)) continue;
      // ∃σ ∈ W: σA ≤ B  ⇔  some member of a lies below B
      const auto& members = p.orbits_[a].members;
      if (std::any_of(members.begin(), members.end(), [&](const Tabloid& m) { return tabloid_leq(m, rep_b); })) {
        p.below_[b][a] = true;
        p.above_[a][b] = true;
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (p.below_[b][a] && p.below_[a][b])
        throw std::logic_error("orbit relation is not antisymmetric between " + p.orbits_[a].id() + " and " +
                               p.orbits_[b].id());
  return p;
}

/// Covering pairs (a, b): a < b with nothing strictly between. Sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const StratifiedPoset& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto n = p.size();
  for (std::size_t b = 0; b < n; ++b) {
    auto strictly_below = p.down_set(b);
    strictly_below[b] = false;
    auto covered = strictly_below;
    for (auto c = strictly_below.find_first(); c != StratifiedPoset::bitset::npos; c = strictly_below.find_next(c)) {
      auto under_c = p.down_set(c);
      under_c[c] = false;
      covered -= under_c;
    }
    for (auto a = covered.find_first(); a != StratifiedPoset::bitset::npos; a = covered.find_next(a))
      out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// ψ: T_{D;W} → T_{D;V} for an overgroup V ≥ W, with its fibers.
class Projection {
 public:
  Projection(std::shared_ptr<const StratifiedPoset> source, std::shared_ptr<const StratifiedPoset> target)
      : source_(std::move(source)), target_(std::move(target)) {
    image_.resize(source_->size());
    fibers_.resize(target_->size());
    for (std::size_t a = 0; a < source_->size(); ++a) {
      auto t = target_->locate(source_->orbit(a).representative);
      if (!t) throw std::logic_error("projection target misses orbit " + source_->orbit(a).id());
      image_[a] = *t;
      fibers_[*t].push_back(a);
    }
  }

  const StratifiedPoset& source() const { return *source_; }
  const StratifiedPoset& target() const { return *target_; }
  const std::shared_ptr<const StratifiedPoset>& source_ptr() const { return source_; }
  const std::shared_ptr<const StratifiedPoset>& target_ptr() const { return target_; }

  std::size_t operator()(std::size_t a) const { return image_[a]; }
  const std::vector<std::size_t>& image() const { return image_; }
  const std::vector<std::vector<std::size_t>>& fibers() const { return fibers_; }
  const std::vector<std::size_t>& fiber(std::size_t t) const { return fibers_[t]; }

 private:
  std::shared_ptr<const StratifiedPoset> source_, target_;
  std::vector<std::size_t> image_;
  std::vector<std::vector<std::size_t>> fibers_;
};

/// Fusion of the source orbits under any overgroup (used for W'').
inline Projection fuse(std::shared_ptr<const StratifiedPoset> source, const PermutationGroup& overgroup,
                       const Limits& limits = {}) {
  detail::require(source->group().is_subgroup_of(overgroup), "fuse: W is not a subgroup of the overgroup");
  auto target = std::make_shared<const StratifiedPoset>(build_poset(overgroup, source->domain(), limits));
  return Projection(std::move(source), std::move(target));
}

/// ψ_D for W ≤ W' with |W':W| ∈ {1, 2}; every fiber has one or two orbits.
inline Projection project(std::shared_ptr<const StratifiedPoset> source, const PermutationGroup& Wp,
                          const Limits& limits = {}) {
  detail::require(source->group().is_subgroup_of(Wp), "project: W is not a subgroup of W'");
  const auto idx = index(Wp, source->group());
  detail::require(idx == 1 || idx == 2, "project: |W':W| = " + std::to_string(idx) + ", expected 1 or 2");
  auto proj = fuse(std::move(source), Wp, limits);
  for (const auto& f : proj.fibers())
    if (f.empty() || f.size() > 2) throw std::logic_error("projection fiber of size " + std::to_string(f.size()));
  return proj;
}

inline Projection project(const PermutationGroup& W, const PermutationGroup& Wp, std::vector<Partition> D,
                          const Limits& limits = {}) {
  return project(std::make_shared<const StratifiedPoset>(build_poset(W, std::move(D), limits)), Wp, limits);
}

/// Size-2 fibers as ordered pairs (smaller index first), sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> chiral_pairs(const Projection& proj) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& f : proj.fibers())
    if (f.size() == 2) out.emplace_back(f[0], f[1]);
  std::sort(out.begin(), out.end());
  return out;
}

/// D_e: the shapes that carry a size-2 fiber. Needs a projection over all of P_d.
inline std::vector<Partition> chiral_support_ideal(const Projection& proj) {
  const auto& src = proj.source();
  detail::require(src.domain() == partitions_of(src.degree(), Limits::overridden()),
                  "chiral_support_ideal needs a projection built over all partitions of d");
  std::vector<Partition> out;
  for (std::size_t s = 0; s < src.stratum_count(); ++s) {
    bool has_pair = false;
    for (std::size_t t = proj.target().stratum_begin(s); t < proj.target().stratum_end(s); ++t)
      has_pair = has_pair || proj.fiber(t).size() == 2;
    if (has_pair) out.push_back(src.domain()[s]);
  }
  return out;
}

/// The W'/W action on source orbits: a ↦ O_W(ηA), for η ∈ W'.
inline Permutation coset_action(const Projection& proj, const Permutation& eta) {
  detail::require(proj.target().group().contains(eta), "coset_action: " + eta.to_string() + " is not in W'");
  const auto& src = proj.source();
  std::vector<Permutation::point_type> im(src.size());
  for (std::size_t a = 0; a < src.size(); ++a)
    im[a] = static_cast<Permutation::point_type>(*src.locate(apply_permutation(eta, src.orbit(a).representative)));
  return Permutation(std::move(im));
}

}  // namespace isoposet
