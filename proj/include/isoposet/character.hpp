#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "permgroup.hpp"

namespace isoposet {

/// e^{2πi q} for a rational q in [0, 1), kept reduced. Multiplication is
/// addition mod 1, so everything stays exact.
class RootOfUnity {
 public:
  constexpr RootOfUnity() = default;

  RootOfUnity(std::int64_t numerator, std::int64_t denominator) {
    detail::require(denominator > 0, "root of unity with non-positive denominator");
    numerator %= denominator;
    if (numerator < 0) numerator += denominator;
    const auto g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
  }

  static RootOfUnity one() { return {}; }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  /// Multiplicative order.
  std::int64_t order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const {
    const auto l = std::lcm(den_, o.den_);
    return RootOfUnity(num_ * (l / den_) + o.num_ * (l / o.den_), l);
  }
  RootOfUnity inverse() const { return RootOfUnity(-num_, den_); }

  /// "1", "-1", or "e(p/q)".
  std::string to_string() const {
    if (num_ == 0) return "1";
    if (den_ == 2) return "-1";
    return "e(" + std::to_string(num_) + "/" + std::to_string(den_) + ")";
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend auto operator<=>(const RootOfUnity&, const RootOfUnity&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A homomorphism from a permutation group to the roots of unity. Values are
/// aligned with group().elements().
class OneDimCharacter {
 public:
  OneDimCharacter(std::shared_ptr<const PermutationGroup> group, std::vector<RootOfUnity> values)
      : group_(std::move(group)), values_(std::move(values)) {
    detail::require(values_.size() == group_->order(), "character value count does not match group order");
  }

  const PermutationGroup& group() const { return *group_; }
  const std::shared_ptr<const PermutationGroup>& group_ptr() const { return group_; }
  const std::vector<RootOfUnity>& values() const { return values_; }

  RootOfUnity operator()(const Permutation& sigma) const {
    const auto i = group_->index_of(sigma);
    detail::require(i.has_value(), "character evaluated outside its group at " + sigma.to_string());
    return values_[*i];
  }

  bool is_trivial() const {
    return std::all_of(values_.begin(), values_.end(), [](const RootOfUnity& v) { return v.is_one(); });
  }

  /// Exhaustive check of χ(στ) = χ(σ)χ(τ) over all pairs.
  bool is_homomorphism() const {
    const auto& el = group_->elements();
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = 0; j < el.size(); ++j)
        if (values_[*group_->index_of(el[i] * el[j])] != values_[i] * values_[j]) return false;
    return true;
  }

  /// Values on the group's generators, e.g. "[(12)->-1, (34)->1]".
  std::string to_string() const {
    std::string out = "[";
    const auto& gens = group_->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i) out += ", ";
      out += gens[i].to_string() + "->" + (*this)(gens[i]).to_string();
    }
    return out + "]";
  }

  friend bool operator==(const OneDimCharacter& a, const OneDimCharacter& b) {
    return *a.group_ == *b.group_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const PermutationGroup> group_;
  std::vector<RootOfUnity> values_;
};

/// All one-dimensional characters of W. The trivial character comes first;
/// the rest follow the lexicographic order of their values on a greedily
/// chosen generating set of W/[W,W].
inline std::vector<OneDimCharacter> one_dim_characters(std::shared_ptr<const PermutationGroup> W,
                                                       const Limits& limits = {}) {
  detail::within_limit(W->order(), limits.character_group_order, "group order for character enumeration");
  const auto K = commutator_subgroup(*W);
  const auto q = quotient(*W, K);
  const auto m = q.order();
  const auto& el = W->elements();

  auto coset_product = [&](std::size_t a, std::size_t b) {
    return q.coset_of[*W->index_of(el[q.representative[a]] * el[q.representative[b]])];
  };

  // order of each coset
  std::vector<std::size_t> coset_order(m, 1);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t x = c; x != 0; x = coset_product(x, c)) ++coset_order[c];
  // coset 0 holds the identity (canonically smallest element)

  // greedy generating set of the quotient
  std::vector<std::size_t> gens;
  std::vector<bool> in_span(m, false);
  in_span[0] = true;
  for (std::size_t c = 1; c < m; ++c) {
    if (in_span[c]) continue;
    gens.push_back(c);
    std::vector<std::size_t> span;
    for (std::size_t x = 0; x < m; ++x)
      if (in_span[x]) span.push_back(x);
    for (bool grew = true; grew;) {
      grew = false;
      const auto current = span;
      for (auto x : current)
        for (auto g : gens) {
          const auto y = coset_product(x, g);
          if (!in_span[y]) {
            in_span[y] = true;
            span.push_back(y);
            grew = true;
          }
        }
    }
  }

  // Enumerate value assignments k_i/ord(g_i) on the generators; keep those
  // that extend to a well-defined homomorphism of the quotient.
  std::vector<OneDimCharacter> out;
  std::vector<std::int64_t> assignment(gens.size(), 0);
  while (true) {
    std::vector<std::optional<RootOfUnity>> value(m);
    value[0] = RootOfUnity::one();
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      const auto x = queue[qi];
      for (std::size_t gi = 0; gi < gens.size() && ok; ++gi) {
        const auto y = coset_product(x, gens[gi]);
        const auto v = *value[x] * RootOfUnity(assignment[gi], static_cast<std::int64_t>(coset_order[gens[gi]]));
        if (!value[y]) {
          value[y] = v;
          queue.push_back(y);
        } else if (*value[y] != v) {
          ok = false;
        }
      }
    }
    if (ok) {
      std::vector<RootOfUnity> vals(el.size());
      for (std::size_t i = 0; i < el.size(); ++i) vals[i] = *value[q.coset_of[i]];
      out.emplace_back(W, std::move(vals));
    }

    bool advanced = false;
    for (std::size_t pos = gens.size(); pos-- > 0;) {
      if (++assignment[pos] < static_cast<std::int64_t>(coset_order[gens[pos]])) {
        advanced = true;
        break;
      }
      assignment[pos] = 0;
    }
    if (!advanced) break;
  }
  if (out.size() != m) throw std::logic_error("character count does not match the abelianization order");
  return out;
}

inline std::vector<OneDimCharacter> one_dim_characters(const PermutationGroup& W, const Limits& limits = {}) {
  return one_dim_characters(std::make_shared<const PermutationGroup>(W), limits);
}

}  // namespace isoposet
