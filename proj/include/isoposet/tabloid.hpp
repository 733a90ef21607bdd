#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"

namespace isoposet {

/// A partition of d: weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    detail::require(!parts_.empty(), "empty partition");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      detail::require(parts_[i] >= 1, "partition parts must be positive");
      detail::require(i == 0 || parts_[i] <= parts_[i - 1], "partition parts must be weakly decreasing");
    }
  }

  /// "2,2" (parentheses and whitespace are tolerated).
  static Partition parse(std::string_view text) {
    std::vector<std::size_t> parts;
    std::string tok;
    auto flush = [&] {
      detail::require(!tok.empty(), "bad partition \"" + std::string(text) + "\"");
      parts.push_back(std::stoul(tok));
      tok.clear();
    };
    for (char ch : text) {
      if (ch == ' ' || ch == '\t' || ch == '(' || ch == ')') continue;
      if (ch == ',') {
        flush();
      } else {
        detail::require(ch >= '0' && ch <= '9', "bad partition \"" + std::string(text) + "\"");
        tok += ch;
      }
    }
    flush();
    return Partition(std::move(parts));
  }

  const std::vector<std::size_t>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  std::size_t degree() const { return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }
  std::size_t operator[](std::size_t i) const { return parts_[i]; }

  /// "2,2"
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parts_[i]);
    }
    return out;
  }
  /// "(2,2)"
  std::string label() const { return "(" + to_string() + ")"; }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> parts_;
};

/// Orders partitions coarsest first: (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
struct CoarserFirst {
  bool operator()(const Partition& a, const Partition& b) const { return a > b; }
};

/// Dominance: partial sums of λ never exceed those of μ.
inline bool dominance_leq(const Partition& lambda, const Partition& mu) {
  detail::require(lambda.degree() == mu.degree(), "dominance_leq: partitions of different d");
  std::size_t sl = 0, sm = 0;
  for (std::size_t k = 0; k < std::max(lambda.length(), mu.length()); ++k) {
    sl += k < lambda.length() ? lambda[k] : 0;
    sm += k < mu.length() ? mu[k] : 0;
    if (sl > sm) return false;
  }
  return true;
}

/// All partitions of d, reverse-lexicographic (coarsest first).
inline std::vector<Partition> partitions_of(std::size_t d, const Limits& limits = {}) {
  detail::require(d >= 1, "partitions_of: d must be positive");
  detail::within_limit(d, limits.partition_degree, "degree for partition enumeration");
  std::vector<Partition> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t max_part) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t k = std::min(rest, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

/// An ordered sequence of disjoint blocks covering {0..d-1} whose sizes form a
/// partition. Stored as the block index ("row") of every point.
class Tabloid {
 public:
  Tabloid() = default;

  /// Blocks of 0-based points; sizes must be weakly decreasing.
  static Tabloid from_blocks(const std::vector<std::vector<std::size_t>>& blocks) {
    std::size_t d = 0;
    std::vector<std::size_t> sizes;
    for (const auto& b : blocks) {
      d += b.size();
      sizes.push_back(b.size());
    }
    Tabloid t;
    t.shape_ = Partition(sizes);
    t.rows_.assign(d, kUnset);
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (auto p : blocks[k]) {
        detail::require(p < d, "tabloid point out of range");
        detail::require(t.rows_[p] == kUnset, "tabloid blocks are not disjoint");
        t.rows_[p] = static_cast<std::uint8_t>(k);
      }
    return t;
  }

  /// "1,2|3,4"
  static Tabloid parse(std::string_view text) {
    std::vector<std::vector<std::size_t>> blocks(1);
    std::string tok;
    auto flush = [&] {
      if (tok.empty()) return;
      const auto v = std::stoul(tok);
      detail::require(v >= 1, "tabloid points are 1-based");
      blocks.back().push_back(v - 1);
      tok.clear();
    };
    for (char ch : text) {
      if (ch == ' ' || ch == '\t') continue;
      if (ch == ',') {
        detail::require(!tok.empty(), "bad tabloid \"" + std::string(text) + "\"");
        flush();
      } else if (ch == '|') {
        flush();
        blocks.emplace_back();
      } else {
        detail::require(ch >= '0' && ch <= '9', "bad tabloid \"" + std::string(text) + "\"");
        tok += ch;
      }
    }
    flush();
    return from_blocks(blocks);
  }

  const Partition& shape() const { return shape_; }
  std::size_t degree() const { return rows_.size(); }
  /// Block index of point p.
  std::size_t row(std::size_t p) const { return rows_[p]; }
  const std::vector<std::uint8_t>& rows() const { return rows_; }

  std::vector<std::vector<std::size_t>> blocks() const {
    std::vector<std::vector<std::size_t>> out(shape_.length());
    for (std::size_t p = 0; p < rows_.size(); ++p) out[rows_[p]].push_back(p);
    return out;
  }

  /// Injective 64-bit key (4 bits per point), valid for d <= 16.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (auto r : rows_) k = (k << 4) | r;
    return k;
  }

  /// "1,2|3,4"
  std::string to_string() const {
    std::string out;
    const auto bs = blocks();
    for (std::size_t k = 0; k < bs.size(); ++k) {
      if (k) out += '|';
      for (std::size_t i = 0; i < bs[k].size(); ++i) {
        if (i) out += ',';
        out += std::to_string(bs[k][i] + 1);
      }
    }
    return out;
  }

  friend bool operator==(const Tabloid& a, const Tabloid& b) { return a.rows_ == b.rows_; }

  /// Enumeration order: lexicographic on the sequence of sorted blocks.
  friend bool operator<(const Tabloid& a, const Tabloid& b) { return a.blocks() < b.blocks(); }

 private:
  static constexpr std::uint8_t kUnset = 0xff;
  friend Tabloid apply_permutation(const Permutation&, const Tabloid&);
  friend Tabloid canonical_tabloid(const Partition&);

  Partition shape_;
  std::vector<std::uint8_t> rows_;
};

/// I_λ: blocks filled consecutively, {1..λ₁}, {λ₁+1..λ₁+λ₂}, ...
inline Tabloid canonical_tabloid(const Partition& lambda) {
  Tabloid t;
  t.shape_ = lambda;
  for (std::size_t k = 0; k < lambda.length(); ++k)
    t.rows_.insert(t.rows_.end(), lambda[k], static_cast<std::uint8_t>(k));
  return t;
}

/// σA = (σ(A₁), σ(A₂), ...).
inline Tabloid apply_permutation(const Permutation& sigma, const Tabloid& a) {
  detail::require(sigma.degree() == a.degree(), "apply_permutation: degree mismatch");
  Tabloid out;
  out.shape_ = a.shape_;
  out.rows_.resize(a.rows_.size());
  for (std::size_t p = 0; p < a.rows_.size(); ++p) out.rows_[sigma(p)] = a.rows_[p];
  return out;
}

/// A ≤ B iff A₁∪…∪A_k ⊆ B₁∪…∪B_k for every k. Since the partial unions are
/// the points of row < k, this is the pointwise condition row_B(p) ≤ row_A(p).
inline bool tabloid_leq(const Tabloid& a, const Tabloid& b) {
  detail::require(a.degree() == b.degree(), "tabloid_leq: degree mismatch");
  for (std::size_t p = 0; p < a.degree(); ++p)
    if (b.row(p) > a.row(p)) return false;
  return true;
}

/// The υ with υI_λ = A, matching sorted block contents position by position.
inline Permutation coset_rep(const Tabloid& a) {
  const auto blocks = a.blocks();
  std::vector<Permutation::point_type> im(a.degree());
  std::size_t next = 0;
  for (const auto& b : blocks)
    for (auto p : b) im[next++] = static_cast<Permutation::point_type>(p);
  return Permutation(std::move(im));
}

/// T_λ in enumeration order; d!/(λ₁!λ₂!…) tabloids.
inline std::vector<Tabloid> enumerate_tabloids(const Partition& lambda, const Limits& limits = {}) {
  const auto d = lambda.degree();
  detail::within_limit(d, limits.tabloid_degree, "degree for tabloid enumeration");
  detail::require(d <= 16, "tabloids are limited to d <= 16");
  std::vector<Tabloid> out;
  std::vector<std::vector<std::size_t>> blocks(lambda.length());
  std::vector<bool> used(d, false);

  std::function<void(std::size_t)> fill_block;
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t from) {
    if (blocks[k].size() == lambda[k]) {
      fill_block(k + 1);
      return;
    }
    for (std::size_t p = from; p < d; ++p) {
      if (used[p]) continue;
      used[p] = true;
      blocks[k].push_back(p);
      choose(k, p + 1);
      blocks[k].pop_back();
      used[p] = false;
    }
  };
  fill_block = [&](std::size_t k) {
    if (k == lambda.length()) {
      out.push_back(Tabloid::from_blocks(blocks));
      return;
    }
    choose(k, 0);
  };
  fill_block(0);
  return out;
}

}  // namespace isoposet
