#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace isoposet {

/// A bijection of {0..d-1}. Points are 0-based in memory and 1-based in text.
///
/// Composition follows the function convention: (p * q)(x) = p(q(x)), so
/// `p * q` applies q first. This makes the induced action on tabloids a left
/// action.
class Permutation {
 public:
  using point_type = std::uint16_t;

  Permutation() = default;

  explicit Permutation(std::vector<point_type> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      detail::require(x < images_.size() && !seen[x], "images do not form a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<point_type> im(degree);
    std::iota(im.begin(), im.end(), point_type{0});
    return Permutation(std::move(im), unchecked{});
  }

  /// Parses disjoint-cycle notation such as "(12)(34)" or "(1,10)(2,3)".
  /// Whitespace is ignored; a cycle without commas is read one digit per point.
  static Permutation parse(std::size_t degree, std::string_view text);

  std::size_t degree() const { return images_.size(); }
  std::span<const point_type> images() const { return images_; }
  std::size_t operator()(std::size_t x) const { return images_[x]; }

  Permutation operator*(const Permutation& rhs) const {
    detail::require(degree() == rhs.degree(), "degree mismatch in composition");
    std::vector<point_type> im(degree());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = images_[rhs.images_[i]];
    return Permutation(std::move(im), unchecked{});
  }

  Permutation inverse() const {
    std::vector<point_type> im(degree());
    for (std::size_t i = 0; i < im.size(); ++i) im[images_[i]] = static_cast<point_type>(i);
    return Permutation(std::move(im), unchecked{});
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  /// Order of the permutation as a group element (lcm of cycle lengths).
  std::size_t order() const {
    std::size_t result = 1;
    for (const auto& c : cycles()) result = std::lcm(result, c.size());
    return result;
  }

  /// Nontrivial cycles, each starting at its smallest point, sorted by that point.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<std::size_t> c;
      for (std::size_t x = i; !seen[x]; x = images_[x]) {
        seen[x] = true;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Sorted lengths of the nontrivial cycles.
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> t;
    for (const auto& c : cycles()) t.push_back(c.size());
    std::sort(t.begin(), t.end());
    return t;
  }

  std::string to_string() const;

  // Lexicographic on the image sequence; this is the canonical element order.
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct unchecked {};
  Permutation(std::vector<point_type> images, unchecked) : images_(std::move(images)) {}

  std::vector<point_type> images_;
};

/// ν σ ν⁻¹
inline Permutation conjugate(const Permutation& nu, const Permutation& sigma) {
  return nu * sigma * nu.inverse();
}

inline std::string Permutation::to_string() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  const bool digits = degree() <= 9;
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!digits && i > 0) out += ',';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

inline Permutation Permutation::parse(std::size_t degree, std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') compact += ch;
  if (compact.empty()) throw invalid_input("empty permutation text");

  std::vector<point_type> im(degree);
  std::iota(im.begin(), im.end(), point_type{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  while (pos < compact.size()) {
    if (compact[pos] != '(')
      throw invalid_input("expected '(' in permutation \"" + std::string(text) + "\"");
    const auto close = compact.find(')', pos);
    if (close == std::string::npos)
      throw invalid_input("unbalanced parenthesis in \"" + std::string(text) + "\"");
    const std::string body = compact.substr(pos + 1, close - pos - 1);
    pos = close + 1;

    std::vector<std::size_t> points;
    auto push_point = [&](const std::string& tok) {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw invalid_input("bad point \"" + tok + "\" in \"" + std::string(text) + "\"");
      const unsigned long v = std::stoul(tok);
      if (v < 1 || v > degree)
        throw invalid_input("point " + tok + " outside 1.." + std::to_string(degree));
      points.push_back(v - 1);
    };
    if (body.find(',') != std::string::npos) {
      std::size_t start = 0;
      while (true) {
        const auto comma = body.find(',', start);
        push_point(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      for (char ch : body) push_point(std::string(1, ch));
    }

    for (auto p : points) {
      if (used[p]) throw invalid_input("cycles in \"" + std::string(text) + "\" are not disjoint");
      used[p] = true;
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      im[points[i]] = static_cast<point_type>(points[(i + 1) % points.size()]);
  }
  return Permutation(std::move(im), unchecked{});
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace isoposet
