#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace isoposet {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad cycle text, inconsistent degrees, broken subgroup chains.
class invalid_input : public error {
 public:
  using error::error;
};

/// A brute-force contract bound was exceeded (see Limits).
class limit_exceeded : public error {
 public:
  using error::error;
};

/// Size bounds for the exhaustive algorithms. The defaults are the documented
/// contracts; `overridden()` lifts all of them except the enumeration cap.
struct Limits {
  std::size_t normalizer_degree = 8;
  std::size_t character_group_order = 10'000;
  std::size_t aut_orbit_count = 64;
  std::size_t aut_enumeration_cap = 1'000'000;
  std::size_t tabloid_degree = 10;
  std::size_t partition_degree = 12;

  static Limits overridden() {
    Limits l;
    constexpr auto big = std::numeric_limits<std::size_t>::max();
    l.normalizer_degree = big;
    l.character_group_order = big;
    l.aut_orbit_count = big;
    l.tabloid_degree = big;
    l.partition_degree = big;
    return l;
  }
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw invalid_input(message);
}

inline void within_limit(std::size_t value, std::size_t bound, const std::string& what) {
  if (value > bound)
    throw limit_exceeded(what + " is " + std::to_string(value) + ", above the limit of " +
                         std::to_string(bound) + " (use the limit override to force)");
}

}  // namespace detail
}  // namespace isoposet
