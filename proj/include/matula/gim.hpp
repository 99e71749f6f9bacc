#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "matula/bignat.hpp"
#include "matula/primes.hpp"

namespace matula {

/// The Gutman-Ivic-Matula function: the completely additive g with g(1) = 0
/// and g(p(k)) = 1 + g(k). It equals the edge count of tau(n).
///
/// Per-number evaluation through factorization, with a bounded memo. The
/// memo is flushed when it reaches capacity.
class Gim {
 public:
  explicit Gim(PrimeBackend& primes, std::size_t cache_capacity = std::size_t{1} << 16);

  std::uint64_t operator()(const BigNat& n);

 private:
  PrimeBackend& primes_;
  std::size_t capacity_;
  std::mutex cache_mutex_;
  std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

/// g(n) for every n in 1..limit, built with a linear smallest-prime-factor
/// sieve: g(n) = g(n / p) + 1 + g(pi(p)) for p = spf(n).
struct GimTable {
  std::uint32_t limit = 0;
  std::vector<std::uint8_t> g_values;  // g_values[n]; slot 0 unused
  std::vector<std::uint32_t> spf;      // spf[n]; spf[p] == p iff p prime

  std::uint64_t g(std::uint64_t n) const { return g_values.at(n); }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf.at(n) == n; }
};

/// Throws CapacityError when limit does not fit the table's index type or
/// the allocation fails.
GimTable g_table(std::uint64_t limit);

/// G(n) = g(1) + ... + g(n).
std::uint64_t big_g(std::uint64_t n);

/// Prefix sums G(0..limit) of a table; result[0] = 0.
std::vector<std::uint64_t> cumulative_g(const GimTable& table);

// Closed-form bounds valid for n >= 7: ln n / ln ln n <= g(n) <= 3 ln n / ln 5.
// Both throw DomainError below 7.
double lower_bound(std::uint64_t n);
double upper_bound(std::uint64_t n);

/// n ln n / ln 4, the floor for G(n) obtained from the source-coding bound.
double shannon_floor(std::uint64_t n);

/// Relative width of the band inside which a floating comparison is not
/// trusted and the exact route decides.
inline constexpr double kGuardBand = 1e-12;

// Certified comparisons of an integer against the closed forms above. The
// double result decides outside the guard band; inside it:
//   upper: 5^g vs n^3 in exact integers,
//   floor: 4^G vs n^n in exact integers,
//   lower: 100-digit binary floating evaluation of ln n / ln ln n.
std::strong_ordering compare_to_lower_bound(std::uint64_t g, std::uint64_t n);
std::strong_ordering compare_to_upper_bound(std::uint64_t g, std::uint64_t n);
std::strong_ordering compare_to_shannon_floor(std::uint64_t big_g_value, std::uint64_t n);

}  // namespace matula
