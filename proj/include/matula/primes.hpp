#pragma once

#include <cstdint>
#include <shared_mutex>
#include <vector>

#include "matula/bignat.hpp"

namespace matula {

struct PrimeBackendConfig {
  std::uint64_t sieve_limit = std::uint64_t{1} << 24;
  std::uint64_t hard_ceiling = std::uint64_t{1} << 32;
};

/// Sieve-backed prime tables: p(k), pi(n), prime indexing, primality and
/// factorization.
///
/// The table holds every prime up to sieve_limit() and grows on demand by
/// doubling (segmented sieve of Eratosthenes) until it reaches the hard
/// ceiling. Lookups past the ceiling raise IndexOverflow.
///
/// Reads are safe from multiple threads. Growth takes an exclusive lock, so
/// concurrent callers that trigger growth are serialized; call extend_to()
/// up front to avoid that.
class PrimeBackend {
 public:
  /// Primes are stored as 32-bit words, so the ceiling may not exceed 2^32.
  static constexpr std::uint64_t kMaxCeiling = std::uint64_t{1} << 32;

  /// Throws std::invalid_argument unless 2 <= sieve_limit <= hard_ceiling <= kMaxCeiling.
  explicit PrimeBackend(PrimeBackendConfig config = {});

  PrimeBackend(const PrimeBackend&) = delete;
  PrimeBackend& operator=(const PrimeBackend&) = delete;

  /// The k-th prime, 1-based (nth_prime(1) == 2). k must be >= 1.
  std::uint64_t nth_prime(std::uint64_t k);

  /// Inverse of nth_prime. NotPrime for composites, 0 and 1; IndexOverflow
  /// when p is above the hard ceiling.
  std::uint64_t prime_index(const BigNat& p);
  std::uint64_t prime_index(std::uint64_t p);

  /// pi(n): number of primes <= n.
  std::uint64_t prime_count(const BigNat& n);

  /// Exact below 2^64 (deterministic Miller-Rabin witness set). Above that,
  /// 40 Miller-Rabin rounds: a composite passes with probability <= 4^-40.
  bool is_prime(const BigNat& n) const;

  /// Prime factors of n >= 2 in nondecreasing order, with multiplicity.
  /// Trial division by small primes, then Pollard rho (Brent). Throws
  /// FactorizationFailure naming the cofactor when rho gives up.
  std::vector<BigNat> factorize(const BigNat& n) const;
  std::vector<std::uint64_t> factorize(std::uint64_t n) const;

  /// Grow the table so that every prime <= limit is stored.
  void extend_to(std::uint64_t limit);

  std::uint64_t sieve_limit() const;
  std::uint64_t hard_ceiling() const { return ceiling_; }
  std::size_t size() const;

 private:
  void grow_until_limit(std::uint64_t limit);  // caller holds unique lock
  void sieve_segmented(std::uint64_t hi);      // caller holds unique lock

  std::uint64_t ceiling_;
  std::vector<std::uint32_t> small_primes_;  // all primes < 2^16, immutable

  mutable std::shared_mutex mutex_;
  std::uint64_t limit_ = 1;
  std::vector<std::uint32_t> primes_;
};

/// Deterministic primality for machine words.
bool is_prime_u64(std::uint64_t n);

}  // namespace matula
