#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <thread>

#include "matula/error.hpp"
#include "matula/primes.hpp"
#include "oracle.hpp"

using matula::BigNat;
using matula::PrimeBackend;

namespace {

PrimeBackend& small_backend() {
  static PrimeBackend backend(matula::PrimeBackendConfig{1 << 12, 1 << 20});
  return backend;
}

}  // namespace

TEST_CASE("nth_prime") {
  auto& pb = small_backend();
  CHECK(pb.nth_prime(1) == 2);
  CHECK(pb.nth_prime(4) == 7);
  CHECK(pb.nth_prime(25) == 97);
  CHECK_THROWS_AS(pb.nth_prime(0), std::invalid_argument);
}

TEST_CASE("prime_index") {
  auto& pb = small_backend();
  CHECK(pb.prime_index(BigNat(2)) == 1);
  CHECK(pb.prime_index(BigNat(7)) == 4);
  CHECK_THROWS_AS(pb.prime_index(BigNat(6)), matula::NotPrime);
  CHECK_THROWS_AS(pb.prime_index(BigNat(1)), matula::NotPrime);
  CHECK_THROWS_AS(pb.prime_index(BigNat(0)), matula::NotPrime);
  CHECK_THROWS_AS(pb.prime_index(BigNat((1 << 20) + 7)), matula::IndexOverflow);
}

TEST_CASE("prime_count") {
  auto& pb = small_backend();
  CHECK(pb.prime_count(BigNat(1)) == 0);
  CHECK(pb.prime_count(BigNat(2)) == 1);
  CHECK(pb.prime_count(BigNat(10)) == 4);
  CHECK_THROWS_AS(pb.prime_count(BigNat(1) << 70), matula::IndexOverflow);
}

TEST_CASE("is_prime") {
  const auto& pb = small_backend();
  CHECK_FALSE(pb.is_prime(BigNat(0)));
  CHECK_FALSE(pb.is_prime(BigNat(1)));
  CHECK(pb.is_prime(BigNat(17)));
  CHECK_FALSE(pb.is_prime(BigNat(561)));  // Carmichael
  CHECK(pb.is_prime(BigNat(9999999967ull)));
  // Strong pseudoprime to bases 2..37 except a subset; composite.
  CHECK_FALSE(pb.is_prime(BigNat(3825123056546413051ull)));
  CHECK(pb.is_prime(BigNat(18446744073709551557ull)));  // largest 64-bit prime
  // 2^89 - 1 and 2^127 - 1 are Mersenne primes; 2^67 - 1 is not.
  CHECK(pb.is_prime((BigNat(1) << 89) - BigNat(1)));
  CHECK(pb.is_prime((BigNat(1) << 127) - BigNat(1)));
  CHECK_FALSE(pb.is_prime((BigNat(1) << 67) - BigNat(1)));
}

TEST_CASE("factorize") {
  const auto& pb = small_backend();
  CHECK(pb.factorize(std::uint64_t{12}) == std::vector<std::uint64_t>{2, 2, 3});
  CHECK(pb.factorize(std::uint64_t{17}) == std::vector<std::uint64_t>{17});
  CHECK(pb.factorize(BigNat(9999999967ull)) == std::vector<BigNat>{BigNat(9999999967ull)});
  CHECK_THROWS(pb.factorize(std::uint64_t{1}));

  // Semiprime of two ~32-bit primes needs rho.
  const std::uint64_t a = 4294967291ull, b = 4294967279ull;
  CHECK(pb.factorize(a * b) == std::vector<std::uint64_t>{b, a});

  // 2^67 - 1 = 193707721 * 761838257287 (Cole).
  const BigNat m67 = (BigNat(1) << 67) - BigNat(1);
  CHECK(pb.factorize(m67) == std::vector<BigNat>{BigNat(193707721), BigNat(761838257287ull)});

  // Multi-word value with mixed small and large factors.
  const BigNat p89 = (BigNat(1) << 89) - BigNat(1);
  const BigNat n = BigNat(12) * p89 * BigNat(1000003);
  CHECK(pb.factorize(n) == std::vector<BigNat>{BigNat(2), BigNat(2), BigNat(3), BigNat(1000003), p89});
}

TEST_CASE("factorize gives up on a hard semiprime and names the cofactor") {
  const auto& pb = small_backend();
  // Product of the Mersenne primes 2^89 - 1 and 2^107 - 1: far beyond rho's budget.
  const BigNat hard = ((BigNat(1) << 89) - BigNat(1)) * ((BigNat(1) << 107) - BigNat(1));
  try {
    pb.factorize(hard);
    FAIL("expected FactorizationFailure");
  } catch (const matula::FactorizationFailure& e) {
    CHECK(e.cofactor() == hard.to_string());
  }
}

TEST_CASE("table invariants against trial division") {
  PrimeBackend pb(matula::PrimeBackendConfig{64, 1 << 16});
  for (std::uint64_t k = 1; k <= 2000; ++k) {
    const auto p = pb.nth_prime(k);
    REQUIRE(p == oracle::nth_prime(k));
    REQUIRE(pb.prime_index(p) == k);
  }
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    REQUIRE(pb.prime_count(BigNat(n)) == oracle::prime_count(n));
  }
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    const auto f = pb.factorize(n);
    REQUIRE(std::is_sorted(f.begin(), f.end()));
    REQUIRE(std::accumulate(f.begin(), f.end(), std::uint64_t{1}, std::multiplies<>()) == n);
    for (auto p : f) REQUIRE(matula::is_prime_u64(p));
    REQUIRE(f == oracle::factor(n));
  }
}

TEST_CASE("segmented growth matches a single sieve") {
  PrimeBackend grown(matula::PrimeBackendConfig{2, 1 << 22});
  PrimeBackend direct(matula::PrimeBackendConfig{1 << 22, 1 << 22});
  CHECK(grown.prime_count(BigNat(1 << 22)) == direct.prime_count(BigNat(1 << 22)));
  CHECK(grown.nth_prime(295947) == direct.nth_prime(295947));  // pi(2^22) = 295947
  CHECK(grown.sieve_limit() == (1u << 22));
  CHECK_THROWS_AS(grown.nth_prime(295948), matula::IndexOverflow);
}

TEST_CASE("is_prime_u64 agrees with trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(matula::is_prime_u64(n) == oracle::is_prime(n));
}

TEST_CASE("concurrent reads with on-demand growth") {
  PrimeBackend pb(matula::PrimeBackendConfig{1 << 10, 1 << 22});
  std::vector<std::thread> threads;
  std::vector<std::uint64_t> results(8);
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] { results[t] = pb.nth_prime(10000 + 1000 * t); });
  }
  for (auto& th : threads) th.join();
  for (std::size_t t = 0; t < results.size(); ++t) {
    CHECK(pb.prime_index(results[t]) == 10000 + 1000 * t);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(PrimeBackend(matula::PrimeBackendConfig{100, 50}), std::invalid_argument);
  CHECK_THROWS_AS(PrimeBackend(matula::PrimeBackendConfig{100, (1ull << 32) + 1}),
                  std::invalid_argument);
}
