#include <doctest.h>

#include <random>

#include "matula/error.hpp"
#include "matula/gim.hpp"
#include "oracle.hpp"

using namespace matula;

namespace {

PrimeBackend& backend() {
  static PrimeBackend pb(PrimeBackendConfig{1 << 16, 1 << 24});
  return pb;
}

}  // namespace

TEST_CASE("g") {
  Gim g(backend());
  CHECK(g(BigNat(1)) == 0);
  CHECK(g(BigNat(2)) == 1);
  CHECK(g(BigNat(17)) == 4);
  CHECK(g(BigNat(17)) == 4);  // memoized path
  CHECK(g(BigNat(1) << 100) == 100);
  CHECK_THROWS_AS(g(BigNat(0)), std::invalid_argument);
}

TEST_CASE("g memo is bounded and invisible") {
  Gim tiny_cache(backend(), 4);
  for (std::uint64_t n = 1; n <= 300; ++n) REQUIRE(tiny_cache(BigNat(n)) == oracle::g(n));
  for (std::uint64_t n = 300; n >= 1; --n) REQUIRE(tiny_cache(BigNat(n)) == oracle::g(n));
}

TEST_CASE("g_table") {
  using V = std::vector<std::uint8_t>;
  auto tail = [](const GimTable& t) { return V(t.g_values.begin() + 1, t.g_values.end()); };
  CHECK(tail(g_table(4)) == V{0, 1, 2, 2});
  CHECK(tail(g_table(1)) == V{0});
  CHECK(tail(g_table(9)) == V{0, 1, 2, 2, 3, 3, 3, 3, 4});
  CHECK_THROWS_AS(g_table(0), std::invalid_argument);
  CHECK_THROWS_AS(g_table(std::uint64_t{1} << 40), CapacityError);

  const auto table = g_table(20000);
  CHECK(table.spf[91] == 7);
  CHECK(table.is_prime(19997));
}

TEST_CASE("table agrees with per-n recursion and the oracle") {
  const auto table = g_table(10000);
  Gim g(backend());
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    REQUIRE(table.g(n) == oracle::g(n));
    REQUIRE(table.g(n) == g(BigNat(n)));
  }
}

TEST_CASE("complete additivity and the prime step") {
  const auto table = g_table(1000000);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t m = 1 + rng() % 1000, n = 1 + rng() % 1000;
    REQUIRE(table.g(m * n) == table.g(m) + table.g(n));
  }
  auto& pb = backend();
  for (std::uint64_t k = 1; pb.nth_prime(k) <= 1000000; ++k) {
    REQUIRE(table.g(pb.nth_prime(k)) == 1 + table.g(k));
  }
}

TEST_CASE("big_g") {
  CHECK(big_g(1) == 0);
  CHECK(big_g(2) == 1);
  CHECK(big_g(4) == 5);
  const auto sums = cumulative_g(g_table(9));
  CHECK(sums == std::vector<std::uint64_t>{0, 0, 1, 3, 5, 8, 11, 14, 17, 21});
}

TEST_CASE("closed-form bounds") {
  CHECK(lower_bound(7) == doctest::Approx(2.922972830922243).epsilon(1e-14));
  CHECK(upper_bound(7) == doctest::Approx(3.627185865366503).epsilon(1e-14));
  CHECK_THROWS_AS(lower_bound(6), DomainError);
  CHECK_THROWS_AS(upper_bound(6), DomainError);
}

TEST_CASE("shannon_floor") {
  CHECK(shannon_floor(1) == 0.0);
  CHECK(shannon_floor(2) == 1.0);
  CHECK(shannon_floor(4) == 4.0);
}

TEST_CASE("certified comparisons") {
  // Powers of 5 sit exactly on the upper bound: 5^g == n^3.
  CHECK(compare_to_upper_bound(6, 25) == std::strong_ordering::equal);
  CHECK(compare_to_upper_bound(9, 125) == std::strong_ordering::equal);
  CHECK(compare_to_upper_bound(27, 1953125) == std::strong_ordering::equal);
  CHECK(compare_to_upper_bound(3, 7) == std::strong_ordering::less);
  CHECK(compare_to_upper_bound(10, 125) == std::strong_ordering::greater);

  CHECK(compare_to_lower_bound(3, 7) == std::strong_ordering::greater);
  CHECK(compare_to_lower_bound(2, 7) == std::strong_ordering::less);

  CHECK(compare_to_shannon_floor(0, 1) == std::strong_ordering::equal);
  CHECK(compare_to_shannon_floor(1, 2) == std::strong_ordering::equal);
  CHECK(compare_to_shannon_floor(4, 4) == std::strong_ordering::equal);  // 4^4 == 4^4
  CHECK(compare_to_shannon_floor(5, 4) == std::strong_ordering::greater);
  CHECK(compare_to_shannon_floor(3, 4) == std::strong_ordering::less);
}

TEST_CASE("sandwich and floor up to 10^5") {
  const auto table = g_table(100000);
  std::uint64_t cumulative = 0;
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    cumulative += table.g(n);
    REQUIRE(compare_to_shannon_floor(cumulative, n) != std::strong_ordering::less);
    if (n < 7) continue;
    REQUIRE(compare_to_lower_bound(table.g(n), n) != std::strong_ordering::less);
    REQUIRE(compare_to_upper_bound(table.g(n), n) != std::strong_ordering::greater);
  }
}
