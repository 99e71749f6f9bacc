#include <doctest.h>

#include "matula/bignat.hpp"
#include "matula/error.hpp"

using matula::BigNat;

TEST_CASE("decimal parsing is strict") {
  CHECK(BigNat::from_decimal("0") == BigNat(0));
  CHECK(BigNat::from_decimal("18446744073709551616").to_string() == "18446744073709551616");
  CHECK_THROWS_AS(BigNat::from_decimal(""), matula::ParseError);
  CHECK_THROWS_AS(BigNat::from_decimal("007"), matula::ParseError);
  CHECK_THROWS_AS(BigNat::from_decimal("-3"), matula::ParseError);
  CHECK_THROWS_AS(BigNat::from_decimal("12a"), matula::ParseError);
  try {
    BigNat::from_decimal("12a");
  } catch (const matula::ParseError& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("u64 boundary") {
  const BigNat max(UINT64_MAX);
  CHECK(max.fits_u64());
  CHECK(max.to_u64() == UINT64_MAX);
  const BigNat over = max + BigNat(1);
  CHECK_FALSE(over.fits_u64());
  CHECK_FALSE(over.try_u64().has_value());
  CHECK(over - BigNat(1) == max);
  CHECK(over.mod_u64(10) == 6);
  CHECK(BigNat(0).to_u64() == 0);
}

TEST_CASE("arithmetic and shifts") {
  CHECK(BigNat::pow(5, 3) == BigNat(125));
  CHECK(((BigNat(1) << 100) >> 98) == BigNat(4));
  CHECK(BigNat(17) / BigNat(5) == BigNat(3));
  CHECK(BigNat(17) % BigNat(5) == BigNat(2));
  CHECK(BigNat(96).trailing_zero_bits() == 5);
  CHECK_THROWS(BigNat(3) - BigNat(4));
  CHECK(BigNat(3) < BigNat(4));
}
