#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace matula {

/// Arbitrary-precision nonnegative integer.
///
/// Thin value type over a GMP integer that keeps the value >= 0: subtraction
/// that would go negative throws std::domain_error.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit BigNat(mpz_class v);

  /// Strict decimal parse: digits only, no sign, no whitespace, no leading
  /// zeros ("0" itself is accepted). Throws ParseError on bad input.
  static BigNat from_decimal(std::string_view text);

  static BigNat pow(std::uint64_t base, std::uint64_t exponent);

  std::string to_string() const;

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_even() const { return mpz_even_p(value_.get_mpz_t()) != 0; }
  std::size_t bit_length() const;

  bool fits_u64() const;
  std::uint64_t to_u64() const;  // precondition: fits_u64()
  std::optional<std::uint64_t> try_u64() const;

  // Remainder modulo a machine word, without allocating.
  std::uint64_t mod_u64(std::uint64_t m) const;

  // In-place helpers that avoid temporaries on hot loops.
  BigNat& add_u64(std::uint64_t v);
  std::uint64_t trailing_zero_bits() const;  // 0 for zero

  BigNat& operator+=(const BigNat& rhs);
  BigNat& operator-=(const BigNat& rhs);
  BigNat& operator*=(const BigNat& rhs);
  BigNat& operator/=(const BigNat& rhs);
  BigNat& operator%=(const BigNat& rhs);
  BigNat& operator<<=(std::uint64_t bits);
  BigNat& operator>>=(std::uint64_t bits);

  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator-(BigNat a, const BigNat& b) { return a -= b; }
  friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }
  friend BigNat operator/(BigNat a, const BigNat& b) { return a /= b; }
  friend BigNat operator%(BigNat a, const BigNat& b) { return a %= b; }
  friend BigNat operator<<(BigNat a, std::uint64_t s) { return a <<= s; }
  friend BigNat operator>>(BigNat a, std::uint64_t s) { return a >>= s; }

  friend bool operator==(const BigNat& a, const BigNat& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpz_class& mpz() const { return value_; }

 private:
  mpz_class value_;
};

std::ostream& operator<<(std::ostream& os, const BigNat& n);

}  // namespace matula
