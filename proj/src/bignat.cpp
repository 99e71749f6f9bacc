#include "matula/bignat.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "matula/error.hpp"

namespace matula {

namespace {

mpz_class from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace

BigNat::BigNat(std::uint64_t v) : value_(from_u64(v)) {}

BigNat::BigNat(mpz_class v) : value_(std::move(v)) {
  if (sgn(value_) < 0) throw std::domain_error("BigNat: negative value");
}

BigNat BigNat::from_decimal(std::string_view text) {
  if (text.empty()) {
    throw ParseError(ParseError::Kind::bad_integer, 0, "empty integer literal");
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ParseError(ParseError::Kind::bad_integer, i,
                       "invalid digit at offset " + std::to_string(i));
    }
  }
  if (text.size() > 1 && text[0] == '0') {
    throw ParseError(ParseError::Kind::bad_integer, 0, "leading zero in integer literal");
  }
  BigNat out;
  out.value_.set_str(std::string(text), 10);
  return out;
}

BigNat BigNat::pow(std::uint64_t base, std::uint64_t exponent) {
  if (exponent > std::numeric_limits<unsigned long>::max()) {
    throw CapacityError("BigNat::pow: exponent too large");
  }
  BigNat out;
  mpz_pow_ui(out.value_.get_mpz_t(), BigNat(base).value_.get_mpz_t(),
             static_cast<unsigned long>(exponent));
  return out;
}

std::string BigNat::to_string() const { return value_.get_str(10); }

std::size_t BigNat::bit_length() const {
  return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

bool BigNat::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigNat::to_u64() const {
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, 1, sizeof(out), 0, 0, value_.get_mpz_t());
  return count == 0 ? 0 : out;
}

std::optional<std::uint64_t> BigNat::try_u64() const {
  if (!fits_u64()) return std::nullopt;
  return to_u64();
}

std::uint64_t BigNat::mod_u64(std::uint64_t m) const {
  if constexpr (sizeof(unsigned long) == sizeof(std::uint64_t)) {
    return mpz_fdiv_ui(value_.get_mpz_t(), static_cast<unsigned long>(m));
  } else {
    return (*this % BigNat(m)).to_u64();
  }
}

BigNat& BigNat::add_u64(std::uint64_t v) {
  if constexpr (sizeof(unsigned long) == sizeof(std::uint64_t)) {
    mpz_add_ui(value_.get_mpz_t(), value_.get_mpz_t(), static_cast<unsigned long>(v));
  } else {
    value_ += from_u64(v);
  }
  return *this;
}

std::uint64_t BigNat::trailing_zero_bits() const {
  return is_zero() ? 0 : mpz_scan1(value_.get_mpz_t(), 0);
}

BigNat& BigNat::operator+=(const BigNat& rhs) {
  value_ += rhs.value_;
  return *this;
}

BigNat& BigNat::operator-=(const BigNat& rhs) {
  if (cmp(value_, rhs.value_) < 0) throw std::domain_error("BigNat: subtraction underflow");
  value_ -= rhs.value_;
  return *this;
}

BigNat& BigNat::operator*=(const BigNat& rhs) {
  value_ *= rhs.value_;
  return *this;
}

BigNat& BigNat::operator/=(const BigNat& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigNat: division by zero");
  mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigNat& BigNat::operator%=(const BigNat& rhs) {
  if (rhs.is_zero()) throw std::domain_error("BigNat: division by zero");
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigNat& BigNat::operator<<=(std::uint64_t bits) {
  mpz_mul_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

BigNat& BigNat::operator>>=(std::uint64_t bits) {
  mpz_fdiv_q_2exp(value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigNat& n) { return os << n.to_string(); }

}  // namespace matula
