#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "matula/bignat.hpp"
#include "matula/gim.hpp"

namespace matula {

/// Exact nonnegative rational numerator / 4^scale.
///
/// Kept canonical: the numerator is not divisible by 4 unless scale is 0,
/// so equal values have equal representations. No operation rounds.
class Base4Fixed {
 public:
  Base4Fixed() = default;
  Base4Fixed(BigNat numerator, std::uint64_t scale);

  /// 4^-exponent.
  static Base4Fixed unit_fraction(std::uint64_t exponent);

  const BigNat& numerator() const { return numerator_; }
  std::uint64_t scale() const { return scale_; }

  Base4Fixed& operator+=(const Base4Fixed& rhs);
  friend Base4Fixed operator+(Base4Fixed a, const Base4Fixed& b) { return a += b; }

  /// Adds 4^-exponent in place; the hot path of the Kraft sums.
  void add_unit_fraction(std::uint64_t exponent);

  friend bool operator==(const Base4Fixed&, const Base4Fixed&) = default;
  friend std::strong_ordering operator<=>(const Base4Fixed& a, const Base4Fixed& b);

  /// "numerator/4^scale".
  std::string to_string() const;
  /// Truncated decimal expansion with the given number of fractional digits.
  std::string to_decimal(unsigned digits = 30) const;
  double to_double() const;

 private:
  void normalize();

  BigNat numerator_;
  std::uint64_t scale_ = 0;
};

enum class Accumulation { ascending, descending };

/// Exact sum of 4^-g(p) over primes p <= limit.
Base4Fixed kraft_sum_primes(std::uint64_t limit, Accumulation order = Accumulation::ascending);
Base4Fixed kraft_sum_primes(const GimTable& table, std::uint64_t limit,
                            Accumulation order = Accumulation::ascending);

/// Exact sum of 4^-g(n) over 1 <= n <= limit.
Base4Fixed kraft_sum_naturals(std::uint64_t limit, Accumulation order = Accumulation::ascending);
Base4Fixed kraft_sum_naturals(const GimTable& table, std::uint64_t limit,
                              Accumulation order = Accumulation::ascending);

/// Product over primes p <= limit of 1 / (1 - 4^-g(p)): the sum of 4^-g(n)
/// over every n whose prime factors are all <= limit.
double euler_product_estimate(std::uint64_t limit);
double euler_product_estimate(const GimTable& table, std::uint64_t limit);

/// Probability vector on {1..n}: weights()[i] is the mass of i + 1.
class Distribution {
 public:
  /// Throws std::invalid_argument on empty support, negative or non-finite
  /// weights, or a total more than 1e-12 away from 1.
  explicit Distribution(std::vector<double> weights);

  static Distribution uniform(std::size_t n);
  /// All mass on `at`; support {1..at}.
  static Distribution point_mass(std::size_t at);

  std::size_t support_size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Symmetric Dirichlet(1) on {1..n}: normalized standard exponentials. The
/// exponentials are derived from raw mt19937_64 output so a seed gives the
/// same draws on every platform.
Distribution dirichlet_sample(std::size_t n, std::mt19937_64& rng);

/// Shannon entropy in bits, with 0 log 0 = 0.
double entropy(const Distribution& mu);

/// Expected Matula codeword length, 2 * sum mu(i) g(i). The table must
/// cover the support.
double expected_length(const Distribution& mu, const GimTable& table);

/// expected_length - entropy.
double verify_shannon_bound(const Distribution& mu, const GimTable& table);

struct Conclusion3Report {
  std::uint64_t limit = 0;
  bool pass = true;
  double min_slack = 0.0;  // min over n of G(n) - n ln n / ln 4
  std::uint64_t argmin = 1;
  std::vector<std::uint64_t> exact_equalities;  // n where G(n) == floor exactly
  std::optional<std::uint64_t> first_violation;
};

/// Checks G(n) >= n ln n / ln 4 for every n <= limit. Ties in slack resolve
/// to the larger n.
Conclusion3Report verify_conclusion3(std::uint64_t limit);
Conclusion3Report verify_conclusion3(const GimTable& table, std::uint64_t limit);

/// One line of a verification report.
struct CheckRecord {
  std::string check;
  std::uint64_t limit = 0;
  std::string value;          // exact where available ("num/4^k"), else decimal
  std::string value_decimal;  // 30-digit decimal for exact values, else same as value
  std::string bound;
  bool pass = false;
  std::optional<std::uint64_t> argmin_slack;
  std::string note;
};

enum class Suite { kraft_primes, kraft_naturals, bounds, conclusion3, shannon, all };

struct SuiteOptions {
  std::uint64_t limit = 10000;
  std::uint64_t seed = 0x9E3779B97F4A7C15ull;
  std::size_t shannon_samples = 1000;
};

/// Runs the selected checks. Records appear in a fixed order.
std::vector<CheckRecord> run_suite(Suite suite, const SuiteOptions& options);

}  // namespace matula
