#include "matula/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "matula/error.hpp"

namespace matula {

// ---------------------------------------------------------------- Base4Fixed

Base4Fixed::Base4Fixed(BigNat numerator, std::uint64_t scale)
    : numerator_(std::move(numerator)), scale_(scale) {
  normalize();
}

Base4Fixed Base4Fixed::unit_fraction(std::uint64_t exponent) { return {BigNat(1), exponent}; }

void Base4Fixed::normalize() {
  if (numerator_.is_zero()) {
    scale_ = 0;
    return;
  }
  const std::uint64_t pairs = std::min(numerator_.trailing_zero_bits() / 2, scale_);
  if (pairs > 0) {
    numerator_ >>= 2 * pairs;
    scale_ -= pairs;
  }
}

void Base4Fixed::add_unit_fraction(std::uint64_t exponent) {
  if (exponent >= scale_) {
    numerator_ <<= 2 * (exponent - scale_);
    scale_ = exponent;
    numerator_.add_u64(1);
  } else {
    numerator_ += BigNat(1) << 2 * (scale_ - exponent);
  }
  normalize();
}

Base4Fixed& Base4Fixed::operator+=(const Base4Fixed& rhs) {
  if (rhs.scale_ > scale_) {
    numerator_ <<= 2 * (rhs.scale_ - scale_);
    scale_ = rhs.scale_;
    numerator_ += rhs.numerator_;
  } else {
    numerator_ += rhs.numerator_ << 2 * (scale_ - rhs.scale_);
  }
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Base4Fixed& a, const Base4Fixed& b) {
  if (a.scale_ == b.scale_) return a.numerator_ <=> b.numerator_;
  if (a.scale_ > b.scale_) return a.numerator_ <=> (b.numerator_ << 2 * (a.scale_ - b.scale_));
  return (a.numerator_ << 2 * (b.scale_ - a.scale_)) <=> b.numerator_;
}

std::string Base4Fixed::to_string() const {
  return numerator_.to_string() + "/4^" + std::to_string(scale_);
}

std::string Base4Fixed::to_decimal(unsigned digits) const {
  const BigNat scaled = numerator_ * BigNat::pow(10, digits);
  const BigNat truncated = scaled >> 2 * scale_;
  std::string text = truncated.to_string();
  if (text.size() <= digits) text.insert(0, digits + 1 - text.size(), '0');
  if (digits == 0) return text;
  text.insert(text.size() - digits, ".");
  return text;
}

double Base4Fixed::to_double() const {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, numerator_.mpz().get_mpz_t());
  return std::ldexp(mantissa, static_cast<int>(exp - 2 * static_cast<long>(scale_)));
}

// ---------------------------------------------------------------- Kraft sums

namespace {

void require_table_covers(const GimTable& table, std::uint64_t limit) {
  if (limit > table.limit) {
    throw CapacityError("g table covers " + std::to_string(table.limit) + ", need " +
                        std::to_string(limit));
  }
}

template <class Pred>
Base4Fixed accumulate(const GimTable& table, std::uint64_t limit, Accumulation order,
                      Pred include) {
  require_table_covers(table, limit);
  Base4Fixed sum;
  if (order == Accumulation::ascending) {
    for (std::uint64_t n = 1; n <= limit; ++n) {
      if (include(n)) sum.add_unit_fraction(table.g_values[n]);
    }
  } else {
    for (std::uint64_t n = limit; n >= 1; --n) {
      if (include(n)) sum.add_unit_fraction(table.g_values[n]);
    }
  }
  return sum;
}

}  // namespace

Base4Fixed kraft_sum_primes(const GimTable& table, std::uint64_t limit, Accumulation order) {
  if (limit < 2) throw std::invalid_argument("kraft_sum_primes: limit must be >= 2");
  return accumulate(table, limit, order, [&](std::uint64_t n) { return table.is_prime(n); });
}

Base4Fixed kraft_sum_primes(std::uint64_t limit, Accumulation order) {
  if (limit < 2) throw std::invalid_argument("kraft_sum_primes: limit must be >= 2");
  return kraft_sum_primes(g_table(limit), limit, order);
}

Base4Fixed kraft_sum_naturals(const GimTable& table, std::uint64_t limit, Accumulation order) {
  if (limit < 1) throw std::invalid_argument("kraft_sum_naturals: limit must be >= 1");
  return accumulate(table, limit, order, [](std::uint64_t) { return true; });
}

Base4Fixed kraft_sum_naturals(std::uint64_t limit, Accumulation order) {
  if (limit < 1) throw std::invalid_argument("kraft_sum_naturals: limit must be >= 1");
  return kraft_sum_naturals(g_table(limit), limit, order);
}

double euler_product_estimate(const GimTable& table, std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("euler_product_estimate: limit must be >= 2");
  require_table_covers(table, limit);
  // Sum of -ln(1 - 4^-g) in log space keeps the product accurate.
  double log_sum = 0.0;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (table.is_prime(p)) log_sum -= std::log1p(-std::ldexp(1.0, -2 * table.g_values[p]));
  }
  return std::exp(log_sum);
}

double euler_product_estimate(std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("euler_product_estimate: limit must be >= 2");
  return euler_product_estimate(g_table(limit), limit);
}

// ------------------------------------------------------------- Distributions

Distribution::Distribution(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("distribution: empty support");
  double sum = 0.0, carry = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("distribution: weights must be finite and nonnegative");
    }
    const double y = w - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution: weights sum to " + std::to_string(sum));
  }
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("distribution: empty support");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t at) {
  if (at == 0) throw std::invalid_argument("distribution: support starts at 1");
  std::vector<double> w(at, 0.0);
  w.back() = 1.0;
  return Distribution(std::move(w));
}

namespace {

double standard_exponential(std::mt19937_64& rng) {
  // u in (0, 1] from the top 53 bits.
  const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
  return -std::log(u);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t reject_from = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= reject_from);
  return x % bound;
}

}  // namespace

Distribution dirichlet_sample(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("dirichlet_sample: empty support");
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = standard_exponential(rng);
    total += x;
  }
  if (total == 0.0) {
    // Every draw was exactly zero (u == 1 each time); fall back to uniform.
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
  } else {
    for (double& x : w) x /= total;
  }
  return Distribution(std::move(w));
}

double entropy(const Distribution& mu) {
  double h = 0.0;
  for (double w : mu.weights()) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

double expected_length(const Distribution& mu, const GimTable& table) {
  require_table_covers(table, mu.support_size());
  const auto w = mu.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * table.g_values[i + 1];
  return 2.0 * sum;
}

double verify_shannon_bound(const Distribution& mu, const GimTable& table) {
  return expected_length(mu, table) - entropy(mu);
}

// ---------------------------------------------------------------- Conclusion 3

Conclusion3Report verify_conclusion3(const GimTable& table, std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("verify_conclusion3: limit must be >= 1");
  require_table_covers(table, limit);
  Conclusion3Report report;
  report.limit = limit;
  report.min_slack = std::numeric_limits<double>::infinity();
  std::uint64_t cumulative = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    cumulative += table.g_values[n];
    const auto cmp = compare_to_shannon_floor(cumulative, n);
    double slack = static_cast<double>(cumulative) - shannon_floor(n);
    if (cmp == std::strong_ordering::equal) {
      slack = 0.0;
      report.exact_equalities.push_back(n);
    } else if (cmp == std::strong_ordering::less && !report.first_violation) {
      report.pass = false;
      report.first_violation = n;
    }
    if (slack <= report.min_slack) {
      report.min_slack = slack;
      report.argmin = n;
    }
  }
  return report;
}

Conclusion3Report verify_conclusion3(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("verify_conclusion3: limit must be >= 1");
  return verify_conclusion3(g_table(limit), limit);
}

// ---------------------------------------------------------------- Suites

namespace {

constexpr std::size_t kShannonMaxSupport = 1000;
constexpr double kShannonTolerance = 1e-9;

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void kraft_primes_records(const GimTable& table, std::uint64_t limit,
                          std::vector<CheckRecord>& out) {
  const Base4Fixed half(BigNat(2), 1);
  const Base4Fixed quarter = Base4Fixed::unit_fraction(1);

  // Walk every prime once: the running sum must strictly increase.
  Base4Fixed running, previous;
  bool monotone = true;
  std::optional<std::uint64_t> first_flat;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (!table.is_prime(p)) continue;
    running.add_unit_fraction(table.g_values[p]);
    if (!(previous < running) && monotone) {
      monotone = false;
      first_flat = p;
    }
    previous = running;
  }
  const Base4Fixed descending = kraft_sum_primes(table, limit, Accumulation::descending);

  CheckRecord below_half{"kraft-primes", limit, running.to_string(), running.to_decimal(),
                         "< 1/2", running < half, std::nullopt, ""};
  out.push_back(below_half);

  const bool strict_expected = limit >= 3;
  const bool lower_ok = strict_expected ? running > quarter : running == quarter;
  out.push_back({"kraft-primes-above-quarter", limit, running.to_string(), running.to_decimal(),
                 strict_expected ? "> 1/4" : "= 1/4 (only p = 2 included)", lower_ok,
                 std::nullopt, ""});

  out.push_back({"kraft-primes-monotone", limit, running.to_string(), running.to_decimal(),
                 "strictly increasing at every prime", monotone, first_flat,
                 first_flat ? "no increase at p = " + std::to_string(*first_flat) : ""});

  out.push_back({"kraft-primes-exact", limit, descending.to_string(), descending.to_decimal(),
                 "ascending == descending", descending == running, std::nullopt, ""});
}

void kraft_naturals_records(const GimTable& table, std::uint64_t limit,
                            std::vector<CheckRecord>& out) {
  const Base4Fixed two(BigNat(2), 0);
  const Base4Fixed ascending = kraft_sum_naturals(table, limit, Accumulation::ascending);
  const Base4Fixed descending = kraft_sum_naturals(table, limit, Accumulation::descending);
  out.push_back({"kraft-naturals", limit, ascending.to_string(), ascending.to_decimal(), "< 2",
                 ascending < two, std::nullopt, ""});
  out.push_back({"kraft-naturals-exact", limit, descending.to_string(), descending.to_decimal(),
                 "ascending == descending", descending == ascending, std::nullopt, ""});

  if (limit < 2) return;
  const double euler = euler_product_estimate(table, limit);
  out.push_back({"euler-product", limit, format_double(euler), format_double(euler), "< 2",
                 euler < 2.0, std::nullopt, ""});

  // Side by side with M_P / 4; the two are reported, never equated.
  Base4Fixed primes_quarter = kraft_sum_primes(table, limit);
  primes_quarter = Base4Fixed(primes_quarter.numerator(), primes_quarter.scale() + 1);
  out.push_back({"kraft-naturals-under-euler", limit, ascending.to_string(),
                 ascending.to_decimal(), "<= euler-product + 1e-9",
                 ascending.to_double() <= euler + 1e-9, std::nullopt,
                 "M_N(L) = " + ascending.to_decimal() + ", euler = " + format_double(euler) +
                     ", M_P(L)/4 = " + primes_quarter.to_decimal() +
                     " (identity M_N = M_P/4 not asserted)"});
}

void bounds_records(const GimTable& table, std::uint64_t limit, std::vector<CheckRecord>& out) {
  struct Side {
    const char* name;
    const char* bound;
    std::strong_ordering (*compare)(std::uint64_t, std::uint64_t);
    double (*closed_form)(std::uint64_t);
    bool g_above;  // g must be >= bound (lower) or <= bound (upper)
  };
  const Side sides[] = {
      {"bounds-lower", "g(n) >= ln n / ln ln n", compare_to_lower_bound, lower_bound, true},
      {"bounds-upper", "g(n) <= 3 ln n / ln 5", compare_to_upper_bound, upper_bound, false},
  };
  for (const Side& side : sides) {
    CheckRecord rec{side.name, limit, "", "", side.bound, true, std::nullopt, ""};
    double min_slack = std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;
    for (std::uint64_t n = 7; n <= limit; ++n) {
      const std::uint64_t g = table.g_values[n];
      const auto cmp = side.compare(g, n);
      const bool ok = side.g_above ? cmp != std::strong_ordering::less
                                   : cmp != std::strong_ordering::greater;
      double slack = side.g_above ? static_cast<double>(g) - side.closed_form(n)
                                  : side.closed_form(n) - static_cast<double>(g);
      if (cmp == std::strong_ordering::equal) slack = 0.0;
      if (!ok && violations++ == 0) {
        rec.pass = false;
        rec.note = "witness n = " + std::to_string(n) + ", g(n) = " + std::to_string(g) +
                   ", bound = " + format_double(side.closed_form(n));
      }
      if (slack < min_slack) {
        min_slack = slack;
        rec.argmin_slack = n;
      }
    }
    if (limit < 7) {
      rec.value = "vacuous";
      rec.note = "bounds apply from n = 7";
    } else {
      rec.value = format_double(min_slack);
      if (violations > 1) rec.note += " (" + std::to_string(violations) + " violations)";
    }
    rec.value_decimal = rec.value;
    out.push_back(std::move(rec));
  }
}

void conclusion3_records(const GimTable& table, std::uint64_t limit,
                         std::vector<CheckRecord>& out) {
  const auto report = verify_conclusion3(table, limit);
  std::string note = "exact equality at n =";
  if (report.exact_equalities.empty()) note += " (none)";
  for (auto n : report.exact_equalities) note += " " + std::to_string(n);
  if (report.first_violation) note += "; first violation at n = " + std::to_string(*report.first_violation);
  out.push_back({"conclusion3", limit, format_double(report.min_slack),
                 format_double(report.min_slack), "G(n) >= n ln n / ln 4", report.pass,
                 report.argmin, note});
}

void shannon_records(const GimTable& table, std::uint64_t limit, const SuiteOptions& options,
                     std::vector<CheckRecord>& out) {
  const std::size_t max_support =
      static_cast<std::size_t>(std::min<std::uint64_t>(limit, kShannonMaxSupport));

  std::mt19937_64 rng(options.seed);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t worst_sample = 0, worst_support = 0, failures = 0;
  for (std::size_t i = 0; i < options.shannon_samples; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform_below(rng, max_support));
    const Distribution mu = dirichlet_sample(n, rng);
    const double residual = verify_shannon_bound(mu, table);
    if (residual < -kShannonTolerance) ++failures;
    if (residual < worst) {
      worst = residual;
      worst_sample = i;
      worst_support = n;
    }
  }
  out.push_back({"shannon-dirichlet", max_support, format_double(worst), format_double(worst),
                 "E[len] - H >= -1e-9", failures == 0,
                 options.shannon_samples ? std::optional<std::uint64_t>(worst_support)
                                         : std::nullopt,
                 std::to_string(options.shannon_samples) + " samples, seed " +
                     std::to_string(options.seed) + "; worst sample #" +
                     std::to_string(worst_sample) + " (support " + std::to_string(worst_support) +
                     "); " + std::to_string(failures) + " below tolerance"});

  // Uniform on [n]: E[len] = 2 G(n) / n, and E[len] - log2 n >= 0.
  bool identity_ok = true, bound_ok = true;
  std::uint64_t cumulative = 0;
  std::optional<std::uint64_t> bad;
  double min_residual = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= max_support; ++n) {
    cumulative += table.g_values[n];
    const Distribution mu = Distribution::uniform(n);
    const double len = expected_length(mu, table);
    const double closed = 2.0 * static_cast<double>(cumulative) / static_cast<double>(n);
    if (std::fabs(len - closed) > kGuardBand * std::max(1.0, closed)) {
      identity_ok = false;
      if (!bad) bad = n;
    }
    const double residual = len - entropy(mu);
    min_residual = std::min(min_residual, residual);
    if (residual < -kShannonTolerance) {
      bound_ok = false;
      if (!bad) bad = n;
    }
  }
  out.push_back({"shannon-uniform", max_support, format_double(min_residual),
                 format_double(min_residual), "E[len] = 2 G(n)/n and E[len] - log2 n >= -1e-9",
                 identity_ok && bound_ok, bad,
                 bad ? "first failure at n = " + std::to_string(*bad) : ""});
}

}  // namespace

std::vector<CheckRecord> run_suite(Suite suite, const SuiteOptions& options) {
  const std::uint64_t limit = options.limit;
  if (limit < 1) throw std::invalid_argument("verify: limit must be >= 1");
  const GimTable table = g_table(std::max<std::uint64_t>(limit, 2));
  std::vector<CheckRecord> out;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::kraft_primes) {
    if (limit < 2) throw std::invalid_argument("kraft-primes: limit must be >= 2");
    kraft_primes_records(table, limit, out);
  }
  if (all || suite == Suite::kraft_naturals) kraft_naturals_records(table, limit, out);
  if (all || suite == Suite::bounds) bounds_records(table, limit, out);
  if (all || suite == Suite::conclusion3) conclusion3_records(table, limit, out);
  if (all || suite == Suite::shannon) shannon_records(table, limit, options, out);
  return out;
}

}  // namespace matula
