#include "matula/gim.hpp"

#include <cmath>
#include <limits>
#include <new>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "matula/error.hpp"

namespace matula {

namespace {

bool within_band(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= kGuardBand * scale;
}

std::strong_ordering order_of(double a, double b) {
  return a < b ? std::strong_ordering::less
               : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
}

void require_bound_domain(std::uint64_t n) {
  if (n < 7) throw DomainError("bounds on g hold for n >= 7 only, got " + std::to_string(n));
}

}  // namespace

Gim::Gim(PrimeBackend& primes, std::size_t cache_capacity)
    : primes_(primes), capacity_(cache_capacity) {}

std::uint64_t Gim::operator()(const BigNat& n) {
  if (n.is_zero()) throw std::invalid_argument("g: n must be >= 1");
  const auto key = n.try_u64();
  if (key) {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(*key); it != cache_.end()) return it->second;
  }

  // g(n) = sum over prime factors f of (1 + g(pi(f))); pi(f) < f, so the
  // work list shrinks towards 1.
  std::uint64_t total = 0;
  std::vector<BigNat> work{n};
  while (!work.empty()) {
    BigNat m = std::move(work.back());
    work.pop_back();
    if (m == BigNat(1)) continue;
    for (const auto& f : primes_.factorize(m)) {
      ++total;
      const std::uint64_t k = primes_.prime_index(f);
      if (k > 1) work.emplace_back(k);
    }
  }

  if (key) {
    std::lock_guard lock(cache_mutex_);
    if (cache_.size() >= capacity_) cache_.clear();
    cache_.emplace(*key, total);
  }
  return total;
}

GimTable g_table(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("g_table: limit must be >= 1");
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("g_table: limit " + std::to_string(limit) + " exceeds 2^32 - 2");
  }
  GimTable table;
  table.limit = static_cast<std::uint32_t>(limit);
  try {
    table.g_values.assign(limit + 1, 0);
    table.spf.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    std::vector<std::uint32_t> index_of(limit + 1, 0);  // pi(p) for primes p
    for (std::uint64_t n = 2; n <= limit; ++n) {
      if (table.spf[n] == 0) {
        table.spf[n] = static_cast<std::uint32_t>(n);
        primes.push_back(static_cast<std::uint32_t>(n));
        index_of[n] = static_cast<std::uint32_t>(primes.size());
      }
      const std::uint32_t p = table.spf[n];
      table.g_values[n] =
          static_cast<std::uint8_t>(table.g_values[n / p] + 1 + table.g_values[index_of[p]]);
      for (std::uint32_t q : primes) {
        if (q > p || q * n > limit) break;
        table.spf[q * n] = q;
      }
    }
  } catch (const std::bad_alloc&) {
    throw CapacityError("g_table: out of memory for limit " + std::to_string(limit));
  }
  return table;
}

std::vector<std::uint64_t> cumulative_g(const GimTable& table) {
  std::vector<std::uint64_t> sums(table.limit + std::size_t{1}, 0);
  for (std::size_t n = 1; n <= table.limit; ++n) sums[n] = sums[n - 1] + table.g_values[n];
  return sums;
}

std::uint64_t big_g(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("G: n must be >= 1");
  return cumulative_g(g_table(n)).back();
}

double lower_bound(std::uint64_t n) {
  require_bound_domain(n);
  const double ln = std::log(static_cast<double>(n));
  return ln / std::log(ln);
}

double upper_bound(std::uint64_t n) {
  require_bound_domain(n);
  return 3.0 * std::log(static_cast<double>(n)) / std::log(5.0);
}

double shannon_floor(std::uint64_t n) {
  if (n < 1) throw DomainError("shannon_floor: n must be >= 1");
  const double x = static_cast<double>(n);
  return x * std::log2(x) / 2.0;
}

std::strong_ordering compare_to_lower_bound(std::uint64_t g, std::uint64_t n) {
  const double bound = lower_bound(n);
  const double value = static_cast<double>(g);
  if (!within_band(value, bound)) return order_of(value, bound);
  using Wide = boost::multiprecision::cpp_bin_float_100;
  const Wide ln = boost::multiprecision::log(Wide(n));
  const Wide wide_bound = ln / boost::multiprecision::log(ln);
  const Wide wide_value(g);
  return wide_value < wide_bound ? std::strong_ordering::less
         : wide_value > wide_bound ? std::strong_ordering::greater
                                   : std::strong_ordering::equal;
}

std::strong_ordering compare_to_upper_bound(std::uint64_t g, std::uint64_t n) {
  const double bound = upper_bound(n);
  const double value = static_cast<double>(g);
  if (!within_band(value, bound)) return order_of(value, bound);
  // g vs 3 ln n / ln 5  <=>  5^g vs n^3
  return BigNat::pow(5, g) <=> BigNat::pow(n, 3);
}

std::strong_ordering compare_to_shannon_floor(std::uint64_t big_g_value, std::uint64_t n) {
  const double bound = shannon_floor(n);
  const double value = static_cast<double>(big_g_value);
  if (value == 0.0 && bound == 0.0) return std::strong_ordering::equal;
  if (!within_band(value, bound)) return order_of(value, bound);
  // G vs n ln n / ln 4  <=>  4^G vs n^n
  return BigNat::pow(4, big_g_value) <=> BigNat::pow(n, n);
}

}  // namespace matula
