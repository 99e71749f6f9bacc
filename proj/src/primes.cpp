#include "matula/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "matula/error.hpp"

namespace matula {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

constexpr u64 kSmallPrimeBound = 1u << 16;
constexpr std::size_t kSegmentBytes = 1u << 18;

// Iteration budget for one Pollard-Brent attempt on a multi-word cofactor.
constexpr u64 kRhoBudget = u64{1} << 20;
constexpr int kRhoAttempts = 4;
constexpr int kBigMillerRabinRounds = 40;

std::vector<std::uint32_t> simple_sieve(u64 bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint32_t> out;
  for (u64 i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// One Miller-Rabin round: n - 1 = d * 2^s with d odd.
bool mr_round(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool mr_round(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long s) {
  const mpz_class n_minus_1 = n - 1;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

bool is_prime_big(const mpz_class& n) {
  mpz_class d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // Bases drawn from a fixed-seed generator so answers are reproducible.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x6d61747531ul);
  const mpz_class span = n - 3;
  for (int round = 0; round < kBigMillerRabinRounds; ++round) {
    const mpz_class a = rng.get_z_range(span) + 2;
    if (!mr_round(n, a, d, s)) return false;
  }
  return true;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

// Returns a nontrivial factor of an odd composite n, or 0 on failure.
u64 pollard_brent(u64 n, u64 c, u64 y0) {
  constexpr u64 kBatch = 128;
  u64 y = y0 % n, x = y, ys = y, q = 1, g = 1;
  auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = gcd_u64(q, n);
    }
    if (r > (u64{1} << 40)) return 0;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

mpz_class pollard_brent(const mpz_class& n, unsigned long c, unsigned long y0) {
  constexpr u64 kBatch = 128;
  mpz_class y = y0, x = y, ys = y, q = 1, g = 1, diff;
  auto f = [&](mpz_class& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  u64 spent = 0;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      for (u64 i = 0; i < steps; ++i) {
        f(y);
        diff = x - y;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        q = q * diff % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      spent += steps;
    }
    spent += r;
    if (spent > kRhoBudget) return 0;
  }
  if (g == n) {
    do {
      f(ys);
      diff = x - ys;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? mpz_class(0) : g;
}

// Splits a u64 cofactor with no prime factor below 2^16.
void split_u64(u64 n, std::vector<u64>& out) {
  std::vector<u64> work{n};
  while (!work.empty()) {
    const u64 m = work.back();
    work.pop_back();
    if (m == 1) continue;
    if (m < kSmallPrimeBound * kSmallPrimeBound || is_prime_u64(m)) {
      out.push_back(m);
      continue;
    }
    u64 d = 0;
    for (u64 c = 1; d == 0; ++c) d = pollard_brent(m, c, 2 + c);
    work.push_back(d);
    work.push_back(m / d);
  }
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                     [&](u64 a) { return mr_round(n, a, d, s); });
}

PrimeBackend::PrimeBackend(PrimeBackendConfig config) : ceiling_(config.hard_ceiling) {
  if (config.sieve_limit < 2 || config.sieve_limit > config.hard_ceiling ||
      config.hard_ceiling > kMaxCeiling) {
    throw std::invalid_argument("PrimeBackend: require 2 <= sieve_limit <= hard_ceiling <= 2^32");
  }
  small_primes_ = simple_sieve(kSmallPrimeBound);
  std::unique_lock lock(mutex_);
  sieve_segmented(config.sieve_limit);
}

u64 PrimeBackend::sieve_limit() const {
  std::shared_lock lock(mutex_);
  return limit_;
}

std::size_t PrimeBackend::size() const {
  std::shared_lock lock(mutex_);
  return primes_.size();
}

void PrimeBackend::extend_to(u64 limit) {
  if (limit > ceiling_) {
    throw IndexOverflow("prime table limit " + std::to_string(limit) +
                        " exceeds hard ceiling " + std::to_string(ceiling_));
  }
  {
    std::shared_lock lock(mutex_);
    if (limit <= limit_) return;
  }
  std::unique_lock lock(mutex_);
  grow_until_limit(limit);
}

void PrimeBackend::grow_until_limit(u64 limit) {
  u64 target = limit_;
  while (target < limit) target = std::min(target * 2, ceiling_);
  if (target > limit_) sieve_segmented(target);
}

void PrimeBackend::sieve_segmented(u64 hi) {
  std::vector<unsigned char> marks(kSegmentBytes);
  for (u64 lo = limit_ + 1; lo <= hi; lo += kSegmentBytes) {
    const u64 seg_hi = std::min(hi, lo + kSegmentBytes - 1);
    const std::size_t len = static_cast<std::size_t>(seg_hi - lo + 1);
    std::fill_n(marks.begin(), len, 0);
    for (u64 p : small_primes_) {
      if (p * p > seg_hi) break;
      u64 first = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 m = first; m <= seg_hi; m += p) marks[m - lo] = 1;
    }
    for (std::size_t i = 0; i < len; ++i) {
      const u64 v = lo + i;
      if (!marks[i] && v >= 2) primes_.push_back(static_cast<std::uint32_t>(v));
    }
  }
  limit_ = hi;
}

u64 PrimeBackend::nth_prime(u64 k) {
  if (k == 0) throw std::invalid_argument("nth_prime: index must be >= 1");
  {
    std::shared_lock lock(mutex_);
    if (k <= primes_.size()) return primes_[k - 1];
  }
  // p(k) > k (ln k + ln ln k - 1) for k >= 6 (Dusart): fail fast instead of
  // sieving all the way to the ceiling.
  if (k >= 6) {
    const double x = static_cast<double>(k);
    if (x * (std::log(x) + std::log(std::log(x)) - 1.0) > static_cast<double>(ceiling_)) {
      throw IndexOverflow("p(" + std::to_string(k) + ") exceeds hard ceiling " +
                          std::to_string(ceiling_));
    }
  }
  std::unique_lock lock(mutex_);
  while (primes_.size() < k) {
    if (limit_ >= ceiling_) {
      throw IndexOverflow("p(" + std::to_string(k) + ") exceeds hard ceiling " +
                          std::to_string(ceiling_));
    }
    sieve_segmented(std::min(limit_ * 2, ceiling_));
  }
  return primes_[k - 1];
}

u64 PrimeBackend::prime_index(u64 p) {
  if (p > ceiling_) {
    throw IndexOverflow("prime " + std::to_string(p) + " exceeds hard ceiling " +
                        std::to_string(ceiling_));
  }
  if (p < 2) throw NotPrime(std::to_string(p) + " is not prime");
  extend_to(p);
  std::shared_lock lock(mutex_);
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) throw NotPrime(std::to_string(p) + " is not prime");
  return static_cast<u64>(it - primes_.begin()) + 1;
}

u64 PrimeBackend::prime_index(const BigNat& p) {
  const auto small = p.try_u64();
  if (!small || *small > ceiling_) {
    throw IndexOverflow("prime " + p.to_string() + " exceeds hard ceiling " +
                        std::to_string(ceiling_));
  }
  return prime_index(*small);
}

u64 PrimeBackend::prime_count(const BigNat& n) {
  const auto small = n.try_u64();
  if (!small || *small > ceiling_) {
    throw IndexOverflow("pi(" + n.to_string() + ") exceeds hard ceiling " +
                        std::to_string(ceiling_));
  }
  if (*small < 2) return 0;
  extend_to(*small);
  std::shared_lock lock(mutex_);
  return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), *small) -
                          primes_.begin());
}

bool PrimeBackend::is_prime(const BigNat& n) const {
  if (const auto small = n.try_u64()) return is_prime_u64(*small);
  for (u64 p : small_primes_) {
    if (n.mod_u64(p) == 0) return false;
  }
  return is_prime_big(n.mpz());
}

std::vector<u64> PrimeBackend::factorize(u64 n) const {
  if (n < 2) throw std::invalid_argument("factorize: n must be >= 2");
  std::vector<u64> out;
  for (u64 p : small_primes_) {
    if (p * p > n) break;
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n > 1) split_u64(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigNat> PrimeBackend::factorize(const BigNat& n) const {
  if (const auto small = n.try_u64()) {
    if (*small < 2) throw std::invalid_argument("factorize: n must be >= 2");
    const auto factors = factorize(*small);
    return {factors.begin(), factors.end()};
  }

  std::vector<BigNat> out;
  mpz_class rest = n.mpz();
  for (u64 p : small_primes_) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
      out.emplace_back(p);
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(p));
    }
  }

  std::vector<mpz_class> work{rest};
  while (!work.empty()) {
    mpz_class m = std::move(work.back());
    work.pop_back();
    if (m == 1) continue;
    BigNat as_nat{m};
    if (const auto small = as_nat.try_u64()) {
      std::vector<u64> parts;
      split_u64(*small, parts);
      out.insert(out.end(), parts.begin(), parts.end());
      continue;
    }
    if (is_prime_big(m)) {
      out.push_back(std::move(as_nat));
      continue;
    }
    mpz_class d = 0;
    for (int attempt = 0; attempt < kRhoAttempts && d == 0; ++attempt) {
      d = pollard_brent(m, 1ul + static_cast<unsigned long>(attempt),
                        2ul + static_cast<unsigned long>(attempt));
    }
    if (d == 0) {
      throw FactorizationFailure("could not split cofactor " + m.get_str(10), m.get_str(10));
    }
    work.push_back(m / d);
    work.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace matula
