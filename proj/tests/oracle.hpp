#pragma once

// Brute-force reference computations. Nothing here touches the library:
// primes by trial division, trees as nested vectors, codewords by direct
// recursion.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Running count, extended by trial division as needed.
inline std::uint64_t prime_count(std::uint64_t n) {
  static std::vector<std::uint64_t> counts{0, 0};
  while (counts.size() <= n) {
    const std::uint64_t i = counts.size();
    counts.push_back(counts.back() + (is_prime(i) ? 1 : 0));
  }
  return counts[n];
}

inline std::uint64_t nth_prime(std::uint64_t k) {
  std::uint64_t v = 1;
  while (k > 0) k -= is_prime(++v);
  return v;
}

inline std::vector<std::uint64_t> factor(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Direct recursion on g(p(k)) = 1 + g(k), g(ab) = g(a) + g(b).
inline std::uint64_t g(std::uint64_t n) {
  std::uint64_t total = 0;
  for (auto p : factor(n)) total += 1 + g(prime_count(p));
  return total;
}

struct Node {
  std::vector<Node> children;
};

inline Node tau(std::uint64_t n) {
  Node node;
  for (auto p : factor(n)) node.children.push_back(tau(prime_count(p)));
  return node;
}

inline std::uint64_t edges(const Node& t) {
  std::uint64_t e = 0;
  for (const auto& c : t.children) e += 1 + edges(c);
  return e;
}

inline std::string dyck(std::uint64_t n) {
  std::string out;
  for (auto p : factor(n)) out += "(" + dyck(prime_count(p)) + ")";
  return out;
}

}  // namespace oracle
