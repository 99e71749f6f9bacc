#include "matula/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "matula/error.hpp"

namespace matula {

namespace {

std::uint32_t checked_size(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("tree exceeds 2^32 - 1 nodes");
  }
  return static_cast<std::uint32_t>(n);
}

std::uint64_t prime_for_index(const BigNat& k, PrimeBackend& primes) {
  const auto small = k.try_u64();
  if (!small) throw IndexOverflow("p(" + k.to_string() + ") exceeds the prime table ceiling");
  return primes.nth_prime(*small);
}

}  // namespace

RootedTree RootedTree::from_children(std::span<const RootedTree> children) {
  std::size_t total = 1;
  for (const auto& c : children) total += c.sizes_.size();
  std::vector<std::uint32_t> sizes;
  sizes.reserve(total);
  sizes.push_back(checked_size(total));
  for (const auto& c : children) sizes.insert(sizes.end(), c.sizes_.begin(), c.sizes_.end());
  return RootedTree(std::move(sizes));
}

RootedTree RootedTree::from_preorder_sizes(std::vector<std::uint32_t> sizes) {
  if (sizes.empty() || sizes[0] != sizes.size()) {
    throw std::invalid_argument("preorder sizes: root size must equal sequence length");
  }
  // Every node's children must tile its subtree exactly.
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0 || i + sizes[i] > sizes.size()) {
      throw std::invalid_argument("preorder sizes: subtree overruns at " + std::to_string(i));
    }
    std::size_t j = i + 1;
    const std::size_t end = i + sizes[i];
    while (j < end) j += sizes[j] == 0 ? end : sizes[j];
    if (j != end) {
      throw std::invalid_argument("preorder sizes: children do not tile node " + std::to_string(i));
    }
  }
  return RootedTree(std::move(sizes));
}

std::size_t RootedTree::child_count() const { return child_offsets(0).size(); }

std::vector<std::size_t> RootedTree::child_offsets(std::size_t node) const {
  std::vector<std::size_t> out;
  const std::size_t end = node + sizes_[node];
  for (std::size_t j = node + 1; j < end; j += sizes_[j]) out.push_back(j);
  return out;
}

std::vector<RootedTree> RootedTree::children() const {
  std::vector<RootedTree> out;
  for (std::size_t j : child_offsets(0)) {
    out.push_back(RootedTree(std::vector<std::uint32_t>(
        sizes_.begin() + static_cast<std::ptrdiff_t>(j),
        sizes_.begin() + static_cast<std::ptrdiff_t>(j + sizes_[j]))));
  }
  return out;
}

RootedTree singleton() { return RootedTree(); }

RootedTree plant(const RootedTree& t) {
  const RootedTree only[] = {t};
  return RootedTree::from_children(only);
}

RootedTree merge(const RootedTree& t1, const RootedTree& t2, PrimeBackend& primes) {
  auto kids = t1.children();
  auto more = t2.children();
  kids.insert(kids.end(), std::make_move_iterator(more.begin()),
              std::make_move_iterator(more.end()));
  return canonicalize(RootedTree::from_children(kids), primes);
}

RootedTree tau(const BigNat& n, PrimeBackend& primes) {
  if (n.is_zero()) throw std::invalid_argument("tau: n must be >= 1");

  // Each frame is a node whose children are tau(pi(f)) for the prime
  // factors f of its number, still to be emitted left to right.
  struct Frame {
    std::size_t node;
    std::vector<std::uint64_t> child_numbers;
    std::size_t next = 0;
  };
  auto child_numbers_of = [&](const BigNat& m) {
    std::vector<std::uint64_t> ks;
    if (m == BigNat(1)) return ks;
    for (const auto& f : primes.factorize(m)) ks.push_back(primes.prime_index(f));
    return ks;
  };

  std::vector<std::uint32_t> sizes{0};
  std::vector<Frame> stack;
  stack.push_back({0, child_numbers_of(n)});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < top.child_numbers.size()) {
      const std::uint64_t k = top.child_numbers[top.next++];
      const std::size_t node = sizes.size();
      sizes.push_back(0);
      std::vector<std::uint64_t> ks;
      if (k > 1) {
        for (std::uint64_t f : primes.factorize(k)) ks.push_back(primes.prime_index(f));
      }
      stack.push_back({node, std::move(ks)});
    } else {
      sizes[top.node] = checked_size(sizes.size() - top.node);
      stack.pop_back();
    }
  }
  return RootedTree::from_preorder_sizes(std::move(sizes));
}

std::vector<BigNat> subtree_matula_numbers(const RootedTree& t, PrimeBackend& primes) {
  const auto sizes = t.preorder_sizes();
  std::vector<BigNat> numbers(sizes.size(), BigNat(1));
  // Reverse preorder visits every child before its parent.
  for (std::size_t i = sizes.size(); i-- > 0;) {
    const std::size_t end = i + sizes[i];
    for (std::size_t j = i + 1; j < end; j += sizes[j]) {
      numbers[i] *= BigNat(prime_for_index(numbers[j], primes));
    }
  }
  return numbers;
}

std::vector<std::optional<BigNat>> try_subtree_matula_numbers(const RootedTree& t,
                                                              PrimeBackend& primes) {
  const auto sizes = t.preorder_sizes();
  std::vector<std::optional<BigNat>> numbers(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    BigNat product(1);
    bool known = true;
    const std::size_t end = i + sizes[i];
    for (std::size_t j = i + 1; known && j < end; j += sizes[j]) {
      if (!numbers[j]) {
        known = false;
        break;
      }
      try {
        product *= BigNat(prime_for_index(*numbers[j], primes));
      } catch (const IndexOverflow&) {
        known = false;
      }
    }
    if (known) numbers[i] = std::move(product);
  }
  return numbers;
}

BigNat matula_number(const RootedTree& t, PrimeBackend& primes) {
  return std::move(subtree_matula_numbers(t, primes).front());
}

RootedTree canonicalize(const RootedTree& t, PrimeBackend& primes) {
  const auto sizes = t.preorder_sizes();
  const auto numbers = try_subtree_matula_numbers(t, primes);

  std::vector<std::uint32_t> out;
  out.reserve(sizes.size());
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    out.push_back(sizes[node]);
    auto kids = t.child_offsets(node);
    if (kids.size() > 1) {
      for (std::size_t k : kids) {
        if (!numbers[k]) {
          throw IndexOverflow("cannot order siblings: subtree at preorder position " +
                              std::to_string(k) + " has no Matula number within the ceiling");
        }
      }
      std::stable_sort(kids.begin(), kids.end(),
                       [&](std::size_t a, std::size_t b) { return *numbers[a] < *numbers[b]; });
    }
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
  return RootedTree::from_preorder_sizes(std::move(out));
}

}  // namespace matula
