#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "matula/bignat.hpp"
#include "matula/primes.hpp"

namespace matula {

/// Finite rooted tree with ordered children.
///
/// Stored flat as the preorder sequence of subtree node counts, so copying,
/// destruction and comparison never recurse, however deep the tree. The
/// ordered representation lets the parser keep a sibling order as written;
/// everything produced by tau(), merge(), plant() and canonicalize() is in
/// canonical order (children ascending by Matula number), and operator==
/// compares the ordered structure.
class RootedTree {
 public:
  /// The single-node tree.
  RootedTree() : sizes_{1} {}

  /// A root whose children are the given trees, in the given order.
  static RootedTree from_children(std::span<const RootedTree> children);

  /// Adopts a preorder subtree-size sequence. Throws std::invalid_argument
  /// if the sequence does not describe a tree.
  static RootedTree from_preorder_sizes(std::vector<std::uint32_t> sizes);

  std::size_t node_count() const { return sizes_.size(); }
  std::size_t edge_count() const { return sizes_.size() - 1; }
  std::size_t child_count() const;
  bool is_planted() const { return sizes_.size() > 1 && sizes_[1] + 1 == sizes_[0]; }

  /// Copies of the root's subtrees, left to right.
  std::vector<RootedTree> children() const;

  /// Preorder positions of the root's children within preorder_sizes().
  std::vector<std::size_t> child_offsets(std::size_t node = 0) const;

  std::span<const std::uint32_t> preorder_sizes() const { return sizes_; }

  friend bool operator==(const RootedTree&, const RootedTree&) = default;

 private:
  explicit RootedTree(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)) {}

  std::vector<std::uint32_t> sizes_;
};

RootedTree singleton();

/// t1 ∧ t2: identify the two roots, then canonicalize. Canonicalizing needs
/// Matula numbers, so IndexOverflow can surface for very large trees.
RootedTree merge(const RootedTree& t1, const RootedTree& t2, PrimeBackend& primes);

/// A new root with t as its only child.
RootedTree plant(const RootedTree& t);

/// The tree with Matula number n (n >= 1), in canonical form.
RootedTree tau(const BigNat& n, PrimeBackend& primes);

/// Inverse of tau. IndexOverflow when an intermediate number has no prime
/// within the backend's ceiling.
BigNat matula_number(const RootedTree& t, PrimeBackend& primes);

/// Matula number of every subtree, indexed by preorder position.
std::vector<BigNat> subtree_matula_numbers(const RootedTree& t, PrimeBackend& primes);

/// As above, but a subtree whose number needs a prime beyond the ceiling is
/// left empty instead of failing the whole walk.
std::vector<std::optional<BigNat>> try_subtree_matula_numbers(const RootedTree& t,
                                                              PrimeBackend& primes);

/// Sort every child list by ascending Matula number. Idempotent. Only
/// nodes with two or more children need their children's numbers, so long
/// paths canonicalize even when their own numbers overflow.
RootedTree canonicalize(const RootedTree& t, PrimeBackend& primes);

inline std::size_t edge_count(const RootedTree& t) { return t.edge_count(); }
inline bool is_planted(const RootedTree& t) { return t.is_planted(); }

}  // namespace matula
