#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "matula/bignat.hpp"
#include "matula/primes.hpp"
#include "matula/tree.hpp"

namespace matula {

/// A balanced word over '(' and ')'. The empty word is the codeword of 1.
class DyckWord {
 public:
  DyckWord() = default;

  /// Validates balance; throws ParseError (invalid_symbol / unbalanced)
  /// carrying the byte offset of the first violation.
  explicit DyckWord(std::string text);

  const std::string& str() const { return text_; }
  std::string_view view() const { return text_; }
  std::size_t size() const { return text_.size(); }
  bool empty() const { return text_.empty(); }

  friend bool operator==(const DyckWord&, const DyckWord&) = default;
  friend auto operator<=>(const DyckWord&, const DyckWord&) = default;

 private:
  struct Trusted {};
  DyckWord(std::string text, Trusted) : text_(std::move(text)) {}
  friend DyckWord tree_to_dyck(const RootedTree&);
  friend DyckWord encode(const BigNat&, PrimeBackend&);
  friend std::vector<DyckWord> split_codewords(std::string_view);

  std::string text_;
};

/// Serializes children left to right as "(" child ")". Callers wanting the
/// Matula codeword pass a canonical tree.
DyckWord tree_to_dyck(const RootedTree& t);

/// Single left-to-right pass. strict rejects sibling blocks that are out of
/// nondecreasing Matula order (ParseError::Kind::non_canonical, with the
/// block's byte offset and sibling index); lenient returns the canonical tree.
RootedTree dyck_to_tree(std::string_view word, bool strict, PrimeBackend& primes);

/// c_M extended multiplicatively: encode(1) = "", encode(p(k)) =
/// "(" encode(k) ")", and a composite is the concatenation of the codewords
/// of its prime factors in nondecreasing order.
DyckWord encode(const BigNat& n, PrimeBackend& primes);

BigNat decode(std::string_view word, bool strict, PrimeBackend& primes);

/// Partition into minimal balanced blocks (one per prime factor).
std::vector<DyckWord> split_codewords(std::string_view word);

/// True iff no word is a proper prefix of another (binary trie walk).
bool verify_prefix_free(std::span<const DyckWord> codewords);

}  // namespace matula
