#include "matula/codec.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "matula/error.hpp"

namespace matula {

namespace {

// Throws at the first violation.
void check_balanced(std::string_view w) {
  std::size_t depth = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == '(') {
      ++depth;
    } else if (w[i] == ')') {
      if (depth == 0) {
        throw ParseError(ParseError::Kind::unbalanced, i,
                         "unmatched ')' at offset " + std::to_string(i));
      }
      --depth;
    } else {
      throw ParseError(ParseError::Kind::invalid_symbol, i,
                       "invalid symbol at offset " + std::to_string(i));
    }
  }
  if (depth != 0) {
    throw ParseError(ParseError::Kind::unbalanced, w.size(),
                     "unclosed '(' at end of input (offset " + std::to_string(w.size()) + ")");
  }
}

struct ParsedWord {
  RootedTree tree;
  std::vector<std::size_t> open_offset;  // byte offset of each node's '(' (root: 0)
};

ParsedWord parse(std::string_view w) {
  std::vector<std::uint32_t> sizes{0};
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> open{0};  // reduction stack of preorder positions
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char c = w[i];
    if (c == '(') {
      open.push_back(sizes.size());
      sizes.push_back(0);
      offsets.push_back(i);
    } else if (c == ')') {
      if (open.size() == 1) {
        throw ParseError(ParseError::Kind::unbalanced, i,
                         "unmatched ')' at offset " + std::to_string(i));
      }
      const std::size_t node = open.back();
      open.pop_back();
      sizes[node] = static_cast<std::uint32_t>(sizes.size() - node);
    } else {
      throw ParseError(ParseError::Kind::invalid_symbol, i,
                       "invalid symbol at offset " + std::to_string(i));
    }
  }
  if (open.size() != 1) {
    throw ParseError(ParseError::Kind::unbalanced, w.size(),
                     "unclosed '(' at end of input (offset " + std::to_string(w.size()) + ")");
  }
  sizes[0] = static_cast<std::uint32_t>(sizes.size());
  return {RootedTree::from_preorder_sizes(std::move(sizes)), std::move(offsets)};
}

std::string block_value(const BigNat& subtree_number, PrimeBackend& primes) {
  try {
    if (const auto k = subtree_number.try_u64()) return std::to_string(primes.nth_prime(*k));
  } catch (const IndexOverflow&) {
  }
  return "p(" + subtree_number.to_string() + ")";
}

const BigNat& value_of(const BigNat& n) { return n; }
const BigNat& value_of(const std::optional<BigNat>& n) { return *n; }

template <class Number>
void require_canonical(const ParsedWord& parsed, const std::vector<Number>& numbers,
                       PrimeBackend& primes) {
  const auto sizes = parsed.tree.preorder_sizes();
  for (std::size_t node = 0; node < sizes.size(); ++node) {
    const auto kids = parsed.tree.child_offsets(node);
    for (std::size_t b = 1; b < kids.size(); ++b) {
      if constexpr (!std::is_same_v<Number, BigNat>) {
        if (!numbers[kids[b]] || !numbers[kids[b - 1]]) {
          throw IndexOverflow("cannot order sibling block " + std::to_string(b) + " at offset " +
                              std::to_string(parsed.open_offset[kids[b]]) +
                              ": Matula number beyond the prime ceiling");
        }
      }
      const BigNat& left = value_of(numbers[kids[b - 1]]);
      const BigNat& right = value_of(numbers[kids[b]]);
      if (right < left) {
        // A block "(" t ")" decodes to p(number of t).
        const std::size_t off = parsed.open_offset[kids[b]];
        throw ParseError(ParseError::Kind::non_canonical, off,
                         "sibling block " + std::to_string(b) + " at offset " +
                             std::to_string(off) + " decodes to " +
                             block_value(right, primes) + ", smaller than the block before it (" +
                             block_value(left, primes) + ")",
                         b);
      }
    }
  }
}

}  // namespace

DyckWord::DyckWord(std::string text) : text_(std::move(text)) { check_balanced(text_); }

DyckWord tree_to_dyck(const RootedTree& t) {
  const auto sizes = t.preorder_sizes();
  std::string out;
  out.reserve(2 * t.edge_count());
  std::vector<std::size_t> open_ends;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    while (!open_ends.empty() && open_ends.back() <= i) {
      out.push_back(')');
      open_ends.pop_back();
    }
    out.push_back('(');
    open_ends.push_back(i + sizes[i]);
  }
  out.append(open_ends.size(), ')');
  return DyckWord(std::move(out), DyckWord::Trusted{});
}

RootedTree dyck_to_tree(std::string_view word, bool strict, PrimeBackend& primes) {
  ParsedWord parsed = parse(word);
  if (strict) {
    require_canonical(parsed, try_subtree_matula_numbers(parsed.tree, primes), primes);
    return std::move(parsed.tree);
  }
  return canonicalize(parsed.tree, primes);
}

DyckWord encode(const BigNat& n, PrimeBackend& primes) {
  if (n.is_zero()) throw std::invalid_argument("encode: n must be >= 1");

  // Work stack: a number still to expand, or a literal parenthesis.
  struct Open {};
  struct Close {};
  using Item = std::variant<BigNat, Open, Close>;
  std::vector<Item> work;
  work.emplace_back(n);
  std::string out;
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    if (std::holds_alternative<Open>(item)) {
      out.push_back('(');
    } else if (std::holds_alternative<Close>(item)) {
      out.push_back(')');
    } else if (const BigNat& m = std::get<BigNat>(item); m != BigNat(1)) {
      const auto factors = primes.factorize(m);
      for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        work.emplace_back(Close{});
        work.emplace_back(BigNat(primes.prime_index(*it)));
        work.emplace_back(Open{});
      }
    }
  }
  return DyckWord(std::move(out), DyckWord::Trusted{});
}

BigNat decode(std::string_view word, bool strict, PrimeBackend& primes) {
  ParsedWord parsed = parse(word);
  auto numbers = subtree_matula_numbers(parsed.tree, primes);
  if (strict) require_canonical(parsed, numbers, primes);
  return std::move(numbers.front());
}

std::vector<DyckWord> split_codewords(std::string_view word) {
  check_balanced(word);
  std::vector<DyckWord> out;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    depth += word[i] == '(' ? 1 : std::size_t(-1);
    if (depth == 0) {
      out.push_back(DyckWord(std::string(word.substr(start, i + 1 - start)), DyckWord::Trusted{}));
      start = i + 1;
    }
  }
  return out;
}

bool verify_prefix_free(std::span<const DyckWord> codewords) {
  struct Node {
    std::array<std::uint32_t, 2> next{0, 0};  // 0 = absent (root is never a child)
    bool terminal = false;
  };
  std::vector<Node> trie(1);
  for (const auto& w : codewords) {
    std::uint32_t at = 0;
    for (char c : w.view()) {
      if (trie[at].terminal) return false;  // an earlier word is a proper prefix
      const int bit = c == ')';
      if (trie[at].next[bit] == 0) {
        trie[at].next[bit] = static_cast<std::uint32_t>(trie.size());
        trie.emplace_back();
      }
      at = trie[at].next[bit];
    }
    if (trie[at].terminal) continue;  // duplicate, not a proper prefix
    if (trie[at].next[0] != 0 || trie[at].next[1] != 0) return false;
    trie[at].terminal = true;
  }
  return true;
}

}  // namespace matula
