#include <doctest.h>

#include <random>

#include "matula/error.hpp"
#include "matula/tree.hpp"
#include "oracle.hpp"

using namespace matula;

namespace {

PrimeBackend& backend() {
  static PrimeBackend pb(PrimeBackendConfig{1 << 16, 1 << 24});
  return pb;
}

RootedTree t(std::uint64_t n) { return tau(BigNat(n), backend()); }

// Compare an ordered tree against the nested-vector oracle, ignoring order.
bool same_shape(const RootedTree& tree, const oracle::Node& node) {
  return tree.edge_count() == oracle::edges(node) && tree.child_count() == node.children.size();
}

}  // namespace

TEST_CASE("singleton") {
  const auto s = singleton();
  CHECK(s.child_count() == 0);
  CHECK(s.edge_count() == 0);
  CHECK(matula_number(s, backend()) == BigNat(1));
  CHECK_FALSE(s.is_planted());
  CHECK(s == RootedTree{});
}

TEST_CASE("merge") {
  auto& pb = backend();
  CHECK(merge(t(12), singleton(), pb) == t(12));
  CHECK(merge(singleton(), t(12), pb) == t(12));
  CHECK(merge(t(2), t(2), pb) == t(4));
  CHECK(merge(t(2), t(3), pb) == t(6));
  CHECK(merge(t(3), t(2), pb) == t(6));
  CHECK(merge(merge(t(5), t(6), pb), t(7), pb) == merge(t(5), merge(t(6), t(7), pb), pb));
}

TEST_CASE("plant") {
  CHECK(plant(singleton()) == t(2));
  CHECK(plant(t(4)) == t(7));
  for (std::uint64_t n : {1, 2, 6, 17, 100}) CHECK(plant(t(n)).is_planted());
}

TEST_CASE("tau") {
  CHECK(t(1) == singleton());
  const RootedTree leaves[] = {singleton(), singleton()};
  CHECK(t(4) == RootedTree::from_children(leaves));
  auto& pb = backend();
  CHECK(t(17) == plant(plant(merge(plant(singleton()), plant(singleton()), pb))));
  CHECK_THROWS_AS(tau(BigNat(0), pb), std::invalid_argument);
}

TEST_CASE("tau of a prime beyond the ceiling overflows") {
  PrimeBackend tiny(PrimeBackendConfig{64, 1000});
  CHECK_THROWS_AS(tau(BigNat(1009), tiny), IndexOverflow);
  CHECK_NOTHROW(tau(BigNat(997), tiny));
}

TEST_CASE("matula_number") {
  auto& pb = backend();
  CHECK(matula_number(singleton(), pb) == BigNat(1));
  CHECK(matula_number(plant(plant(plant(singleton()))), pb) == BigNat(5));
  const RootedTree leaves[] = {singleton(), singleton(), singleton()};
  CHECK(matula_number(RootedTree::from_children(leaves), pb) == BigNat(8));
}

TEST_CASE("matula_number overflows on a long path") {
  PrimeBackend tiny(PrimeBackendConfig{64, 1 << 12});
  RootedTree path;
  for (int i = 0; i < 12; ++i) path = plant(path);
  CHECK_THROWS_AS(matula_number(path, tiny), IndexOverflow);
}

TEST_CASE("canonicalize") {
  auto& pb = backend();
  CHECK(canonicalize(singleton(), pb) == singleton());
  const RootedTree unordered[] = {t(3), t(2)};
  const RootedTree ordered[] = {t(2), t(3)};
  const auto raw = RootedTree::from_children(unordered);
  CHECK_FALSE(raw == RootedTree::from_children(ordered));
  CHECK(canonicalize(raw, pb) == RootedTree::from_children(ordered));
  CHECK(canonicalize(raw, pb) == t(15));  // p(2) * p(3)

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto kids = t(2 + rng() % 5000).children();
    std::shuffle(kids.begin(), kids.end(), rng);
    const auto shuffled = RootedTree::from_children(kids);
    const auto once = canonicalize(shuffled, pb);
    CHECK(canonicalize(once, pb) == once);
    CHECK(matula_number(once, pb) == matula_number(shuffled, pb));
  }
}

TEST_CASE("edge_count and is_planted") {
  CHECK(edge_count(singleton()) == 0);
  CHECK(edge_count(t(4)) == 2);
  CHECK(edge_count(t(17)) == 4);
  CHECK(is_planted(t(2)));
  CHECK_FALSE(is_planted(t(6)));
}

TEST_CASE("deep trees do not recurse") {
  std::vector<std::uint32_t> sizes(200001);
  for (std::uint32_t i = 0; i < sizes.size(); ++i) sizes[i] = 200001 - i;
  const auto path = RootedTree::from_preorder_sizes(sizes);
  CHECK(path.edge_count() == 200000);
  CHECK(path.is_planted());
  const auto copy = plant(path);
  CHECK(copy.children().front() == path);
}

TEST_CASE("from_preorder_sizes rejects malformed input") {
  CHECK_THROWS(RootedTree::from_preorder_sizes({}));
  CHECK_THROWS(RootedTree::from_preorder_sizes({2}));
  CHECK_THROWS(RootedTree::from_preorder_sizes({3, 1, 2}));
  CHECK_THROWS(RootedTree::from_preorder_sizes({3, 0, 1}));
  CHECK(RootedTree::from_preorder_sizes({3, 2, 1}) == t(3));
}

TEST_CASE("properties up to 3000") {
  auto& pb = backend();
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    const auto tree = t(n);
    REQUIRE(matula_number(tree, pb) == BigNat(n));
    REQUIRE(same_shape(tree, oracle::tau(n)));
    REQUIRE(tree.edge_count() == oracle::g(n));
    if (n >= 2) REQUIRE(tree.is_planted() == oracle::is_prime(n));
  }
  for (std::uint64_t k = 1; k <= 400; ++k) REQUIRE(t(pb.nth_prime(k)) == plant(t(k)));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = 1 + rng() % 10000, b = 1 + rng() % 10000;
    REQUIRE(t(a * b) == merge(t(a), t(b), pb));
  }
}
