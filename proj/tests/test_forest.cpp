#include <random>

#include "doctest.h"

#include "common.hpp"
#include "fskit/errors.hpp"
#include "fskit/forest.hpp"

using namespace fskit;

namespace {

ColouredTree tree(const std::string &w) { return build_tree(parse_caret_word(w)); }

Forest single(const ColouredTree &t) { return Forest{{t}}; }

Forest random_forest(std::mt19937_64 &rng, int roots, int max_carets) {
  Forest f;
  std::uniform_int_distribution<int> k(0, max_carets);
  for (int r = 0; r < roots; ++r) f.trees.push_back(tree(testing_support::random_caret_word(rng, k(rng), "abc")));
  return f;
}

// a forest with the given number of roots whose trees are random
Forest random_forest_on(std::mt19937_64 &rng, int roots) { return random_forest(rng, roots, 3); }

} // namespace

TEST_CASE("build_tree") {
  CHECK(build_tree({}).is_leaf());
  CHECK(tree("a1") == ColouredTree::caret("a"));
  auto t = tree("a1 a1 a3");
  CHECK(t.leaf_count() == 4);
  CHECK(leaf_addresses(t) == std::vector<Word>{"00", "01", "10", "11"});
  CHECK_THROWS_AS(tree("a1 a3"), IndexOutOfRange);
  CHECK_THROWS_AS(parse_caret_word("a0"), ParseError);
}

TEST_CASE("read_back inverts build_tree") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    auto t = tree(testing_support::random_caret_word(rng, k % 12, "ab"));
    CHECK(build_tree(read_back(t)) == t);
    auto addr = leaf_addresses(t);
    for (size_t i = 1; i < addr.size(); ++i) CHECK(addr[i - 1] < addr[i]);
  }
}

TEST_CASE("leaf_address and leaf_path") {
  CHECK(leaf_address(ColouredTree::caret("a"), 1) == "0");
  CHECK(leaf_address(right_vine(2, "a"), 2) == "10");
  CHECK(leaf_address(tree("a1 a1 a3"), 3) == "10");
  CHECK_THROWS_AS(leaf_address(tree("a1"), 3), IndexOutOfRange);
  CHECK(leaf_path(ColouredTree::caret("a"), 2) == std::vector<PathStep>{{"a", 1}});
  CHECK(leaf_path(right_vine(2, "b"), 3) == std::vector<PathStep>{{"b", 1}, {"b", 1}});
  CHECK(leaf_path(tree("a1 a1 a3"), 2) == std::vector<PathStep>{{"a", 0}, {"a", 1}});
}

TEST_CASE("forest composition") {
  auto ya = single(ColouredTree::caret("a"));
  CHECK(compose(ya, Forest::trivial(2)) == ya);
  CHECK(compose(Forest::trivial(1), ya) == ya);
  Forest g{{ColouredTree::caret("b"), ColouredTree()}};
  CHECK(compose(ya, g).trees[0] == ColouredTree("a", ColouredTree::caret("b"), {}));
  CHECK_THROWS_AS(compose(ya, Forest::trivial(3)), ShapeMismatch);

  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    Forest f = random_forest(rng, 2, 4);
    Forest h1 = random_forest_on(rng, f.leaves());
    Forest h2 = random_forest_on(rng, h1.leaves());
    CHECK(compose(compose(f, h1), h2) == compose(f, compose(h1, h2)));
    auto sum = colour_count(f);
    for (const auto &[c, n] : colour_count(h1)) sum[c] += n;
    CHECK(colour_count(compose(f, h1)) == sum);
  }
}

TEST_CASE("tensor") {
  auto ya = single(ColouredTree::caret("a")), yb = single(ColouredTree::caret("b"));
  auto t = tensor(ya, yb);
  CHECK(t.roots() == 2);
  CHECK(t.leaves() == 4);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    Forest f = random_forest(rng, 1, 4), g = random_forest(rng, 2, 4), h = random_forest(rng, 1, 4);
    CHECK(tensor(tensor(f, g), h) == tensor(f, tensor(g, h)));
    CHECK(tensor(f, g).roots() == f.roots() + g.roots());
  }
}

TEST_CASE("prune_word") {
  ColouredTree t("a", ColouredTree::caret("b"), ColouredTree::caret("c"));
  CHECK(prune_word(t, End::First) == std::vector<Colour>{"a", "b"});
  CHECK(prune_word(t, End::Last) == std::vector<Colour>{"a", "c"});
  CHECK(prune_word(ColouredTree(), End::First).empty());
  // gluing along the last leaf concatenates last-leaf words
  std::mt19937_64 rng(14);
  for (int k = 0; k < 50; ++k) {
    auto u = tree(testing_support::random_caret_word(rng, 4, "abc"));
    auto v = tree(testing_support::random_caret_word(rng, 4, "abc"));
    auto glued = u.graft(u.leaf_count(), v);
    auto want = prune_word(u, End::Last);
    for (const auto &c : prune_word(v, End::Last)) want.push_back(c);
    CHECK(prune_word(glued, End::Last) == want);
  }
}

TEST_CASE("narrow_tree") {
  auto n0 = narrow_tree("0");
  CHECK(n0.shape.leaf_count() == 2);
  CHECK(n0.leaf == 1);
  auto n = narrow_tree("010");
  CHECK(n.shape.caret_count() == 3);
  CHECK(n.leaf == 2);
  CHECK(leaf_address(n.shape, n.leaf) == "010");
  auto e = narrow_tree("");
  CHECK(e.shape.is_leaf());
  CHECK(e.leaf == 1);
}

TEST_CASE("vine_decomposition") {
  CHECK(vine_decomposition(parse_caret_word("a1 b3")) == parse_caret_word("b2 a1"));
  auto sorted = parse_caret_word("a1 a2 b3");
  CHECK(vine_decomposition(sorted) == sorted);
  std::mt19937_64 rng(15);
  for (int k = 0; k < 200; ++k) {
    auto w = parse_caret_word(testing_support::random_caret_word(rng, k % 10, "ab"));
    auto v = vine_decomposition(w);
    CHECK(build_tree(v) == build_tree(w));
    CHECK(vine_decomposition(v) == v);
  }
}

TEST_CASE("colour_count and vines") {
  CHECK(colour_count(ColouredTree()).empty());
  CHECK(colour_count(tree("a1 a1 a3")) == std::map<Colour, int>{{"a", 3}});
  CHECK(right_vine(0, "a").is_leaf());
  CHECK(leaf_addresses(right_vine(2, "a")) == std::vector<Word>{"0", "10", "11"});
  CHECK(leaf_addresses(left_vine(2, "a")) == std::vector<Word>{"00", "01", "1"});
}

TEST_CASE("permutations") {
  CHECK(parse_permutation("id").size() == 0);
  auto p = parse_permutation("2 3 1");
  CHECK(p(1) == 2);
  CHECK(p.is_cyclic());
  CHECK(p.inverse()(2) == 1);
  CHECK_FALSE(parse_permutation("2 1 3").is_cyclic());
  CHECK_THROWS_AS(parse_permutation("1 1"), ParseError);
  CHECK_THROWS_AS(parse_permutation("1 x"), ParseError);
}
