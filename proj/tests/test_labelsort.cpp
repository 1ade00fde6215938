#include <catch_amalgamated.hpp>

#include <numeric>

#include "flipforge/random.hpp"
#include "flipforge/transform.hpp"

using namespace flipforge;

namespace {

std::vector<int> iota_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

// replays s on the fan of perm and returns the final fan permutation
std::vector<int> run(const std::vector<int>& perm, const FlipSequence& s) {
  auto t = replay(ConvexTriangulation::fan(perm), s);
  return t.fan_permutation();
}

}  // namespace

TEST_CASE("pentagon_swap") {
  auto s = pentagon_swap({2, 1}, 0);
  CHECK(s.cost() == 5);
  CHECK(run({2, 1}, s) == std::vector<int>{1, 2});
  auto s2 = pentagon_swap({1, 2, 3, 4}, 1);
  CHECK(s2.cost() == 5);
  CHECK(run({1, 2, 3, 4}, s2) == std::vector<int>{1, 3, 2, 4});
  CHECK_THROWS_AS(pentagon_swap({1, 2}, 1), Error);
}

TEST_CASE("reverse_subsequence examples") {
  auto p = iota_perm(8);
  CHECK(reverse_subsequence(p, {0, 7, {3}}).empty());
  CHECK(reverse_subsequence(p, {0, 7, {}}).empty());
  auto adj = reverse_subsequence(p, {2, 3, {2, 3}});
  CHECK(adj.steps == pentagon_swap(p, 2).steps);

  FanBlock b{0, 7, {0, 2, 5, 7}};
  auto s = reverse_subsequence(p, b);
  CHECK(s.cost() <= 40);
  CHECK(run(p, s) == std::vector<int>{8, 2, 6, 4, 5, 3, 7, 1});
  CHECK_THROWS_AS(reverse_subsequence(p, {2, 5, {1, 3}}), Error);
  CHECK_THROWS_AS(reverse_subsequence(p, {2, 5, {4, 3}}), Error);
}

TEST_CASE("reverse_subsequence random blocks, double application") {
  Rng rng(17);
  for (int rep = 0; rep < 300; ++rep) {
    int n = std::uniform_int_distribution<int>(2, 256)(rng);
    auto p = random_permutation(n, rng);
    int lo = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int hi = std::uniform_int_distribution<int>(lo, n - 1)(rng);
    FanBlock b{lo, hi, {}};
    for (int q = lo; q <= hi; ++q)
      if (rng() % 2) b.subsequence.push_back(q);
    auto s = reverse_subsequence(p, b);
    CHECK(static_cast<int>(s.cost()) <= 5 * (hi - lo + 1));
    auto expect = p;
    apply_reversal(expect, b.subsequence);
    auto got = run(p, s);
    CHECK(got == expect);
    auto back = run(got, reverse_subsequence(got, b));
    CHECK(back == p);
  }
}

TEST_CASE("sort_fan") {
  CHECK(sort_fan(iota_perm(10)).empty());
  CHECK(sort_fan({2, 1}).cost() == 5);
  std::vector<int> rev(16);
  for (int i = 0; i < 16; ++i) rev[i] = 16 - i;
  auto s = sort_fan(rev);
  CHECK(s.cost() <= 400);
  CHECK(run(rev, s) == iota_perm(16));

  Rng rng(23);
  for (int n : {3, 5, 31, 64, 100, 257, 1000}) {
    for (int rep = 0; rep < 5; ++rep) {
      auto p = random_permutation(n, rng);
      auto seq = sort_fan(p);
      CHECK(static_cast<long long>(seq.cost()) <= sort_fan_bound(n));
      CHECK(run(p, seq) == iota_perm(n));
    }
  }
}

TEST_CASE("apply_noncrossing_swaps") {
  auto p = iota_perm(6);
  CHECK(apply_noncrossing_swaps(p, {}, 0, 5).empty());
  auto one = apply_noncrossing_swaps(p, {{2, 3}}, 2, 3);
  CHECK(one.cost() == 5);
  CHECK(run(p, one) == std::vector<int>{1, 2, 4, 3, 5, 6});
  auto nest = apply_noncrossing_swaps(p, {{0, 5}, {1, 4}, {2, 3}}, 0, 5);
  CHECK(nest.cost() <= 54);
  CHECK(run(p, nest) == std::vector<int>{6, 5, 4, 3, 2, 1});
  CHECK_THROWS_AS(apply_noncrossing_swaps(p, {{0, 3}, {2, 5}}, 0, 5), Error);
  CHECK_THROWS_AS(apply_noncrossing_swaps(p, {{0, 3}, {3, 5}}, 0, 5), Error);
}
