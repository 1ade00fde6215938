#include <catch_amalgamated.hpp>

#include "flipforge/labelsort.hpp"
#include "flipforge/oracle.hpp"
#include "flipforge/random.hpp"

using namespace flipforge;
using namespace flipforge::oracle;

TEST_CASE("labelled state counts") {
  for (int m = 4; m <= 8; ++m) CHECK(state_count(Mode::ConvexLabelled, m) == catalan(m - 2) * factorial(m - 3));
  for (int m = 4; m <= 10; ++m) CHECK(state_count(Mode::ConvexUnlabelled, m) == catalan(m - 2));
}

TEST_CASE("trivial distances") {
  auto a = ConvexTriangulation::from_diagonals(4, {{0, 2}}, {1});
  auto b = ConvexTriangulation::from_diagonals(4, {{1, 3}}, {1});
  CHECK(exact_distance(a, a, Mode::ConvexLabelled) == 0);
  CHECK(exact_distance(a, b, Mode::ConvexLabelled) == 1);
  CHECK_THROWS_AS(exact_distance(a, ConvexTriangulation::identity_fan(5), Mode::ConvexLabelled), Error);
}

TEST_CASE("pentagon distance and gadget discovery") {
  auto x = ConvexTriangulation::fan({2, 1});
  auto y = ConvexTriangulation::fan({1, 2});
  CHECK(exact_distance(x, y, Mode::ConvexLabelled) == 5);
  auto script = discover_gadget(y, x, Mode::ConvexLabelled, default_budget(Mode::ConvexLabelled));
  REQUIRE(script.size() == 5);
  // label 1 is the left edge of the start fan
  for (size_t i = 0; i < 5; ++i) CHECK(script[i][0] - 1 == kPentagonScript[i]);
}

TEST_CASE("unlabelled diameters") {
  CHECK(diameter(Mode::ConvexUnlabelled, 5) == 2);
  std::vector<int> known{1, 2, 4, 5, 7, 9, 11};  // m = 4..10
  for (int m = 4; m <= 10; ++m) CHECK(diameter(Mode::ConvexUnlabelled, m) == known[m - 4]);
}

TEST_CASE("labelled diameters small") {
  CHECK(diameter(Mode::ConvexLabelled, 4) == 1);
  CHECK(diameter(Mode::ConvexLabelled, 5) == 5);
}

TEST_CASE("symmetry and triangle inequality") {
  Rng rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    auto a = random_convex(7, rng), b = random_convex(7, rng), c = random_convex(7, rng);
    int ab = exact_distance(a, b, Mode::ConvexLabelled);
    CHECK(ab == exact_distance(b, a, Mode::ConvexLabelled));
    CHECK(ab <= exact_distance(a, c, Mode::ConvexLabelled) + exact_distance(c, b, Mode::ConvexLabelled));
  }
}

TEST_CASE("simultaneous mode") {
  auto x = ConvexTriangulation::fan({2, 1});
  auto y = ConvexTriangulation::fan({1, 2});
  // in a pentagon every round is a single flip
  CHECK(exact_distance(x, y, Mode::ConvexSimLabelled) == 5);
  auto f = ConvexTriangulation::fan({1, 2, 3});
  auto r = ConvexTriangulation::fan({3, 2, 1});
  int d = exact_distance(f, r, Mode::ConvexSimLabelled);
  CHECK(d <= exact_distance(f, r, Mode::ConvexLabelled));
  CHECK(d >= 1);
}

TEST_CASE("budget") {
  auto a = ConvexTriangulation::identity_fan(10);
  CHECK_THROWS_AS(exact_distance(a, a, Mode::ConvexLabelled), Error);
  Budget tiny{10, 20, false};
  Rng rng(1);
  auto b = random_convex(9, rng);
  auto c = random_convex(9, rng);
  CHECK_THROWS_AS(exact_distance(b, c, Mode::ConvexLabelled, tiny), Error);
}
