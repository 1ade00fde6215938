#include <catch_amalgamated.hpp>

#include "flipforge/random.hpp"
#include "flipforge/transform.hpp"

using namespace flipforge;

TEST_CASE("flip on a square") {
  auto t = ConvexTriangulation::from_diagonals(4, {{0, 2}}, {1});
  auto d = t.flip({0, 2});
  CHECK(d == Diag{1, 3});
  CHECK(t.label_of({1, 3}) == 1);
  CHECK_FALSE(t.is_diagonal(0, 2));
}

TEST_CASE("flip in a hexagon") {
  auto t = ConvexTriangulation::from_diagonals(6, {{0, 2}, {2, 4}, {0, 4}});
  CHECK(t.flip({0, 2}) == Diag{1, 4});
}

TEST_CASE("unknown diagonal") {
  auto t = ConvexTriangulation::identity_fan(5);
  CHECK_THROWS_AS(t.flip({1, 3}), Error);
  try {
    t.flip({1, 3});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownDiagonal);
  }
}

TEST_CASE("invalid inputs rejected") {
  CHECK_THROWS_AS(ConvexTriangulation::from_diagonals(6, {{0, 3}, {1, 4}, {0, 4}}), Error);
  CHECK_THROWS_AS(ConvexTriangulation::from_diagonals(6, {{0, 2}, {0, 3}}), Error);
  CHECK_THROWS_AS(ConvexTriangulation::from_diagonals(5, {{0, 4}, {0, 2}}), Error);
  CHECK_THROWS_AS(ConvexTriangulation::from_diagonals(5, {{0, 2}, {0, 3}}, {1, 1}), Error);
}

TEST_CASE("neighbors_of") {
  auto f5 = ConvexTriangulation::identity_fan(5);
  CHECK(f5.neighbors_of({0, 2}) == std::array<int, 4>{0, 1, 2, 3});
  CHECK(f5.neighbors_of({0, 3}) == std::array<int, 4>{0, 2, 3, 4});
  auto t = ConvexTriangulation::from_diagonals(6, {{0, 2}, {2, 4}, {0, 4}});
  CHECK(t.neighbors_of({0, 4}) == std::array<int, 4>{0, 2, 4, 5});
}

TEST_CASE("degenerate triangle") {
  ConvexTriangulation t(3);
  CHECK(t.n() == 0);
  CHECK(t.is_fan());
  CHECK(canonicalize_unlabelled(t).empty());
  CHECK(transform_between(t, t).empty());
}

TEST_CASE("verify_sequence examples") {
  auto s = ConvexTriangulation::from_diagonals(4, {{0, 2}}, {1});
  auto g = ConvexTriangulation::from_diagonals(4, {{1, 3}}, {1});
  CHECK(verify_sequence(s, {}, s));
  FlipSequence one;
  one.push(1);
  CHECK(verify_sequence(s, one, g));
  FlipSequence bad;
  bad.push(2);
  std::string why;
  CHECK_FALSE(verify_sequence(s, bad, g, &why));
  CHECK(why.find("step 1") != std::string::npos);
}

TEST_CASE("involution for every diagonal, random triangulations") {
  Rng rng(7);
  for (int m : {4, 5, 8, 17, 64}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto t = random_convex(m, rng);
      for (auto d : t.diagonals()) {
        auto u = t;
        auto nd = u.flip(d);
        u.flip(nd);
        CHECK(u == t);
      }
    }
  }
}

TEST_CASE("canonicalize_unlabelled") {
  auto f = ConvexTriangulation::identity_fan(9);
  CHECK(canonicalize_unlabelled(f).empty());
  auto t = ConvexTriangulation::from_diagonals(6, {{1, 3}, {1, 4}, {1, 5}});
  auto seq = canonicalize_unlabelled(t);
  CHECK(seq.cost() == 3);
  CHECK(t.diagonals() == std::vector<Diag>{{0, 2}, {0, 3}, {0, 4}});

  Rng rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    auto a = random_convex(50, rng);
    auto b = a;
    auto s = canonicalize_unlabelled(b);
    CHECK(b.is_fan());
    CHECK(s.cost() <= 47);
    // apex degree rises by one per flip
    auto c = a;
    int deg = c.degree(0);
    for (int l : s.steps) {
      c.flip_label(l);
      CHECK(c.degree(0) == ++deg);
    }
  }
}

TEST_CASE("transform_between") {
  auto a = ConvexTriangulation::fan({2, 1});
  auto b = ConvexTriangulation::fan({1, 2});
  auto s = transform_between(a, b);
  CHECK(s.cost() == 5);
  CHECK(verify_sequence(a, s, b));
  CHECK(transform_between(a, a).empty());
  CHECK_THROWS_AS(transform_between(a, ConvexTriangulation::identity_fan(6)), Error);

  Rng rng(3);
  for (int m : {4, 6, 9, 20, 67, 131}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto x = random_convex(m, rng), y = random_convex(m, rng);
      auto seq = transform_between(x, y);
      CHECK(verify_sequence(x, seq, y));
      CHECK(static_cast<long long>(seq.cost()) <= transform_bound(m - 3));
    }
  }
}

TEST_CASE("unlabelled round trip") {
  Rng rng(5);
  auto a = random_convex(30, rng);
  auto b = random_convex(30, rng);
  auto s = transform_between(a, b);
  auto u = to_unlabelled(a, s);
  CHECK_FALSE(u.labelled);
  CHECK(to_labelled(a, u).steps == s.steps);
  CHECK(verify_sequence(a, u, b));
}
