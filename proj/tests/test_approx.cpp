#include <catch_amalgamated.hpp>

#include "flipforge/approx.hpp"
#include "flipforge/oracle.hpp"
#include "flipforge/random.hpp"

using namespace flipforge;

TEST_CASE("find_fixed examples") {
  auto a = ConvexTriangulation::from_diagonals(6, {{0, 2}, {0, 3}, {0, 4}}, {1, 2, 3});
  auto b = ConvexTriangulation::from_diagonals(6, {{0, 2}, {2, 4}, {0, 4}}, {1, 2, 3});
  auto r = find_fixed(a, b);
  CHECK(r.fixed == std::vector<Diag>{{0, 2}, {0, 4}});
  CHECK(r.lower_bound == 1);
  REQUIRE(r.pieces.size() == 1);
  CHECK(r.pieces[0].vertices == std::vector<int>{0, 2, 3, 4});

  auto self = find_fixed(a, a);
  CHECK(self.fixed.size() == 3);
  CHECK(self.lower_bound == 0);

  auto c = ConvexTriangulation::from_diagonals(6, {{1, 3}, {3, 5}, {1, 5}}, {1, 2, 3});
  auto none = find_fixed(a, c);
  CHECK(none.fixed.empty());
  CHECK(none.lower_bound == 3);
  CHECK(none.pieces.size() == 1);
}

TEST_CASE("approx_transform small cases") {
  auto x = ConvexTriangulation::fan({2, 1});
  auto y = ConvexTriangulation::fan({1, 2});
  auto r = approx_transform(x, y);
  CHECK(r.lower_bound == 2);
  CHECK(r.seq.cost() == 5);
  CHECK(verify_sequence(x, r.seq, y));
  auto same = approx_transform(x, x);
  CHECK(same.seq.empty());
  CHECK(same.lower_bound == 0);
}

TEST_CASE("approx on random pairs") {
  Rng rng(9);
  for (int m : {5, 8, 12, 30, 100}) {
    for (int rep = 0; rep < 40; ++rep) {
      auto a = random_convex(m, rng);
      // perturb a so that fixed edges actually occur
      auto b = a;
      int k = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int i = 0; i < k && b.n() > 0; ++i) b.flip_label(std::uniform_int_distribution<int>(1, b.n())(rng));
      auto r = approx_transform(a, b);
      CHECK(verify_sequence(a, r.seq, b));
      CHECK(static_cast<long long>(r.seq.cost()) <= approx_bound(r.report));
      auto rev = find_fixed(b, a);
      CHECK(rev.fixed == r.report.fixed);
      long long sum = r.lower_bound + static_cast<long long>(r.report.fixed.size());
      CHECK(sum == a.n());
      // fixed labels never flipped
      std::vector<char> fixed_label(a.n() + 1, 0);
      for (auto d : r.report.fixed) fixed_label[a.label_of(d)] = 1;
      for (int l : r.seq.steps) CHECK_FALSE(fixed_label[l]);
    }
  }
}

TEST_CASE("approx exhaustive at m=6") {
  auto g = oracle::build_graph(ConvexTriangulation::identity_fan(6), oracle::Mode::ConvexLabelled,
                               oracle::default_budget(oracle::Mode::ConvexLabelled));
  int N = static_cast<int>(g.states.size());
  REQUIRE(N == 84);
  for (int i = 0; i < N; ++i) {
    auto d = oracle::bfs_levels(g, i);
    auto a = g.states[i].to_triangulation();
    for (int j = 0; j < N; ++j) {
      auto b = g.states[j].to_triangulation();
      auto r = approx_transform(a, b);
      CHECK(verify_sequence(a, r.seq, b));
      CHECK(r.lower_bound <= d[j]);
      CHECK(static_cast<long long>(r.seq.cost()) >= d[j]);
      CHECK(static_cast<long long>(r.seq.cost()) <= (5 * ceil_log2(3) + 7) * std::max<long long>(r.lower_bound, 1));
    }
  }
}
