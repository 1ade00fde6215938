#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "convex.hpp"

namespace flipforge {

using Rng = std::mt19937_64;

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(std::uniform_int_distribution<int>(0, i)(rng));
    std::swap(p[i], p[j]);
  }
  return p;
}

// Remy's algorithm: uniform binary tree with m-2 internal nodes, mapped to a
// triangulation by rooting at (0, m-1).
inline std::vector<Diag> random_triangulation_diagonals(int m, Rng& rng) {
  int internal = m - 2;
  std::vector<int> left{-1}, right{-1}, parent{-1};
  for (int k = 0; k < internal; ++k) {
    int cnt = static_cast<int>(left.size());
    int x = std::uniform_int_distribution<int>(0, cnt - 1)(rng);
    int y = cnt, z = cnt + 1;
    left.push_back(-1), right.push_back(-1), parent.push_back(parent[x]);
    left.push_back(-1), right.push_back(-1), parent.push_back(y);
    int px = parent[x];
    if (px != -1) (left[px] == x ? left[px] : right[px]) = y;
    parent[x] = y;
    if (std::uniform_int_distribution<int>(0, 1)(rng))
      left[y] = x, right[y] = z;
    else
      left[y] = z, right[y] = x;
  }
  int root = 0;
  while (parent[root] != -1) root = parent[root];
  int total = static_cast<int>(left.size());
  std::vector<int> size(total, 0);
  // post-order sizes
  std::vector<std::pair<int, bool>> st{{root, false}};
  while (!st.empty()) {
    auto [v, done] = st.back();
    st.pop_back();
    if (left[v] == -1) continue;
    if (done) {
      size[v] = 1 + size[left[v]] + size[right[v]];
    } else {
      st.push_back({v, true});
      st.push_back({left[v], false});
      st.push_back({right[v], false});
    }
  }
  std::vector<Diag> d;
  struct Frame {
    int v, a, b;
  };
  std::vector<Frame> fr{{root, 0, m - 1}};
  while (!fr.empty()) {
    auto [v, a, b] = fr.back();
    fr.pop_back();
    if (left[v] == -1) continue;
    int c = a + size[left[v]] + 1;
    if (c - a >= 2) d.push_back({a, c});
    if (b - c >= 2) d.push_back({c, b});
    fr.push_back({left[v], a, c});
    fr.push_back({right[v], c, b});
  }
  return d;
}

inline ConvexTriangulation random_convex(int m, Rng& rng) {
  auto d = random_triangulation_diagonals(m, rng);
  auto p = random_permutation(m - 3, rng);
  return ConvexTriangulation::from_diagonals(m, d, p);
}

inline ConvexTriangulation random_fan(int n, Rng& rng) { return ConvexTriangulation::fan(random_permutation(n, rng)); }

}  // namespace flipforge
