#pragma once

#include <vector>

#include "labelsort.hpp"

namespace flipforge {

inline void require_full_labels(const ConvexTriangulation& a, const ConvexTriangulation& b) {
  if (a.m() != b.m()) throw Error(ErrorKind::SizeMismatch, "polygons differ in size");
}

// canonicalize(a) + sort + reverse(canonicalize(b))
inline FlipSequence transform_between(const ConvexTriangulation& a, const ConvexTriangulation& b) {
  require_full_labels(a, b);
  FlipSequence out;
  if (a == b) return out;
  ConvexTriangulation ta = a, tb = b;
  FlipSequence ca = canonicalize_unlabelled(ta);
  FlipSequence cb = canonicalize_unlabelled(tb);
  std::vector<int> ra = ta.fan_permutation(), rb = tb.fan_permutation();
  int n = a.n();
  // rank of each label in rb; sorting by rank turns ra into rb
  std::vector<int> rank(n + 1);
  for (int t = 0; t < n; ++t) rank[rb[t]] = t + 1;
  std::vector<int> rel(n);
  for (int t = 0; t < n; ++t) rel[t] = rank[ra[t]];
  FlipSequence s = sort_fan(rel);
  out.append(ca);
  for (int x : s.steps) out.push(rb[x - 1]);
  out.append(cb.reversed());
  return out;
}

inline long long transform_bound(long long n) { return 2 * n + sort_fan_bound(n); }

}  // namespace flipforge
