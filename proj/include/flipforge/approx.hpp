#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "transform.hpp"

namespace flipforge {

struct Piece {
  std::vector<int> vertices;  // increasing, cyclic boundary order
  int n_i = 0;
};

struct FixedEdgeReport {
  std::vector<Diag> fixed;
  std::vector<Piece> pieces;
  long long lower_bound = 0;
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// hash of the label multiset strictly inside every diagonal, indexed by label
inline std::vector<uint64_t> inside_hashes(const ConvexTriangulation& t) {
  std::vector<uint64_t> h(t.n() + 1, 0);
  // children have shorter spans, so process diagonals by span
  auto ds = t.diagonals();
  std::sort(ds.begin(), ds.end(), [](Diag x, Diag y) { return x.second - x.first < y.second - y.first; });
  for (auto d : ds) {
    int c = t.inner_apex(d);
    uint64_t s = 0;
    for (Diag ch : {Diag{d.first, c}, Diag{c, d.second}}) {
      if (!t.is_diagonal(ch)) continue;
      int l = t.label_of(ch);
      s += splitmix64(static_cast<uint64_t>(l)) + h[l];
    }
    h[t.label_of(d)] = s;
  }
  return h;
}

inline std::vector<int> labels_inside(const ConvexTriangulation& t, Diag d) {
  std::vector<int> out;
  for (int x = d.first; x <= d.second; ++x)
    for (auto it = t.neighbors(x).upper_bound(x); it != t.neighbors(x).end() && *it <= d.second; ++it) {
      Diag e{x, *it};
      if (e != d && t.is_diagonal(e)) out.push_back(t.label_of(e));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline FixedEdgeReport find_fixed(const ConvexTriangulation& a, const ConvexTriangulation& b) {
  if (a.m() != b.m()) throw Error(ErrorKind::SizeMismatch, "polygons differ in size");
  FixedEdgeReport rep;
  auto ha = detail::inside_hashes(a), hb = detail::inside_hashes(b);
  for (auto d : a.diagonals()) {
    int l = a.label_of(d);
    if (b.label_of(d) != l || ha[l] != hb[l]) continue;
    if (detail::labels_inside(a, d) != detail::labels_inside(b, d)) continue;
    rep.fixed.push_back(d);
  }
  // faces cut by the fixed chords; each chord (and the root side) owns the face below it
  std::vector<Diag> roots{{0, a.m() - 1}};
  roots.insert(roots.end(), rep.fixed.begin(), rep.fixed.end());
  std::vector<std::vector<int>> ends(a.m());
  for (auto d : rep.fixed) ends[d.first].push_back(d.second);
  for (auto& e : ends) std::sort(e.begin(), e.end());
  for (auto r : roots) {
    Piece p;
    int v = r.first;
    p.vertices.push_back(v);
    while (v < r.second) {
      int nxt = v + 1;
      // largest fixed chord from v that stays strictly inside r
      for (auto it = ends[v].rbegin(); it != ends[v].rend(); ++it)
        if (Diag{v, *it} != r && *it <= r.second) {
          nxt = *it;
          break;
        }
      v = nxt;
      p.vertices.push_back(v);
    }
    p.n_i = static_cast<int>(p.vertices.size()) - 3;
    if (p.n_i > 0) {
      rep.lower_bound += p.n_i;
      rep.pieces.push_back(std::move(p));
    }
  }
  return rep;
}

namespace detail {

// restriction of t to the polygon on vertices vs, labels renumbered by rank
inline ConvexTriangulation restrict_to(const ConvexTriangulation& t, const std::vector<int>& vs,
                                       const std::vector<int>& label_rank) {
  int k = static_cast<int>(vs.size());
  std::vector<int> local(t.m(), -1);
  for (int i = 0; i < k; ++i) local[vs[i]] = i;
  std::vector<Diag> ds;
  std::vector<int> ls;
  for (int i = 0; i < k; ++i)
    for (int w : t.neighbors(vs[i])) {
      if (w <= vs[i] || local[w] < 0) continue;
      int j = local[w];
      if (j - i < 2 || (i == 0 && j == k - 1)) continue;
      int r = label_rank[t.label_of({vs[i], w})];
      if (r == 0) throw Error(ErrorKind::PieceLabelMismatch, "piece label sets differ");
      ds.push_back({i, j});
      ls.push_back(r);
    }
  return ConvexTriangulation::from_diagonals(k, ds, ls);
}

}  // namespace detail

struct ApproxResult {
  FlipSequence seq;
  long long lower_bound = 0;
  FixedEdgeReport report;
};

inline ApproxResult approx_transform(const ConvexTriangulation& a, const ConvexTriangulation& b) {
  ApproxResult res;
  res.report = find_fixed(a, b);
  res.lower_bound = res.report.lower_bound;
  for (auto& p : res.report.pieces) {
    // piece labels: diagonals of a spanned by the piece's vertices
    std::vector<int> inside;
    std::vector<char> in(a.m(), 0);
    for (int v : p.vertices) in[v] = 1;
    int k = static_cast<int>(p.vertices.size());
    for (int i = 0; i < k; ++i)
      for (int w : a.neighbors(p.vertices[i]))
        if (w > p.vertices[i] && in[w] && a.is_diagonal(p.vertices[i], w)) inside.push_back(a.label_of({p.vertices[i], w}));
    std::vector<int> rank(a.n() + 1, 0);
    std::vector<int> sorted_labels;
    for (int l : inside) {
      bool boundary = false;
      Diag d = a.diagonal_of(l);
      auto pos = [&](int v) { return static_cast<int>(std::lower_bound(p.vertices.begin(), p.vertices.end(), v) - p.vertices.begin()); };
      int i = pos(d.first), j = pos(d.second);
      if (j - i < 2 || (i == 0 && j == k - 1)) boundary = true;
      if (!boundary) sorted_labels.push_back(l);
    }
    std::sort(sorted_labels.begin(), sorted_labels.end());
    for (size_t r = 0; r < sorted_labels.size(); ++r) rank[sorted_labels[r]] = static_cast<int>(r) + 1;
    auto la = detail::restrict_to(a, p.vertices, rank);
    auto lb = detail::restrict_to(b, p.vertices, rank);
    auto local = transform_between(la, lb);
    for (int x : local.steps) res.seq.push(sorted_labels[x - 1]);
  }
  return res;
}

inline long long approx_bound(const FixedEdgeReport& r) {
  long long s = 0;
  for (auto& p : r.pieces) s += 2LL * p.n_i + sort_fan_bound(p.n_i);
  return s;
}

}  // namespace flipforge
