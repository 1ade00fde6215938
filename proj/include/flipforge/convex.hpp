#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace flipforge {

using Diag = std::pair<int, int>;

inline Diag make_diag(int a, int b) { return a < b ? Diag{a, b} : Diag{b, a}; }

// Triangulation of the convex m-gon (vertices 0..m-1 counter-clockwise) with
// a bijective labelling of its m-3 diagonals onto 1..m-3.
class ConvexTriangulation {
 public:
  ConvexTriangulation() : ConvexTriangulation(3) {}

  explicit ConvexTriangulation(int m) : m_(m), adj_(m), by_label_(1) {
    if (m < 3) throw Error(ErrorKind::BadSize, "polygon needs m >= 3");
    for (int i = 0; i < m; ++i) {
      adj_[i].insert((i + 1) % m);
      adj_[(i + 1) % m].insert(i);
    }
  }

  // labels may be empty: diagonals are then labelled 1..n in sorted order.
  static ConvexTriangulation from_diagonals(int m, std::vector<Diag> diags,
                                            std::vector<int> labels = {}) {
    ConvexTriangulation t(m);
    int n = m - 3;
    if (static_cast<int>(diags.size()) != n)
      throw Error(ErrorKind::InvalidTriangulation, "expected " + std::to_string(n) + " diagonals");
    if (labels.empty()) {
      std::sort(diags.begin(), diags.end());
      for (int i = 0; i < n; ++i) labels.push_back(i + 1);
    }
    if (labels.size() != diags.size())
      throw Error(ErrorKind::InvalidTriangulation, "labels/diagonals length mismatch");
    std::vector<char> seen(n + 1, 0);
    for (int l : labels) {
      if (l < 1 || l > n || seen[l]) throw Error(ErrorKind::InvalidTriangulation, "labels are not a permutation of 1..n");
      seen[l] = 1;
    }
    for (auto& d : diags) {
      d = make_diag(d.first, d.second);
      if (d.first < 0 || d.second >= m || d.second - d.first < 2 || (d.first == 0 && d.second == m - 1))
        throw Error(ErrorKind::InvalidTriangulation, "not a chord");
    }
    std::vector<Diag> s = diags;
    std::sort(s.begin(), s.end(), [](const Diag& x, const Diag& y) {
      return x.first != y.first ? x.first < y.first : x.second > y.second;
    });
    std::vector<Diag> st;
    for (size_t i = 0; i < s.size(); ++i) {
      if (i && s[i] == s[i - 1]) throw Error(ErrorKind::InvalidTriangulation, "duplicate diagonal");
      while (!st.empty() && st.back().second <= s[i].first) st.pop_back();
      if (!st.empty() && s[i].second > st.back().second)
        throw Error(ErrorKind::InvalidTriangulation, "crossing diagonals");
      st.push_back(s[i]);
    }
    t.by_label_.assign(n + 1, Diag{-1, -1});
    for (int i = 0; i < n; ++i) t.insert(diags[i], labels[i]);
    return t;
  }

  // fan at apex 0, perm[t] = label of (0, t+2)
  static ConvexTriangulation fan(const std::vector<int>& perm) {
    int m = static_cast<int>(perm.size()) + 3;
    std::vector<Diag> d;
    for (int t = 0; t < m - 3; ++t) d.push_back({0, t + 2});
    return from_diagonals(m, d, perm);
  }

  static ConvexTriangulation identity_fan(int m) {
    std::vector<int> p(std::max(0, m - 3));
    for (int i = 0; i < m - 3; ++i) p[i] = i + 1;
    ConvexTriangulation t(m);
    t.by_label_.assign(m - 2, Diag{-1, -1});
    for (int i = 0; i < m - 3; ++i) t.insert({0, i + 2}, i + 1);
    return t;
  }

  int m() const { return m_; }
  int n() const { return m_ - 3; }

  bool is_diagonal(int a, int b) const {
    if (a > b) std::swap(a, b);
    return a >= 0 && b < m_ && b - a >= 2 && !(a == 0 && b == m_ - 1) && adj_[a].count(b);
  }
  bool is_diagonal(Diag d) const { return is_diagonal(d.first, d.second); }

  int label_of(Diag d) const {
    auto it = label_.find(key(make_diag(d.first, d.second)));
    return it == label_.end() ? 0 : it->second;
  }
  bool has_label(int l) const { return l >= 1 && l <= n(); }
  Diag diagonal_of(int l) const {
    if (!has_label(l)) throw Error(ErrorKind::UnknownDiagonal, "no diagonal with label " + std::to_string(l));
    return by_label_[l];
  }

  const std::set<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  // apex of the triangle on the {a..b} side of diagonal (a,b), a<b
  int inner_apex(Diag d) const {
    auto it = adj_[d.first].lower_bound(d.second);
    return *std::prev(it);
  }
  int outer_apex(Diag d) const {
    auto it = adj_[d.first].upper_bound(d.second);
    return it == adj_[d.first].end() ? *adj_[d.first].begin() : *it;
  }

  // quadrilateral around d in boundary order, starting from its smallest vertex
  std::array<int, 4> neighbors_of(Diag d) const {
    d = make_diag(d.first, d.second);
    require(d);
    std::array<int, 4> q{d.first, inner_apex(d), d.second, outer_apex(d)};
    std::sort(q.begin(), q.end());
    return q;
  }

  // the two triangles incident to d, each as a sorted vertex triple
  std::array<std::array<int, 3>, 2> faces_of(Diag d) const {
    d = make_diag(d.first, d.second);
    std::array<int, 3> f1{d.first, inner_apex(d), d.second};
    std::array<int, 3> f2{d.first, d.second, outer_apex(d)};
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    return {f1, f2};
  }

  Diag flip(Diag d) {
    d = make_diag(d.first, d.second);
    require(d);
    int c = inner_apex(d), x = outer_apex(d);
    int l = label_.at(key(d));
    erase(d);
    Diag nd = make_diag(c, x);
    insert(nd, l);
    return nd;
  }
  Diag flip_label(int l) { return flip(diagonal_of(l)); }

  std::vector<Diag> diagonals() const {
    std::vector<Diag> out;
    for (int a = 0; a < m_; ++a)
      for (int b : adj_[a])
        if (b > a && is_diagonal(a, b)) out.push_back({a, b});
    return out;
  }
  // labels aligned with diagonals()
  std::vector<int> labels() const {
    std::vector<int> out;
    for (auto& d : diagonals()) out.push_back(label_of(d));
    return out;
  }

  bool is_fan() const { return degree(0) == m_ - 1; }
  std::vector<int> fan_permutation() const {
    if (!is_fan()) throw Error(ErrorKind::InvalidStart, "not the fan at apex 0");
    std::vector<int> p(n());
    for (int t = 0; t < n(); ++t) p[t] = label_of({0, t + 2});
    return p;
  }

  bool same_shape(const ConvexTriangulation& o) const { return m_ == o.m_ && adj_ == o.adj_; }
  bool operator==(const ConvexTriangulation& o) const {
    return same_shape(o) && by_label_ == o.by_label_;
  }
  bool operator!=(const ConvexTriangulation& o) const { return !(*this == o); }

  // replace the labelling: new label of the diagonal carrying label l is f[l]
  void relabel(const std::vector<int>& f) {
    std::vector<Diag> nb(by_label_.size());
    for (int l = 1; l <= n(); ++l) {
      nb[f[l]] = by_label_[l];
      label_[key(by_label_[l])] = f[l];
    }
    by_label_ = nb;
  }

 private:
  uint64_t key(Diag d) const { return static_cast<uint64_t>(d.first) * static_cast<uint64_t>(m_) + d.second; }
  void require(Diag d) const {
    if (!is_diagonal(d))
      throw Error(ErrorKind::UnknownDiagonal,
                  "(" + std::to_string(d.first) + "," + std::to_string(d.second) + ") is not a diagonal");
  }
  void insert(Diag d, int l) {
    adj_[d.first].insert(d.second);
    adj_[d.second].insert(d.first);
    label_[key(d)] = l;
    by_label_[l] = d;
  }
  void erase(Diag d) {
    adj_[d.first].erase(d.second);
    adj_[d.second].erase(d.first);
    label_.erase(key(d));
  }

  int m_;
  std::vector<std::set<int>> adj_;
  std::unordered_map<uint64_t, int> label_;
  std::vector<Diag> by_label_;
};

}  // namespace flipforge
