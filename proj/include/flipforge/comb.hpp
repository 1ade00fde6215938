#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "random.hpp"
#include "labelsort.hpp"
#include "sequence.hpp"

namespace flipforge {

// Embedded maximal planar graph: rot[u] lists u's neighbours in cyclic order.
// Every edge carries a distinct label in 1..3v-6.
class CombTriangulation {
 public:
  CombTriangulation() = default;

  CombTriangulation(std::vector<std::vector<int>> rot, const std::vector<std::array<int, 3>>& edge_labels)
      : v_(static_cast<int>(rot.size())), rot_(std::move(rot)) {
    by_label_.assign(edge_labels.size() + 1, {-1, -1});
    for (auto& e : edge_labels) {
      int l = e[2];
      if (l < 1 || l >= static_cast<int>(by_label_.size()) || by_label_[l].first >= 0)
        throw Error(ErrorKind::InvalidTriangulation, "labels must be a permutation of 1..|E|");
      if (e[0] < 0 || e[1] < 0 || e[0] >= v_ || e[1] >= v_) throw Error(ErrorKind::InvalidTriangulation, "vertex out of range");
      by_label_[l] = make_diag(e[0], e[1]);
      label_[key(e[0], e[1])] = l;
    }
    validate();
  }

  int v() const { return v_; }
  int edge_count() const { return static_cast<int>(by_label_.size()) - 1; }
  const std::vector<int>& rotation(int u) const { return rot_[u]; }
  const std::vector<std::vector<int>>& rotations() const { return rot_; }
  int degree(int u) const { return static_cast<int>(rot_[u].size()); }

  bool adjacent(int u, int w) const { return label_.count(key(u, w)) > 0; }
  int label_of(int u, int w) const {
    auto it = label_.find(key(u, w));
    return it == label_.end() ? 0 : it->second;
  }
  bool has_label(int l) const { return l >= 1 && l <= edge_count(); }
  Diag edge_of(int l) const {
    if (!has_label(l)) throw Error(ErrorKind::UnknownEdge, "no edge with label " + std::to_string(l));
    return by_label_[l];
  }

  int next(int u, int w) const { return rot_[u][(index(u, w) + 1) % rot_[u].size()]; }
  int prev(int u, int w) const {
    const auto& r = rot_[u];
    return r[(index(u, w) + r.size() - 1) % r.size()];
  }

  // the two vertices opposite edge (u,w)
  std::pair<int, int> apexes(int u, int w) const { return {next(u, w), prev(u, w)}; }

  bool flippable(int u, int w) const {
    if (!adjacent(u, w)) return false;
    auto [a, b] = apexes(u, w);
    return a != b && !adjacent(a, b);
  }

  Diag flip(int u, int w) {
    if (!adjacent(u, w)) throw Error(ErrorKind::UnknownEdge, "no edge (" + std::to_string(u) + "," + std::to_string(w) + ")");
    auto [a, b] = apexes(u, w);
    if (a == b || adjacent(a, b)) throw Error(ErrorKind::NotFlippable, "opposite diagonal already present");
    int l = label_of(u, w);
    erase_at(u, w);
    erase_at(w, u);
    insert_between(a, u, w, b);
    insert_between(b, u, w, a);
    label_.erase(key(u, w));
    label_[key(a, b)] = l;
    by_label_[l] = make_diag(a, b);
    return make_diag(a, b);
  }
  Diag flip_label(int l) {
    Diag e = edge_of(l);
    return flip(e.first, e.second);
  }

  // faces as vertex triples in dart order
  std::vector<std::array<int, 3>> faces() const {
    std::vector<std::array<int, 3>> out;
    std::unordered_map<uint64_t, char> seen;
    for (int u = 0; u < v_; ++u)
      for (int w : rot_[u]) {
        if (seen.count(dart(u, w))) continue;
        std::vector<int> f;
        int a = u, b = w;
        while (!seen.count(dart(a, b))) {
          seen[dart(a, b)] = 1;
          f.push_back(a);
          int c = prev(b, a);
          a = b;
          b = c;
        }
        if (f.size() != 3) throw Error(ErrorKind::InvalidTriangulation, "non-triangular face");
        out.push_back({f[0], f[1], f[2]});
      }
    return out;
  }

  std::vector<std::array<int, 3>> edge_list() const {
    std::vector<std::array<int, 3>> out;
    for (int l = 1; l <= edge_count(); ++l) out.push_back({by_label_[l].first, by_label_[l].second, l});
    return out;
  }

  void validate() const {
    if (v_ < 4) throw Error(ErrorKind::InvalidTriangulation, "need at least 4 vertices");
    size_t half = 0;
    for (int u = 0; u < v_; ++u) {
      auto r = rot_[u];
      std::sort(r.begin(), r.end());
      if (std::adjacent_find(r.begin(), r.end()) != r.end()) throw Error(ErrorKind::InvalidTriangulation, "multi-edge");
      for (int w : r) {
        if (w == u || w < 0 || w >= v_) throw Error(ErrorKind::InvalidTriangulation, "bad neighbour");
        if (!std::count(rot_[w].begin(), rot_[w].end(), u)) throw Error(ErrorKind::InvalidTriangulation, "asymmetric rotation");
        if (!adjacent(u, w)) throw Error(ErrorKind::InvalidTriangulation, "unlabelled edge");
      }
      half += r.size();
    }
    if (static_cast<int>(half / 2) != 3 * v_ - 6 || edge_count() != 3 * v_ - 6)
      throw Error(ErrorKind::InvalidTriangulation, "edge count must be 3v-6");
    if (static_cast<int>(faces().size()) != 2 * v_ - 4) throw Error(ErrorKind::InvalidTriangulation, "face count must be 2v-4");
  }

  bool operator==(const CombTriangulation& o) const { return rot_ == o.rot_ && by_label_ == o.by_label_; }

 private:
  uint64_t key(int u, int w) const {
    if (u > w) std::swap(u, w);
    return static_cast<uint64_t>(u) << 32 | static_cast<uint32_t>(w);
  }
  uint64_t dart(int u, int w) const { return static_cast<uint64_t>(u) << 32 | static_cast<uint32_t>(w); }
  size_t index(int u, int w) const {
    const auto& r = rot_[u];
    auto it = std::find(r.begin(), r.end(), w);
    if (it == r.end()) throw Error(ErrorKind::UnknownEdge, "not adjacent");
    return static_cast<size_t>(it - r.begin());
  }
  void erase_at(int u, int w) { rot_[u].erase(rot_[u].begin() + static_cast<long>(index(u, w))); }
  // in x's rotation, u and w are consecutive; put y between them
  void insert_between(int x, int u, int w, int y) {
    auto& r = rot_[x];
    size_t iu = index(x, u), iw = index(x, w);
    if ((iu + 1) % r.size() == iw)
      r.insert(r.begin() + static_cast<long>(iw), y);
    else
      r.insert(r.begin() + static_cast<long>(iu), y);
  }

  int v_ = 0;
  std::vector<std::vector<int>> rot_;
  std::unordered_map<uint64_t, int> label_;
  std::vector<Diag> by_label_;
};

// Spine s_i = i (i < k = v-2), apexes N = k, S = k+1.
// Spine edge (s_i, s_{i+1}) -> i+1, (N, s_i) -> k+1+i, (S, s_i) -> 2k+1+i.
inline CombTriangulation double_wheel(int v) {
  if (v < 5) throw Error(ErrorKind::TooSmall, "double wheel needs v >= 5");
  int k = v - 2, N = k, S = k + 1;
  std::vector<std::vector<int>> rot(v);
  std::vector<std::array<int, 3>> lab;
  for (int i = 0; i < k; ++i) {
    rot[i] = {(i + 1) % k, N, (i + k - 1) % k, S};
    rot[N].push_back(i);
    rot[S].push_back(k - 1 - i);
    lab.push_back({i, (i + 1) % k, i + 1});
    lab.push_back({N, i, k + 1 + i});
    lab.push_back({S, i, 2 * k + 1 + i});
  }
  return CombTriangulation(rot, lab);
}

// Canonical code rooted at the edge labelled 1. With distinct labels an
// isomorphism must send that edge to itself, so the two darts times two
// orientations cover every candidate.
inline std::vector<int> canonical_code(const CombTriangulation& t, bool allow_reflection = true) {
  Diag e = t.edge_of(1);
  std::vector<int> best;
  for (int o = 0; o < (allow_reflection ? 2 : 1); ++o)
    for (int s = 0; s < 2; ++s) {
      int u = s ? e.second : e.first, w = s ? e.first : e.second;
      std::vector<int> num(t.v(), -1), from(t.v(), -1), order{u};
      num[u] = 0;
      from[u] = w;
      std::vector<int> code;
      for (size_t h = 0; h < order.size(); ++h) {
        int x = order[h];
        const auto& r = t.rotation(x);
        size_t d = r.size(), st = static_cast<size_t>(std::find(r.begin(), r.end(), from[x]) - r.begin());
        code.push_back(static_cast<int>(d));
        for (size_t i = 0; i < d; ++i) {
          int y = r[o ? (st + d - i) % d : (st + i) % d];
          if (num[y] < 0) {
            num[y] = static_cast<int>(order.size());
            from[y] = x;
            order.push_back(y);
          }
          code.push_back(num[y]);
          code.push_back(t.label_of(x, y));
        }
      }
      if (best.empty() || code < best) best = code;
    }
  return best;
}

inline bool labelled_isomorphic(const CombTriangulation& a, const CombTriangulation& b, bool allow_reflection = true) {
  if (a.v() != b.v()) return false;
  return canonical_code(a, allow_reflection) == canonical_code(b, allow_reflection);
}

// Stacked triangulation mixed by random legal flips, uniform random labels.
inline CombTriangulation random_comb(int v, Rng& rng) {
  if (v < 5) throw Error(ErrorKind::BadSize, "comb instances need v >= 5");
  std::vector<std::vector<int>> rot{{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}};
  std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  auto ins = [&](int x, int a, int b, int y) {  // put y after a (before b) in x's rotation
    auto& r = rot[x];
    auto ia = std::find(r.begin(), r.end(), a) - r.begin();
    auto ib = std::find(r.begin(), r.end(), b) - r.begin();
    if ((ia + 1) % static_cast<long>(r.size()) == ib)
      r.insert(r.begin() + ib, y);
    else
      r.insert(r.begin() + ia, y);
  };
  while (static_cast<int>(rot.size()) < v) {
    size_t fi = std::uniform_int_distribution<size_t>(0, faces.size() - 1)(rng);
    auto f = faces[fi];
    int y = static_cast<int>(rot.size());
    rot.push_back({f[0], f[2], f[1]});
    ins(f[0], f[1], f[2], y);
    ins(f[1], f[2], f[0], y);
    ins(f[2], f[0], f[1], y);
    faces[fi] = {f[0], f[1], y};
    faces.push_back({f[1], f[2], y});
    faces.push_back({f[2], f[0], y});
  }
  std::vector<std::array<int, 3>> lab;
  for (int u = 0; u < v; ++u)
    for (int w : rot[u])
      if (u < w) lab.push_back({u, w, static_cast<int>(lab.size()) + 1});
  CombTriangulation t(rot, lab);
  for (int i = 0; i < 10 * v; ++i) {
    int l = std::uniform_int_distribution<int>(1, t.edge_count())(rng);
    Diag e = t.edge_of(l);
    if (t.flippable(e.first, e.second)) t.flip(e.first, e.second);
  }
  auto perm = random_permutation(t.edge_count(), rng);
  auto el = t.edge_list();
  for (auto& e : el) e[2] = perm[e[2] - 1];
  return CombTriangulation(t.rotations(), el);
}

namespace detail {

// cell groups of a double wheel: 0 spine, 1 N-spokes, 2 S-spokes
struct Tok {
  int g, d;
};

// Script swapping spine cell i with spoke cell i+shift on side (1 or 2).
inline std::vector<Tok> spine_swap_script(int k, int side, int shift) {
  std::vector<Tok> s;
  if (k >= 4) {
    if (shift == 0)
      s = {{2, -1}, {0, 0}, {1, 0}, {0, 0}, {1, 0}, {2, -1}, {0, 0}};
    else
      s = {{2, 2}, {0, 0}, {1, 1}, {0, 0}, {1, 1}, {2, 2}, {0, 0}};
  } else {
    s = {{0, -1}, {1, 1}, {2, -1}, {0, 0}, {1, -1}, {2, 0}, {0, 1}, {1, 0}, {0, 0},
         {2, -1}, {1, 1}, {0, -1}, {1, 0}, {0, 1}, {2, 0}, {1, -1}, {1, 0}};
    if (shift == 1)
      for (auto& t : s) t.d = t.g == 0 ? -t.d : 1 - t.d;
  }
  if (side == 2)
    for (auto& t : s)
      if (t.g) t.g = 3 - t.g;
  return s;
}

// Labels of a double-wheel-shaped triangulation by cell; flips are emitted
// by label so the model never needs the concrete vertex names.
class WheelModel {
 public:
  WheelModel(int k, std::vector<int> cells, CombTriangulation* t, FlipSequence* out)
      : k_(k), cell_(std::move(cells)), t_(t), out_(out) {}

  int k() const { return k_; }
  int mod(int i) const { return ((i % k_) + k_) % k_; }
  int& at(int g, int i) { return cell_[static_cast<size_t>(g * k_ + mod(i))]; }
  const std::vector<int>& cells() const { return cell_; }
  std::vector<int> side(int g) const {
    return std::vector<int>(cell_.begin() + g * k_, cell_.begin() + (g + 1) * k_);
  }

  void emit(int l) {
    if (t_) t_->flip_label(l);
    out_->push(l);
  }

  void swap_spine(int i, int side, int shift) {
    auto s = spine_swap_script(k_, side, shift);
    std::vector<int> ls;
    for (auto& tk : s) ls.push_back(at(tk.g, i + tk.d));
    for (int l : ls) emit(l);
    std::swap(at(0, i), at(side, i + shift));
  }

  // Sort both spoke fans while spine edge (s_{j-1}, s_j) is flipped to (N,S).
  // Spokes at s_{j-1} and s_j stay put.
  void side_permute(int j, const std::vector<int>& tb, const std::vector<int>& tc) {
    int e = at(0, j - 1);
    emit(e);
    for (int g = 1; g <= 2; ++g) {
      const auto& tgt = g == 1 ? tb : tc;
      std::vector<int> cur, want;
      for (int t = 1; t <= k_ - 2; ++t) {
        cur.push_back(at(g, j + t));
        want.push_back(tgt[static_cast<size_t>(mod(j + t))]);
      }
      std::unordered_map<int, int> rank;
      for (size_t x = 0; x < want.size(); ++x) rank[want[x]] = static_cast<int>(x) + 1;
      std::vector<int> rel;
      for (int l : cur) rel.push_back(rank.at(l));
      for (int r : sort_fan(rel).steps) emit(want[static_cast<size_t>(r - 1)]);
      for (int t = 1; t <= k_ - 2; ++t) at(g, j + t) = want[static_cast<size_t>(t - 1)];
    }
    emit(e);
  }

 private:
  int k_;
  std::vector<int> cell_;
  CombTriangulation* t_;
  FlipSequence* out_;
};


// Move every label to its target cell by spine gadgets along a BFS tree of
// the cell graph; cells are retired in reverse BFS order so each is a leaf.
inline void token_swap(WheelModel& m, const std::vector<int>& target) {
  int k = m.k(), nc = 3 * k;
  auto nbrs = [&](int c) {
    std::vector<int> r;
    if (c < k) {
      for (int g = 1; g <= 2; ++g)
        for (int sh = 0; sh < 2; ++sh) r.push_back(g * k + (c + sh) % k);
    } else {
      int g = c / k, i = c % k;
      r.push_back(i);
      r.push_back((i + k - 1) % k);
    }
    return r;
  };
  std::vector<int> parent(nc, -2), order{0}, depth(nc, 0);
  parent[0] = -1;
  for (size_t h = 0; h < order.size(); ++h)
    for (int y : nbrs(order[h]))
      if (parent[y] == -2) {
        parent[y] = order[h];
        depth[y] = depth[order[h]] + 1;
        order.push_back(y);
      }
  auto swap_cells = [&](int a, int b) {
    if (a >= k) std::swap(a, b);
    int g = b / k, i = b % k;
    m.swap_spine(a, g, i == a ? 0 : 1);
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int leaf = *it, want = target[static_cast<size_t>(leaf)];
    int src = static_cast<int>(std::find(m.cells().begin(), m.cells().end(), want) - m.cells().begin());
    if (src == leaf) continue;
    std::vector<int> up, down;
    int a = src, b = leaf;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        up.push_back(a);
        a = parent[a];
      } else {
        down.push_back(b);
        b = parent[b];
      }
    }
    up.push_back(a);
    up.insert(up.end(), down.rbegin(), down.rend());
    for (size_t x = 0; x + 1 < up.size(); ++x) swap_cells(up[x], up[x + 1]);
  }
}

inline bool fixes(const std::vector<int>& cur, const std::vector<int>& tgt, int i) {
  return cur[static_cast<size_t>(i)] == tgt[static_cast<size_t>(i)];
}

// Bring spoke sides to tb, tc using at most two fan sorts. Returns false when
// no suitable pair of pivot columns exists.
inline bool permute_sides(WheelModel& m, const std::vector<int>& tb, const std::vector<int>& tc) {
  int k = m.k();
  auto B = m.side(1), C = m.side(2);
  if (B == tb && C == tc) return true;
  if (k < 4) return false;
  auto ok_at = [&](int j, const std::vector<int>& b, const std::vector<int>& c, const std::vector<int>& tb2,
                   const std::vector<int>& tc2) {
    for (int i : {m.mod(j - 1), m.mod(j)})
      if (!fixes(b, tb2, i) || !fixes(c, tc2, i)) return false;
    return true;
  };
  for (int j = 0; j < k; ++j)
    if (ok_at(j, B, C, tb, tc)) {
      m.side_permute(j, tb, tc);
      return true;
    }
  // mid keeps cur on F(j1) and already matches tgt on F(j2)
  auto middle = [&](const std::vector<int>& cur, const std::vector<int>& tgt, int j1, int j2, std::vector<int>& mid) {
    mid.assign(static_cast<size_t>(k), 0);
    std::vector<char> used(static_cast<size_t>(3 * k + 1), 0), set(static_cast<size_t>(k), 0);
    auto put = [&](int i, int l) {
      if (used[static_cast<size_t>(l)]) return false;
      used[static_cast<size_t>(l)] = 1;
      mid[static_cast<size_t>(i)] = l;
      set[static_cast<size_t>(i)] = 1;
      return true;
    };
    for (int i : {m.mod(j1 - 1), m.mod(j1)})
      if (!put(i, cur[static_cast<size_t>(i)])) return false;
    for (int i : {m.mod(j2 - 1), m.mod(j2)})
      if (!put(i, tgt[static_cast<size_t>(i)])) return false;
    for (int i = 0; i < k; ++i)
      if (!set[static_cast<size_t>(i)] && !used[static_cast<size_t>(tgt[static_cast<size_t>(i)])])
        put(i, tgt[static_cast<size_t>(i)]);
    size_t f = 0;
    for (int i = 0; i < k; ++i)
      if (!set[static_cast<size_t>(i)]) {
        while (used[static_cast<size_t>(cur[f])]) ++f;
        put(i, cur[f]);
      }
    return true;
  };
  for (int j1 = 0; j1 < k; ++j1)
    for (int j2 = 0; j2 < k; ++j2) {
      int d = m.mod(j2 - j1);
      if (d <= 1 || d >= k - 1) continue;
      std::vector<int> mb, mc;
      if (!middle(B, tb, j1, j2, mb) || !middle(C, tc, j1, j2, mc)) continue;
      m.side_permute(j1, mb, mc);
      m.side_permute(j2, tb, tc);
      return true;
    }
  return false;
}

// positions whose class matches stay, the rest are filled in order
inline std::vector<int> arrange_by_class(const std::vector<int>& cur, const std::vector<int>& want_class,
                                         const std::function<int(int)>& cls) {
  size_t n = cur.size();
  std::vector<int> out(n, 0);
  std::vector<std::vector<int>> pool(3);
  for (size_t i = 0; i < n; ++i) {
    if (cls(cur[i]) == want_class[i])
      out[i] = cur[i];
    else
      pool[static_cast<size_t>(cls(cur[i]))].push_back(cur[i]);
  }
  std::vector<size_t> pi(3, 0);
  for (size_t i = 0; i < n; ++i)
    if (!out[i]) {
      auto c = static_cast<size_t>(want_class[i]);
      if (pi[c] >= pool[c].size()) throw Error(ErrorKind::VerificationFailed, "class count mismatch");
      out[i] = pool[c][pi[c]++];
    }
  return out;
}

// Sorts the model to the canonical labelling. Returns false if a spoke
// permutation had no pivot pair, leaving the model in a consistent state.
inline bool staged_sort(WheelModel& m) {
  int k = m.k();
  auto cls = [k](int l) { return l <= k ? 0 : (l <= 2 * k ? 1 : 2); };
  auto isA = [&](int l) { return cls(l) == 0 ? 0 : 1; };

  // spine gets every spine label
  std::vector<int> y;
  for (int i = 0; i < k; ++i)
    if (cls(m.at(0, i)) != 0) y.push_back(i);
  auto B = m.side(1), C = m.side(2);
  size_t xn = static_cast<size_t>(std::count_if(B.begin(), B.end(), [&](int l) { return cls(l) == 0; }));
  std::vector<int> wb(static_cast<size_t>(k), 1), wc(static_cast<size_t>(k), 1);
  for (size_t x = 0; x < y.size(); ++x) (x < xn ? wb : wc)[static_cast<size_t>(y[x])] = 0;
  if (!permute_sides(m, arrange_by_class(B, wb, isA), arrange_by_class(C, wc, isA))) return false;
  for (size_t x = 0; x < y.size(); ++x) m.swap_spine(y[x], x < xn ? 1 : 2, 0);

  // wrong-side spokes change sides through the spine
  B = m.side(1);
  C = m.side(2);
  std::vector<int> cols, want(static_cast<size_t>(k), 2);
  for (int i = 0; i < k; ++i)
    if (cls(B[static_cast<size_t>(i)]) == 2) {
      cols.push_back(i);
      want[static_cast<size_t>(i)] = 1;
    }
  if (!permute_sides(m, B, arrange_by_class(C, want, cls))) return false;
  for (int i : cols) {
    m.swap_spine(i, 1, 0);
    m.swap_spine(i, 2, 0);
    m.swap_spine(i, 1, 0);
  }

  std::vector<int> tb(static_cast<size_t>(k)), tc(static_cast<size_t>(k)), ta(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    ta[static_cast<size_t>(i)] = i + 1;
    tb[static_cast<size_t>(i)] = k + 1 + i;
    tc[static_cast<size_t>(i)] = 2 * k + 1 + i;
  }
  if (!permute_sides(m, tb, tc)) return false;
  // spine labels are sorted on the N side
  if (m.side(0) != ta) {
    for (int i = 0; i < k; ++i) m.swap_spine(i, 1, 0);
    if (!permute_sides(m, ta, tc)) return false;
    for (int i = 0; i < k; ++i) m.swap_spine(i, 1, 0);
  }
  return true;
}

inline constexpr int kStagedMinSpine = 8;

inline void sort_wheel(WheelModel& m) {
  int k = m.k();
  if (k < kStagedMinSpine || !staged_sort(m)) {
    std::vector<int> target(static_cast<size_t>(3 * k));
    for (int c = 0; c < 3 * k; ++c) target[static_cast<size_t>(c)] = c + 1;
    token_swap(m, target);
  }
}

// Raise one vertex to degree v-1, then make its link a fan at the link's
// busiest vertex S and flip (N,S). Returns N.
inline int raise_to_wheel(CombTriangulation& t, FlipSequence& out) {
  int v = t.v(), N = 0;
  for (int u = 1; u < v; ++u)
    if (t.degree(u) > t.degree(N)) N = u;
  auto flip = [&](int a, int b) {
    out.push(t.label_of(a, b));
    t.flip(a, b);
  };
  while (t.degree(N) < v - 1) {
    std::vector<char> link(static_cast<size_t>(v), 0);
    for (int x : t.rotation(N)) link[static_cast<size_t>(x)] = 1;
    link[static_cast<size_t>(N)] = 1;
    bool moved = false;
    const auto r = t.rotation(N);
    for (size_t i = 0; i < r.size() && !moved; ++i) {
      int a = r[i], b = r[(i + 1) % r.size()];
      auto [p, q] = t.apexes(a, b);
      int far = p == N ? q : p;
      if (!t.adjacent(N, far)) {
        flip(a, b);
        moved = true;
      }
    }
    for (int a = 0; a < v && !moved; ++a) {
      if (!link[static_cast<size_t>(a)] || a == N) continue;
      for (int b : t.rotation(a)) {
        if (b <= a || !link[static_cast<size_t>(b)] || b == N || t.adjacent(N, b) == false) continue;
        auto [p, q] = t.apexes(a, b);
        if (p == N || q == N) continue;
        if ((link[static_cast<size_t>(p)] && link[static_cast<size_t>(q)]) || !t.flippable(a, b)) continue;
        flip(a, b);
        moved = true;
        break;
      }
    }
    if (!moved) throw Error(ErrorKind::Unreachable, "could not raise vertex degree");
  }
  int S = -1;
  for (int x : t.rotation(N))
    if (S < 0 || t.degree(x) > t.degree(S)) S = x;
  for (bool again = true; again;) {
    again = false;
    const auto r = t.rotation(S);
    for (size_t i = 0; i < r.size(); ++i) {
      int a = r[i], b = r[(i + 1) % r.size()];
      if (a == N || b == N) continue;
      auto [p, q] = t.apexes(a, b);
      if (p != N && q != N) {
        flip(a, b);
        again = true;
        break;
      }
    }
  }
  flip(N, S);
  return N;
}

// Reads cells off a double-wheel-shaped t with apex N.
inline std::vector<int> read_cells(const CombTriangulation& t, int N) {
  int v = t.v(), k = v - 2, S = -1;
  for (int u = 0; u < v; ++u)
    if (u != N && !t.adjacent(u, N)) S = u;
  const auto& spine = t.rotation(N);
  if (S < 0 || static_cast<int>(spine.size()) != k || t.degree(S) != k)
    throw Error(ErrorKind::VerificationFailed, "not a double wheel");
  std::vector<int> cells(static_cast<size_t>(3 * k));
  for (int i = 0; i < k; ++i) {
    int s = spine[static_cast<size_t>(i)], s1 = spine[static_cast<size_t>((i + 1) % k)];
    cells[static_cast<size_t>(i)] = t.label_of(s, s1);
    cells[static_cast<size_t>(k + i)] = t.label_of(N, s);
    cells[static_cast<size_t>(2 * k + i)] = t.label_of(S, s);
  }
  if (std::count(cells.begin(), cells.end(), 0)) throw Error(ErrorKind::VerificationFailed, "not a double wheel");
  return cells;
}

}  // namespace detail

// Flips taking t to a triangulation labelled-isomorphic to double_wheel(v).
inline FlipSequence comb_canonicalize(const CombTriangulation& t) {
  if (t.v() < 5) throw Error(ErrorKind::TooSmall, "comb canonicalization needs v >= 5");
  CombTriangulation w = t;
  FlipSequence out;
  int N = detail::raise_to_wheel(w, out);
  detail::WheelModel m(w.v() - 2, detail::read_cells(w, N), &w, &out);
  detail::sort_wheel(m);
  if (!labelled_isomorphic(w, double_wheel(t.v())))
    throw Error(ErrorKind::VerificationFailed, "canonical form mismatch");
  return out;
}

inline FlipSequence comb_transform(const CombTriangulation& a, const CombTriangulation& b) {
  if (a.v() != b.v()) throw Error(ErrorKind::SizeMismatch, "vertex counts differ");
  if (labelled_isomorphic(a, b)) return {};
  FlipSequence s = comb_canonicalize(a);
  s.append(comb_canonicalize(b).reversed());
  return s;
}

inline bool verify_comb_sequence(const CombTriangulation& start, const FlipSequence& seq,
                                 const CombTriangulation& target, std::string* why = nullptr) {
  CombTriangulation t = start;
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    try {
      t.flip_label(seq.steps[i]);
    } catch (const Error& e) {
      if (why) *why = "step " + std::to_string(i + 1) + ": " + e.what();
      return false;
    }
  }
  if (!labelled_isomorphic(t, target)) {
    if (why) *why = "final triangulation is not isomorphic to the target";
    return false;
  }
  return true;
}

}  // namespace flipforge
