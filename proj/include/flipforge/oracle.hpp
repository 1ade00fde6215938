#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "comb.hpp"
#include "sequence.hpp"

namespace flipforge::oracle {

enum class Mode { ConvexLabelled, ConvexUnlabelled, ConvexSimLabelled, CombLabelled };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::ConvexLabelled: return "convex-labelled";
    case Mode::ConvexUnlabelled: return "convex-unlabelled";
    case Mode::ConvexSimLabelled: return "convex-sim-labelled";
    case Mode::CombLabelled: return "comb-labelled";
  }
  return "?";
}

struct Budget {
  long long states = 0;   // visited-state cap
  int max_size = 0;       // m for convex modes, v for comb
  bool size_capped = true;
};

// Defaults; FLIPFORGE_ORACLE_BUDGET replaces the state cap and lifts size caps.
inline Budget default_budget(Mode m) {
  Budget b;
  switch (m) {
    case Mode::ConvexLabelled: b = {2'000'000, 9, true}; break;
    case Mode::ConvexUnlabelled: b = {2'000'000, 14, true}; break;
    case Mode::ConvexSimLabelled: b = {2'000'000, 8, true}; break;
    case Mode::CombLabelled: b = {3'000'000, 7, true}; break;
  }
  if (const char* env = std::getenv("FLIPFORGE_ORACLE_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) {
      b.states = v;
      b.size_capped = false;
    }
  }
  return b;
}

inline void check_size(Mode mode, int size, const Budget& b) {
  if (b.size_capped && size > b.max_size)
    throw Error(ErrorKind::BudgetExceeded, std::string(mode_name(mode)) + " limited to size " +
                                               std::to_string(b.max_size));
}

// Compact convex state for m <= 16: diagonal bitset over vertex pairs plus
// labels packed 4 bits each in bitset order.
struct Key {
  uint64_t d0 = 0, d1 = 0, l = 0;
  bool operator==(const Key& o) const { return d0 == o.d0 && d1 == o.d1 && l == o.l; }
  bool operator<(const Key& o) const {
    if (d1 != o.d1) return d1 < o.d1;
    if (d0 != o.d0) return d0 < o.d0;
    return l < o.l;
  }
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    uint64_t h = k.d0 * 0x9e3779b97f4a7c15ULL;
    h ^= (k.d1 + 0x7f4a7c159e3779b9ULL) * 0xbf58476d1ce4e5b9ULL;
    h ^= (k.l + 0x94d049bb133111ebULL) * 0x2545f4914f6cdd1dULL;
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

class Small {
 public:
  Small() = default;
  explicit Small(const ConvexTriangulation& t) : m_(t.m()) {
    if (m_ > 16) throw Error(ErrorKind::BudgetExceeded, "oracle states need m <= 16");
    for (int i = 0; i < m_; ++i) adj_[i] = static_cast<uint16_t>((1u << ((i + 1) % m_)) | (1u << ((i + m_ - 1) % m_)));
    for (auto d : t.diagonals()) set(d.first, d.second, t.label_of(d));
  }

  int m() const { return m_; }
  bool has(int a, int b) const { return adj_[a] >> b & 1; }
  int label(int a, int b) const { return lab_[a * 16 + b]; }
  bool is_diag(int a, int b) const { return b - a >= 2 && !(a == 0 && b == m_ - 1) && has(a, b); }

  std::vector<Diag> diagonals() const {
    std::vector<Diag> out;
    for (int a = 0; a < m_; ++a)
      for (int b = a + 2; b < m_; ++b)
        if (is_diag(a, b)) out.push_back({a, b});
    return out;
  }

  int inner(int a, int b) const {
    uint32_t c = adj_[a] & adj_[b] & (((1u << b) - 1) & ~((2u << a) - 1));
    return 31 - __builtin_clz(c);
  }
  int outer(int a, int b) const {
    uint32_t c = adj_[a] & adj_[b] & ~(((2u << b) - 1) & ~((1u << a) - 1));
    return __builtin_ctz(c);
  }

  Diag flip(int a, int b) {
    int c = inner(a, b), x = outer(a, b);
    int l = lab_[a * 16 + b];
    clear(a, b);
    Diag nd = make_diag(c, x);
    set(nd.first, nd.second, l);
    return nd;
  }

  Key key(bool labelled) const {
    Key k;
    int idx = 0, li = 0;
    for (int a = 0; a < m_; ++a)
      for (int b = a + 2; b < m_; ++b, ++idx) {
        if (!is_diag(a, b)) continue;
        (idx < 64 ? k.d0 : k.d1) |= 1ULL << (idx & 63);
        if (labelled) k.l |= static_cast<uint64_t>(lab_[a * 16 + b]) << (4 * li++);
      }
    return k;
  }

  ConvexTriangulation to_triangulation() const {
    std::vector<Diag> ds = diagonals();
    std::vector<int> ls;
    for (auto d : ds) ls.push_back(label(d.first, d.second));
    return ConvexTriangulation::from_diagonals(m_, ds, ls);
  }

  std::array<std::array<int, 3>, 2> faces(int a, int b) const {
    std::array<int, 3> f1{a, inner(a, b), b}, f2{a, b, outer(a, b)};
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    return {f1, f2};
  }

 private:
  void set(int a, int b, int l) {
    adj_[a] |= static_cast<uint16_t>(1u << b);
    adj_[b] |= static_cast<uint16_t>(1u << a);
    lab_[a * 16 + b] = static_cast<uint8_t>(l);
  }
  void clear(int a, int b) {
    adj_[a] &= static_cast<uint16_t>(~(1u << b));
    adj_[b] &= static_cast<uint16_t>(~(1u << a));
    lab_[a * 16 + b] = 0;
  }

  int m_ = 0;
  std::array<uint16_t, 16> adj_{};
  std::array<uint8_t, 256> lab_{};
};

// A move is a set of labels (singleton outside simultaneous mode); for the
// unlabelled mode the single entry is a pair index a*16+b.
using Move = std::vector<int>;

inline void for_each_move(const Small& s, Mode mode, const std::function<void(const Move&, Small&)>& f) {
  auto ds = s.diagonals();
  if (mode != Mode::ConvexSimLabelled) {
    for (auto d : ds) {
      Small t = s;
      t.flip(d.first, d.second);
      Move mv{mode == Mode::ConvexUnlabelled ? d.first * 16 + d.second : s.label(d.first, d.second)};
      f(mv, t);
    }
    return;
  }
  int n = static_cast<int>(ds.size());
  std::vector<std::array<std::array<int, 3>, 2>> fc(n);
  for (int i = 0; i < n; ++i) fc[i] = s.faces(ds[i].first, ds[i].second);
  std::vector<uint32_t> clash(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        for (auto& x : fc[i])
          for (auto& y : fc[j])
            if (x == y) clash[i] |= 1u << j;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if ((mask >> i & 1) && (clash[i] & mask)) ok = false;
    if (!ok) continue;
    Small t = s;
    Move mv;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) mv.push_back(s.label(ds[i].first, ds[i].second));
    std::sort(mv.begin(), mv.end());
    for (int l : mv) {
      for (auto d : t.diagonals())
        if (t.label(d.first, d.second) == l) {
          t.flip(d.first, d.second);
          break;
        }
    }
    f(mv, t);
  }
}

inline bool labelled_mode(Mode m) { return m != Mode::ConvexUnlabelled; }

// Bidirectional BFS distance (rounds in simultaneous mode).
inline int exact_distance(const ConvexTriangulation& a, const ConvexTriangulation& b, Mode mode,
                          Budget budget) {
  if (a.m() != b.m()) throw Error(ErrorKind::SizeMismatch, "polygons differ in size");
  check_size(mode, a.m(), budget);
  bool lab = labelled_mode(mode);
  Small sa(a), sb(b);
  Key ka = sa.key(lab), kb = sb.key(lab);
  if (ka == kb) return 0;
  std::unordered_map<Key, int, KeyHash> da{{ka, 0}}, db{{kb, 0}};
  std::vector<Small> fa{sa}, fb{sb};
  int la = 0, lb = 0;
  while (!fa.empty() && !fb.empty()) {
    bool side_a = fa.size() <= fb.size();
    auto& front = side_a ? fa : fb;
    auto& mine = side_a ? da : db;
    auto& other = side_a ? db : da;
    int& lvl = side_a ? la : lb;
    std::vector<Small> next;
    int best = -1;
    for (auto& s : front) {
      for_each_move(s, mode, [&](const Move&, Small& t) {
        Key k = t.key(lab);
        if (mine.count(k)) return;
        auto it = other.find(k);
        if (it != other.end()) {
          int d = lvl + 1 + it->second;
          if (best < 0 || d < best) best = d;
        }
        mine.emplace(k, lvl + 1);
        next.push_back(t);
      });
      if (static_cast<long long>(da.size() + db.size()) > budget.states)
        throw Error(ErrorKind::BudgetExceeded, "state budget exhausted");
    }
    if (best >= 0) return best;
    ++lvl;
    front.swap(next);
  }
  throw Error(ErrorKind::Unreachable, "target not reachable");
}

inline int exact_distance(const ConvexTriangulation& a, const ConvexTriangulation& b, Mode mode) {
  return exact_distance(a, b, mode, default_budget(mode));
}

// Explicit flip graph reachable from t (the whole graph: flip graphs are connected).
struct FlipGraph {
  std::vector<Key> keys;
  std::vector<Small> states;
  std::vector<int> offset;  // CSR
  std::vector<int> adj;
};

inline FlipGraph build_graph(const ConvexTriangulation& t, Mode mode, Budget budget) {
  check_size(mode, t.m(), budget);
  bool lab = labelled_mode(mode);
  FlipGraph g;
  std::unordered_map<Key, int, KeyHash> id;
  Small s0(t);
  id.emplace(s0.key(lab), 0);
  g.keys.push_back(s0.key(lab));
  g.states.push_back(s0);
  g.offset.push_back(0);
  for (size_t i = 0; i < g.states.size(); ++i) {
    Small cur = g.states[i];
    for_each_move(cur, mode, [&](const Move&, Small& nx) {
      Key k = nx.key(lab);
      auto [it, fresh] = id.emplace(k, static_cast<int>(g.states.size()));
      if (fresh) {
        if (static_cast<long long>(g.states.size()) >= budget.states)
          throw Error(ErrorKind::BudgetExceeded, "state budget exhausted");
        g.keys.push_back(k);
        g.states.push_back(nx);
      }
      g.adj.push_back(it->second);
    });
    g.offset.push_back(static_cast<int>(g.adj.size()));
  }
  return g;
}

inline std::vector<int> bfs_levels(const FlipGraph& g, int src) {
  std::vector<int> d(g.states.size(), -1);
  std::vector<int> q{src};
  d[src] = 0;
  for (size_t h = 0; h < q.size(); ++h) {
    int u = q[h];
    for (int e = g.offset[u]; e < g.offset[u + 1]; ++e)
      if (d[g.adj[e]] < 0) {
        d[g.adj[e]] = d[u] + 1;
        q.push_back(g.adj[e]);
      }
  }
  return d;
}

inline long long state_count(Mode mode, int m) {
  return static_cast<long long>(build_graph(ConvexTriangulation::identity_fan(m), mode, default_budget(mode)).states.size());
}

inline long long catalan(int k) {
  long long c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

inline long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Unlabelled: bounding-diameter sweep (eccentricity bounds, exact result).
// Labelled: relabelling is an automorphism, so every state has the
// eccentricity of its shape carrying the sorted labelling.
inline int diameter(Mode mode, int m, Budget budget) {
  if (m <= 3) return 0;
  FlipGraph g = build_graph(ConvexTriangulation::identity_fan(m), mode, budget);
  int N = static_cast<int>(g.states.size());
  if (labelled_mode(mode)) {
    int best = 0;
    for (int i = 0; i < N; ++i) {
      // sorted labelling: labels increase along the diagonal order
      auto ds = g.states[i].diagonals();
      bool sorted = true;
      for (size_t j = 0; j < ds.size() && sorted; ++j)
        if (g.states[i].label(ds[j].first, ds[j].second) != static_cast<int>(j) + 1) sorted = false;
      if (!sorted) continue;
      auto d = bfs_levels(g, i);
      best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
  }
  // dihedral images: d(sx, sy) = d(x, y) for every rotation/reflection s
  std::unordered_map<Key, int, KeyHash> index;
  for (int i = 0; i < N; ++i) index.emplace(g.keys[i], i);
  std::vector<std::vector<int>> sym;
  for (int r = 0; r < m; ++r)
    for (int refl = 0; refl < 2; ++refl) {
      if (r == 0 && refl == 0) continue;
      std::vector<int> img(N);
      for (int i = 0; i < N; ++i) {
        std::vector<Diag> ds;
        for (auto d : g.states[i].diagonals()) {
          int a = (d.first + r) % m, b = (d.second + r) % m;
          if (refl) a = (m - a) % m, b = (m - b) % m;
          ds.push_back(make_diag(a, b));
        }
        img[i] = index.at(Small(ConvexTriangulation::from_diagonals(m, ds)).key(false));
      }
      sym.push_back(std::move(img));
    }
  std::vector<int> lo(N, 0), hi(N, 1 << 29);
  std::vector<char> alive(N, 1);
  int dlo = 0, dhi = 1 << 29, remaining = N;
  bool pick_high = true;
  while (dlo < dhi && remaining > 0) {
    int v = -1;
    for (int i = 0; i < N; ++i) {
      if (!alive[i]) continue;
      if (v < 0 || (pick_high ? (hi[i] > hi[v] || (hi[i] == hi[v] && lo[i] < lo[v]))
                              : (lo[i] < lo[v] || (lo[i] == lo[v] && hi[i] > hi[v]))))
        v = i;
    }
    pick_high = !pick_high;
    auto d = bfs_levels(g, v);
    int ecc = *std::max_element(d.begin(), d.end());
    dlo = std::max(dlo, ecc);
    dhi = 0;
    for (int i = 0; i < N; ++i) {
      lo[i] = std::max({lo[i], d[i], ecc - d[i]});
      hi[i] = std::min(hi[i], ecc + d[i]);
    }
    for (auto& img : sym)
      for (int i = 0; i < N; ++i) {
        int j = img[i];
        lo[j] = std::max({lo[j], d[i], ecc - d[i]});
        hi[j] = std::min(hi[j], ecc + d[i]);
      }
    remaining = 0;
    for (int i = 0; i < N; ++i) {
      if (alive[i] && (hi[i] <= dlo || lo[i] == hi[i])) alive[i] = 0;
      if (alive[i]) {
        ++remaining;
        dhi = std::max(dhi, hi[i]);
      }
    }
    dhi = std::max(dhi, dlo);
  }
  return dlo;
}

inline int diameter(Mode mode, int m) { return diameter(mode, m, default_budget(mode)); }

// Shortest script from a to b; ties broken by the lexicographically smallest move.
inline std::vector<Move> discover_gadget(const ConvexTriangulation& a, const ConvexTriangulation& b, Mode mode,
                                         Budget budget) {
  FlipGraph g = build_graph(a, mode, budget);
  bool lab = labelled_mode(mode);
  Key kb = Small(b).key(lab);
  int tgt = -1;
  for (size_t i = 0; i < g.keys.size(); ++i)
    if (g.keys[i] == kb) tgt = static_cast<int>(i);
  if (tgt < 0) throw Error(ErrorKind::Unreachable, "gadget target not reachable");
  auto dt = bfs_levels(g, tgt);
  std::vector<Move> script;
  std::unordered_map<Key, int, KeyHash> id;
  for (size_t i = 0; i < g.keys.size(); ++i) id.emplace(g.keys[i], static_cast<int>(i));
  int cur = 0;
  while (cur != tgt) {
    Move best;
    int nxt = -1;
    for_each_move(g.states[cur], mode, [&](const Move& mv, Small& t) {
      int j = id.at(t.key(lab));
      if (dt[j] == dt[cur] - 1 && (nxt < 0 || mv < best)) {
        best = mv;
        nxt = j;
      }
    });
    script.push_back(best);
    cur = nxt;
  }
  return script;
}

struct CodeHash {
  size_t operator()(const std::vector<int>& c) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : c) h = (h ^ static_cast<uint64_t>(x)) * 0x100000001b3ULL;
    return static_cast<size_t>(h);
  }
};

// Bidirectional BFS on comb triangulations up to labelled isomorphism.
inline int comb_exact_distance(const CombTriangulation& a, const CombTriangulation& b, Budget budget) {
  if (a.v() != b.v()) throw Error(ErrorKind::SizeMismatch, "vertex counts differ");
  check_size(Mode::CombLabelled, a.v(), budget);
  auto ka = canonical_code(a), kb = canonical_code(b);
  if (ka == kb) return 0;
  std::unordered_map<std::vector<int>, int, CodeHash> da{{ka, 0}}, db{{kb, 0}};
  std::vector<CombTriangulation> fa{a}, fb{b};
  int la = 0, lb = 0;
  while (!fa.empty() && !fb.empty()) {
    bool side_a = fa.size() <= fb.size();
    auto& front = side_a ? fa : fb;
    auto& mine = side_a ? da : db;
    auto& other = side_a ? db : da;
    int& lvl = side_a ? la : lb;
    std::vector<CombTriangulation> next;
    int best = -1;
    for (auto& s : front) {
      for (int l = 1; l <= s.edge_count(); ++l) {
        Diag e = s.edge_of(l);
        if (!s.flippable(e.first, e.second)) continue;
        CombTriangulation t = s;
        t.flip(e.first, e.second);
        auto k = canonical_code(t);
        if (mine.count(k)) continue;
        auto it = other.find(k);
        if (it != other.end()) {
          int d = lvl + 1 + it->second;
          if (best < 0 || d < best) best = d;
        }
        mine.emplace(std::move(k), lvl + 1);
        next.push_back(std::move(t));
      }
      if (static_cast<long long>(da.size() + db.size()) > budget.states)
        throw Error(ErrorKind::BudgetExceeded, "state budget exhausted");
    }
    if (best >= 0) return best;
    ++lvl;
    front.swap(next);
  }
  throw Error(ErrorKind::Unreachable, "target not reachable");
}

inline int comb_exact_distance(const CombTriangulation& a, const CombTriangulation& b) {
  return comb_exact_distance(a, b, default_budget(Mode::CombLabelled));
}

}  // namespace flipforge::oracle
