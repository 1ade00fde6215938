#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "labelsort.hpp"

namespace flipforge {

namespace detail {

inline uint64_t face_key(std::array<int, 3> f) {
  std::sort(f.begin(), f.end());
  return (static_cast<uint64_t>(f[0]) << 42) | (static_cast<uint64_t>(f[1]) << 21) | static_cast<uint64_t>(f[2]);
}

}  // namespace detail

inline bool validate_round(const ConvexTriangulation& t, const std::vector<int>& round, std::string* why = nullptr) {
  std::unordered_set<uint64_t> seen;
  for (int l : round) {
    if (!t.has_label(l)) {
      if (why) *why = "unknown label " + std::to_string(l);
      return false;
    }
    for (auto& f : t.faces_of(t.diagonal_of(l)))
      if (!seen.insert(detail::face_key(f)).second) {
        if (why) *why = "label " + std::to_string(l) + " shares a face with another flip of the round";
        return false;
      }
  }
  return true;
}

inline void apply_round(ConvexTriangulation& t, const std::vector<int>& round) {
  std::string why;
  if (!validate_round(t, round, &why)) throw Error(ErrorKind::InvalidRound, why);
  for (int l : round) t.flip_label(l);
}

// Returns the failing round index or -1.
inline long apply_sim_sequence(ConvexTriangulation& t, const SimFlipSequence& s, std::string* why = nullptr) {
  for (size_t i = 0; i < s.rounds.size(); ++i) {
    std::string w;
    if (!validate_round(t, s.rounds[i], &w)) {
      if (why) *why = "round " + std::to_string(i + 1) + ": " + w;
      return static_cast<long>(i);
    }
    for (int l : s.rounds[i]) t.flip_label(l);
  }
  return -1;
}

inline bool verify_sim_sequence(const ConvexTriangulation& start, const SimFlipSequence& s,
                                const ConvexTriangulation& target, std::string* why = nullptr) {
  if (start.m() != target.m()) {
    if (why) *why = "size mismatch";
    return false;
  }
  ConvexTriangulation t = start;
  if (apply_sim_sequence(t, s, why) >= 0) return false;
  if (t != target) {
    if (why) *why = "final state differs from target";
    return false;
  }
  return true;
}

namespace detail {

struct Candidate {
  int kind;  // 0 promotion, 1 height-reducing rotation, 2 neutral swap
  int neg_gain;
  int depth;
  Diag e;
  uint64_t tri, parent;
  std::vector<uint64_t> block;
};

// One round of the unlabelled canonicalization toward the fan at 0.
// Promotions first, then rotations that shrink the height of the dual tree
// below the edge's parent triangle, then spaced neutral swaps.
inline std::vector<Diag> select_round(const ConvexTriangulation& t) {
  int n = t.n();
  std::vector<int> hl(n + 1, 0);
  auto ds = t.diagonals();
  std::sort(ds.begin(), ds.end(), [](Diag x, Diag y) { return x.second - x.first < y.second - y.first; });
  auto H = [&](int p, int q) { return q - p < 2 ? 0 : hl[t.label_of({p, q})]; };
  for (auto d : ds) {
    int c = t.inner_apex(d);
    hl[t.label_of(d)] = 1 + std::max(H(d.first, c), H(c, d.second));
  }

  struct Item {
    int u, w, d, x;
  };
  std::deque<Item> dq;
  std::vector<Item> order;
  int prev = -1;
  for (int v : t.neighbors(0)) {
    if (prev >= 1 && v - prev >= 2) dq.push_back({prev, v, 1, 0});
    prev = v;
  }
  while (!dq.empty()) {
    Item it = dq.front();
    dq.pop_front();
    order.push_back(it);
    int c = t.inner_apex({it.u, it.w});
    if (c - it.u >= 2) dq.push_back({it.u, c, it.d + 1, it.w});
    if (it.w - c >= 2) dq.push_back({c, it.w, it.d + 1, it.u});
  }

  std::vector<Candidate> cands;
  for (auto& it : order) {
    int u = it.u, w = it.w, x = it.x;
    int c = t.inner_apex({u, w});
    uint64_t tri = face_key({u, c, w});
    if (x == 0) {
      cands.push_back({0, 0, it.d, {u, w}, tri, face_key({0, u, w}), {}});
      continue;
    }
    Diag lifted, pushed, other;
    uint64_t par;
    if (x < u) {
      lifted = {c, w}, pushed = {x, u}, other = {u, c};
      par = face_key({x, u, w});
    } else {
      lifted = {u, c}, pushed = {w, x}, other = {c, w};
      par = face_key({u, w, x});
    }
    int hL = H(lifted.first, lifted.second), hP = H(pushed.first, pushed.second), hO = H(other.first, other.second);
    int old_h = 1 + std::max(hP, 1 + std::max(hL, hO));
    int new_h = 1 + std::max(hL, 1 + std::max(hP, hO));
    int gain = old_h - new_h;
    if (gain > 0) {
      cands.push_back({1, -gain, it.d, {u, w}, tri, par, {}});
    } else if (hO > hL) {
      std::vector<uint64_t> kids;
      for (Diag e2 : {lifted, other})
        if (e2.second - e2.first >= 2) kids.push_back(face_key({e2.first, t.inner_apex(e2), e2.second}));
      cands.push_back({2, 0, it.d, {u, w}, tri, par, kids});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.neg_gain != b.neg_gain) return a.neg_gain < b.neg_gain;
    return a.depth < b.depth;
  });
  std::unordered_set<uint64_t> used;
  std::vector<Diag> sel;
  for (auto& cd : cands) {
    if (used.count(cd.tri) || used.count(cd.parent)) continue;
    if (cd.kind == 2) {
      bool blocked = false;
      for (auto b : cd.block) blocked = blocked || used.count(b);
      if (blocked) continue;
    }
    used.insert(cd.tri);
    used.insert(cd.parent);
    for (auto b : cd.block) used.insert(b);
    sel.push_back(cd.e);
  }
  return sel;
}

}  // namespace detail

// Rounds of simultaneous flips turning t into the fan at 0 (t is updated).
inline SimFlipSequence sim_canonicalize_unlabelled(ConvexTriangulation& t) {
  SimFlipSequence s;
  while (!t.is_fan()) {
    auto sel = detail::select_round(t);
    if (sel.empty()) throw Error(ErrorKind::Unreachable, "no flippable candidate in canonicalization round");
    std::vector<int> round;
    for (auto d : sel) round.push_back(t.label_of(d));
    for (auto d : sel) t.flip(d);
    s.rounds.push_back(std::move(round));
  }
  return s;
}

namespace detail {

// Alternating zig-zag on the local polygon 0..2k+2; q_i is local vertex i+1.
// Index 0 is e_1, then e_{2j} and e_{2j+1} alternate.
inline std::vector<Diag> zigzag(int k) {
  auto q = [](int i) { return i + 1; };
  std::vector<Diag> d{make_diag(q(0), q(2 * k + 1))};
  for (int j = 1; j <= k; ++j) {
    d.push_back(make_diag(q(j), q(2 * k + 2 - j)));
    if (j <= k - 1) d.push_back(make_diag(q(j), q(2 * k + 1 - j)));
  }
  return d;
}

using LocalScript = std::vector<std::vector<Diag>>;

// Rounds on the local polygon 0..2k+2 that reverse the labels of its fan:
// fan -> zig-zag (canonicalization run backwards), flip the even zig-zag
// edges (this yields the mirror image), then the mirrored canonicalization.
inline const LocalScript& chain_reversal_script(int k) {
  static std::map<int, LocalScript> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  int M = 2 * k + 3;
  auto zz = zigzag(k);
  auto w = ConvexTriangulation::from_diagonals(M, zz);
  LocalScript canon, fresh;
  while (!w.is_fan()) {
    auto sel = select_round(w);
    if (sel.empty()) throw Error(ErrorKind::Unreachable, "zig-zag canonicalization stalled");
    std::vector<Diag> nw;
    for (auto d : sel) nw.push_back(w.flip(d));
    canon.push_back(sel);
    fresh.push_back(nw);
  }
  LocalScript sc(fresh.rbegin(), fresh.rend());
  std::vector<Diag> even;
  for (size_t i = 1; i < zz.size(); i += 2) even.push_back(zz[i]);
  sc.push_back(even);
  auto mir = [M](int v) { return v == 0 ? 0 : M - v; };
  for (auto& r : canon) {
    std::vector<Diag> mr;
    for (auto d : r) mr.push_back(make_diag(mir(d.first), mir(d.second)));
    sc.push_back(mr);
  }
  // self-check on the labelled local fan
  std::vector<int> id(2 * k);
  for (int i = 0; i < 2 * k; ++i) id[i] = i + 1;
  auto f = ConvexTriangulation::fan(id);
  for (auto& r : sc) {
    std::vector<int> lab;
    for (auto d : r) lab.push_back(f.label_of(d));
    apply_round(f, lab);
  }
  std::vector<int> rev(id.rbegin(), id.rend());
  if (!f.is_fan() || f.fan_permutation() != rev) throw Error(ErrorKind::VerificationFailed, "chain reversal script is wrong");
  return memo.emplace(k, std::move(sc)).first->second;
}

using Rounds = std::vector<std::vector<int>>;

// Flip the listed fan edges (labels) away from 0 in O(log) rounds: each
// round parks every other edge of each run of consecutive listed edges.
// Only neighbours of 0 inside [vlo, vhi] are examined.
inline Rounds park(ConvexTriangulation& t, const std::vector<int>& labels, int vlo, int vhi) {
  Rounds rounds;
  std::vector<char> want(t.n() + 1, 0);
  size_t left = labels.size();
  for (int l : labels) want[l] = 1;
  while (left > 0) {
    std::vector<int> round;
    int run = 0;
    auto& nb = t.neighbors(0);
    for (auto it = nb.lower_bound(vlo); it != nb.end() && *it <= vhi; ++it) {
      int l = t.label_of({0, *it});
      if (l && want[l]) {
        if (run % 2 == 0) round.push_back(l);
        ++run;
      } else {
        run = 0;
      }
    }
    for (int l : round) {
      t.flip_label(l);
      want[l] = 0;
    }
    left -= round.size();
    rounds.push_back(std::move(round));
  }
  return rounds;
}

inline void replay_rounds(ConvexTriangulation& t, const Rounds& rs, Rounds& out) {
  for (auto& r : rs) {
    for (int l : r) t.flip_label(l);
    out.push_back(r);
  }
}

inline void unpark(ConvexTriangulation& t, const Rounds& parked, Rounds& out) {
  replay_rounds(t, Rounds(parked.rbegin(), parked.rend()), out);
}

// One quicksort level on fan block [lo,hi]: place the median at its final
// position, then reverse the misplaced edges. Returns the pivot position.
inline int sim_level_block(ConvexTriangulation& t, int lo, int hi, Rounds& sc) {
  int v = lo + 1 + (hi - lo) / 2;
  int piv = v - 1;
  int q = t.diagonal_of(v).second - 2;
  auto label_at = [&](int p) { return t.label_of({0, p + 2}); };
  if (q != piv) {
    int a = std::min(q, piv), b = std::max(q, piv);
    std::vector<int> between;
    for (int p = a + 1; p < b; ++p) between.push_back(label_at(p));
    int X = label_at(a), Y = label_at(b);
    auto parked = park(t, between, a + 2, b + 2);
    sc.insert(sc.end(), parked.begin(), parked.end());
    for (int i : kPentagonScript) {
      int l = i == 0 ? X : Y;
      t.flip_label(l);
      sc.push_back({l});
    }
    unpark(t, parked, sc);
  }
  std::vector<int> keep, mis;
  int nl = 0, nr = 0;
  for (int p = lo; p <= hi; ++p) {
    int l = label_at(p);
    bool wrong = (p < piv && l > v) || (p > piv && l < v);
    if (wrong) {
      mis.push_back(p);
      (p < piv ? nl : nr)++;
    } else {
      keep.push_back(l);
    }
  }
  if (nl != nr) throw Error(ErrorKind::InvalidStart, "block labels are not a contiguous range");
  if (mis.empty()) return piv;
  int k = nl;
  auto parked = park(t, keep, lo + 2, hi + 2);
  sc.insert(sc.end(), parked.begin(), parked.end());
  // local polygon: 0 and the neighbours of 0 from just before to just after the chain
  auto& nb = t.neighbors(0);
  auto first = nb.find(mis.front() + 2);
  std::vector<int> loc{0, *std::prev(first)};
  auto it = first;
  for (int i = 0; i < 2 * k; ++i, ++it) loc.push_back(*it);
  loc.push_back(*it);
  for (auto& r : chain_reversal_script(k)) {
    std::vector<int> round;
    for (auto d : r) round.push_back(t.label_of({loc[d.first], loc[d.second]}));
    for (int l : round) t.flip_label(l);
    sc.push_back(std::move(round));
  }
  unpark(t, parked, sc);
  return piv;
}

}  // namespace detail

// Quicksort by simultaneous rounds; blocks of one level occupy disjoint
// sub-polygons, so their rounds are merged index by index.
inline SimFlipSequence sim_sort_fan(const std::vector<int>& perm) {
  SimFlipSequence out;
  int n = static_cast<int>(perm.size());
  ConvexTriangulation t = ConvexTriangulation::fan(perm);
  std::vector<std::pair<int, int>> blocks;
  if (n >= 2) blocks.push_back({0, n - 1});
  while (!blocks.empty()) {
    std::vector<detail::Rounds> scripts;
    std::vector<std::pair<int, int>> next;
    for (auto [lo, hi] : blocks) {
      detail::Rounds sc;
      int piv = detail::sim_level_block(t, lo, hi, sc);
      scripts.push_back(std::move(sc));
      if (piv - 1 > lo) next.push_back({lo, piv - 1});
      if (hi > piv + 1) next.push_back({piv + 1, hi});
    }
    size_t depth = 0;
    for (auto& s : scripts) depth = std::max(depth, s.size());
    for (size_t r = 0; r < depth; ++r) {
      std::vector<int> round;
      for (auto& s : scripts)
        if (r < s.size()) round.insert(round.end(), s[r].begin(), s[r].end());
      out.rounds.push_back(std::move(round));
    }
    blocks.swap(next);
  }
  return out;
}

// Labelled transform a -> b by simultaneous rounds.
inline SimFlipSequence sim_transform_between(const ConvexTriangulation& a, const ConvexTriangulation& b) {
  if (a.m() != b.m()) throw Error(ErrorKind::SizeMismatch, "polygons differ in size");
  SimFlipSequence out;
  if (a == b) return out;
  ConvexTriangulation ta = a, tb = b;
  auto ca = sim_canonicalize_unlabelled(ta);
  auto cb = sim_canonicalize_unlabelled(tb);
  auto ra = ta.fan_permutation(), rb = tb.fan_permutation();
  int n = a.n();
  std::vector<int> rank(n + 1);
  for (int i = 0; i < n; ++i) rank[rb[i]] = i + 1;
  std::vector<int> rel(n);
  for (int i = 0; i < n; ++i) rel[i] = rank[ra[i]];
  auto s = sim_sort_fan(rel);
  out.append(ca);
  for (auto& r : s.rounds) {
    std::vector<int> mapped;
    for (int x : r) mapped.push_back(rb[x - 1]);
    out.rounds.push_back(std::move(mapped));
  }
  out.append(cb.reversed());
  return out;
}

// Red/blue instance: the left half of the fan holds the larger labels.
inline ConvexTriangulation redblue(int n) {
  if (n < 2 || n % 2) throw Error(ErrorKind::BadSize, "red/blue instance needs even n >= 2");
  std::vector<int> p;
  for (int i = n / 2 + 1; i <= n; ++i) p.push_back(i);
  for (int i = 1; i <= n / 2; ++i) p.push_back(i);
  return ConvexTriangulation::fan(p);
}

struct CrossingCertificate {
  int split = 0;
  std::vector<int> counts;
};

inline bool crosses_separator(Diag d, int s) { return d.first >= 1 && d.first <= s && s < d.second; }

inline CrossingCertificate check_crossing_certificate(const ConvexTriangulation& start, const SimFlipSequence& seq) {
  int n = start.n();
  bool ok = start.is_fan() && n >= 2 && n % 2 == 0;
  if (ok) ok = start == redblue(n);
  if (!ok) throw Error(ErrorKind::InvalidStart, "start is not the red/blue fan");
  CrossingCertificate cert;
  cert.split = start.m() / 2;
  ConvexTriangulation t = start;
  std::vector<char> crossed(n + 1, 0);
  int c = 0;
  auto scan = [&](const std::vector<int>& labels) {
    for (int l : labels)
      if (!crossed[l] && crosses_separator(t.diagonal_of(l), cert.split)) crossed[l] = 1, ++c;
  };
  cert.counts.push_back(c);
  for (size_t j = 0; j < seq.rounds.size(); ++j) {
    apply_round(t, seq.rounds[j]);
    int before = c;
    scan(seq.rounds[j]);
    if (c - before - 1 > before)
      throw Error(ErrorKind::CertificateViolation, "round " + std::to_string(j + 1) + " crosses too many edges");
    cert.counts.push_back(c);
  }
  return cert;
}

}  // namespace flipforge
