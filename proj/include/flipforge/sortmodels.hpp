#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "labelsort.hpp"

namespace flipforge {

// Positions are 1-based throughout this header.
using Permutation = std::vector<int>;

struct LedgerEntry {
  std::string kind;
  long long span;
};

struct CostLedger {
  std::vector<LedgerEntry> ops;
  long long total = 0;

  void charge(std::string kind, long long span) {
    ops.push_back({std::move(kind), span});
    total += span;
  }
  void append(const CostLedger& o) {
    for (auto& e : o.ops) charge(e.kind, e.span);
  }
  std::string to_csv() const {
    std::ostringstream os;
    os << "kind,span,cumulative\n";
    long long c = 0;
    for (auto& e : ops) {
      c += e.span;
      os << e.kind << ',' << e.span << ',' << c << '\n';
    }
    return os.str();
  }
};

struct NoncontiguousReversal {
  int i, j;                   // interval
  std::vector<int> positions;  // strictly increasing, inside [i..j]
};

struct SwapSet {
  int i, j;
  std::vector<SwapPair> pairs;
};

inline bool is_permutation_of_1n(const Permutation& p) {
  std::vector<char> seen(p.size() + 1, 0);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Permutation apply_contiguous_reversal(Permutation p, int i, int j, CostLedger* ledger = nullptr) {
  int n = static_cast<int>(p.size());
  if (!(1 <= i && i < j && j <= n)) throw Error(ErrorKind::OutOfRange, "need 1 <= i < j <= n");
  std::reverse(p.begin() + (i - 1), p.begin() + j);
  if (ledger) ledger->charge("contiguous", j - i);
  return p;
}

inline Permutation apply_noncontiguous_reversal(Permutation p, const NoncontiguousReversal& r,
                                                CostLedger* ledger = nullptr) {
  int n = static_cast<int>(p.size());
  if (!(1 <= r.i && r.i <= r.j && r.j <= n)) throw Error(ErrorKind::OutOfRange, "interval outside permutation");
  for (size_t k = 0; k < r.positions.size(); ++k) {
    int q = r.positions[k];
    if (q < r.i || q > r.j || (k && q <= r.positions[k - 1]))
      throw Error(ErrorKind::OutOfRange, "subsequence must be strictly increasing inside the interval");
  }
  for (size_t a = 0, b = r.positions.size(); a + 1 < b; ++a, --b)
    std::swap(p[r.positions[a] - 1], p[r.positions[b - 1] - 1]);
  if (ledger) ledger->charge("noncontiguous", r.j - r.i);
  return p;
}

inline void validate_swap_set(const SwapSet& s, int n) {
  if (!(1 <= s.i && s.i <= s.j && s.j <= n)) throw Error(ErrorKind::OutOfRange, "interval outside permutation");
  validate_swaps(s.pairs, s.i, s.j, ErrorKind::CrossingPairs);
}

inline Permutation apply_swap_set(Permutation p, const SwapSet& s, CostLedger* ledger = nullptr) {
  validate_swap_set(s, static_cast<int>(p.size()));
  for (auto& pr : s.pairs) std::swap(p[pr.i - 1], p[pr.j - 1]);
  if (ledger) ledger->charge("swaps", s.j - s.i);
  return p;
}

// containment translations, cost-preserving
inline NoncontiguousReversal contiguous_as_noncontiguous(int i, int j) {
  NoncontiguousReversal r{i, j, {}};
  for (int q = i; q <= j; ++q) r.positions.push_back(q);
  return r;
}

inline SwapSet noncontiguous_as_swaps(const NoncontiguousReversal& r) {
  SwapSet s{r.i, r.j, {}};
  for (size_t a = 0, b = r.positions.size(); a + 1 < b; ++a, --b)
    s.pairs.push_back({r.positions[a], r.positions[b - 1]});
  return s;
}

// Quicksort in the non-contiguous reversal model; empty reversals are skipped.
inline Permutation quicksort_noncontiguous(Permutation p, CostLedger& ledger) {
  if (!is_permutation_of_1n(p)) throw Error(ErrorKind::InvalidStart, "not a permutation of 1..n");
  std::vector<std::pair<int, int>> st;
  if (!p.empty()) st.push_back({1, static_cast<int>(p.size())});
  while (!st.empty()) {
    auto [lo, hi] = st.back();
    st.pop_back();
    int len = hi - lo + 1;
    if (len <= 1) continue;
    int h = len / 2;
    int split = lo - 1 + h;
    NoncontiguousReversal r{0, 0, {}};
    for (int q = lo; q <= hi; ++q)
      if ((q < lo + h) != (p[q - 1] <= split)) r.positions.push_back(q);
    if (!r.positions.empty()) {
      r.i = r.positions.front();
      r.j = r.positions.back();
      p = apply_noncontiguous_reversal(std::move(p), r, &ledger);
    }
    st.push_back({lo + h, hi});
    st.push_back({lo, lo + h - 1});
  }
  return p;
}

inline long long quicksort_bound(long long n) { return n < 2 ? 0 : n * (ceil_log2(n) + 1); }

// flips used to realise s on the identity fan
inline long long flip_cost_of_swap_set(const SwapSet& s, int n) {
  validate_swap_set(s, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<SwapPair> zero;
  for (auto& pr : s.pairs) zero.push_back({pr.i - 1, pr.j - 1});
  auto seq = apply_noncrossing_swaps(perm, zero, s.i - 1, s.j - 1);
  long long c = static_cast<long long>(seq.cost());
  if (c > 9LL * (s.j - s.i + 1)) throw Error(ErrorKind::VerificationFailed, "simulation constant exceeded");
  return c;
}

}  // namespace flipforge
