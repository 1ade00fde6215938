#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "sequence.hpp"

namespace flipforge {

// Pentagon gadget: with X the left and Y the right of two consecutive fan
// edges, flipping X,Y,X,Y,X exchanges them. Index 0 is X, 1 is Y.
inline constexpr std::array<int, 5> kPentagonScript{0, 1, 0, 1, 0};

struct FanBlock {
  int lo = 0, hi = -1;
  std::vector<int> subsequence;  // strictly increasing positions in [lo..hi]
};

inline void append_pentagon(std::vector<int>& out, int left_label, int right_label) {
  for (int i : kPentagonScript) out.push_back(i == 0 ? left_label : right_label);
}

inline FlipSequence pentagon_swap(const std::vector<int>& perm, int pos) {
  if (pos < 0 || pos + 1 >= static_cast<int>(perm.size()))
    throw Error(ErrorKind::OutOfRange, "pentagon_swap needs positions pos and pos+1");
  FlipSequence s;
  append_pentagon(s.steps, perm[pos], perm[pos + 1]);
  return s;
}

namespace detail {

// L holds labels consecutive around the apex; emits flips reversing them
inline void reverse_chain(const std::vector<int>& L, std::vector<int>& out) {
  size_t r = L.size();
  if (r <= 1) return;
  if (r % 2 == 1) out.push_back(L[r / 2]);
  size_t k = r / 2;
  // chain at depth kk is L[0..kk) ++ L[r-kk..r); park its two middle edges
  for (size_t kk = k; kk >= 2; --kk) {
    out.push_back(L[kk - 1]);
    out.push_back(L[r - kk]);
  }
  append_pentagon(out, L[0], L[r - 1]);
  for (size_t kk = 2; kk <= k; ++kk) {
    out.push_back(L[r - kk]);
    out.push_back(L[kk - 1]);
    append_pentagon(out, L[kk - 1], L[r - kk]);
  }
  if (r % 2 == 1) out.push_back(L[r / 2]);
}

inline void check_block(const std::vector<int>& perm, const FanBlock& blk) {
  int n = static_cast<int>(perm.size());
  if (blk.lo < 0 || blk.hi >= n || blk.lo > blk.hi) throw Error(ErrorKind::OutOfRange, "bad block interval");
  for (size_t i = 0; i < blk.subsequence.size(); ++i) {
    int p = blk.subsequence[i];
    if (p < blk.lo || p > blk.hi || (i && p <= blk.subsequence[i - 1]))
      throw Error(ErrorKind::OutOfRange, "subsequence must be strictly increasing inside the block");
  }
}

}  // namespace detail

// Pure label-level generation: appends flips to out without touching a triangulation.
inline void reverse_subsequence_into(const std::vector<int>& perm, const FanBlock& blk, std::vector<int>& out) {
  if (blk.subsequence.size() <= 1) return;
  std::vector<int> parked;
  size_t k = 0;
  for (int p = blk.lo; p <= blk.hi; ++p) {
    if (k < blk.subsequence.size() && blk.subsequence[k] == p) {
      ++k;
      continue;
    }
    out.push_back(perm[p]);
    parked.push_back(perm[p]);
  }
  std::vector<int> chain;
  for (int p : blk.subsequence) chain.push_back(perm[p]);
  detail::reverse_chain(chain, out);
  out.insert(out.end(), parked.rbegin(), parked.rend());
}

inline FlipSequence reverse_subsequence(const std::vector<int>& perm, const FanBlock& blk) {
  detail::check_block(perm, blk);
  FlipSequence s;
  reverse_subsequence_into(perm, blk, s.steps);
  return s;
}

inline void apply_reversal(std::vector<int>& perm, const std::vector<int>& positions) {
  for (size_t i = 0, j = positions.size(); i + 1 < j; ++i, --j) std::swap(perm[positions[i]], perm[positions[j - 1]]);
}

inline int ceil_log2(long long x) {
  int r = 0;
  while ((1LL << r) < x) ++r;
  return r;
}

// Quicksort on the fan: each block reverses its misplaced positions.
inline FlipSequence sort_fan(std::vector<int> perm) {
  FlipSequence s;
  std::vector<std::pair<int, int>> stack;
  if (!perm.empty()) stack.push_back({0, static_cast<int>(perm.size()) - 1});
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int len = hi - lo + 1;
    if (len <= 1) continue;
    int h = len / 2;
    int split = lo + h;  // labels <= split belong to the left half lo..lo+h-1
    FanBlock blk;
    int nl = 0, nr = 0;
    for (int p = lo; p <= hi; ++p) {
      bool left = p < lo + h;
      bool small = perm[p] <= split;
      if (left != small) {
        blk.subsequence.push_back(p);
        (left ? nl : nr)++;
      }
    }
    if (nl != nr) throw Error(ErrorKind::InvalidStart, "labels of block are not a contiguous range");
    if (!blk.subsequence.empty()) {
      blk.lo = blk.subsequence.front();
      blk.hi = blk.subsequence.back();
      reverse_subsequence_into(perm, blk, s.steps);
      apply_reversal(perm, blk.subsequence);
    }
    stack.push_back({lo + h, hi});
    stack.push_back({lo, lo + h - 1});
  }
  return s;
}

inline long long sort_fan_bound(long long n) { return n < 2 ? 0 : 5 * n * (ceil_log2(n) + 1); }

struct SwapPair {
  int i, j;
};

inline void validate_swaps(const std::vector<SwapPair>& pairs, int lo, int hi, ErrorKind kind) {
  for (auto& p : pairs)
    if (!(lo <= p.i && p.i < p.j && p.j <= hi)) throw Error(kind, "pair outside interval");
  for (size_t x = 0; x < pairs.size(); ++x)
    for (size_t y = x + 1; y < pairs.size(); ++y) {
      auto a = pairs[x], b = pairs[y];
      if (a.i > b.i) std::swap(a, b);
      if (a.i == b.i || a.j == b.i || a.j == b.j) throw Error(kind, "pairs share an endpoint");
      if (b.i < a.j && a.j < b.j) throw Error(kind, "pairs cross");
    }
}

inline FlipSequence apply_noncrossing_swaps(const std::vector<int>& perm, const std::vector<SwapPair>& pairs,
                                            int lo, int hi) {
  FlipSequence s;
  if (pairs.empty()) return s;
  if (lo < 0 || hi >= static_cast<int>(perm.size())) throw Error(ErrorKind::OutOfRange, "interval outside fan");
  validate_swaps(pairs, lo, hi, ErrorKind::InvalidSwapSet);
  std::vector<int> partner(perm.size(), -1);
  for (auto& p : pairs) partner[p.i] = p.j, partner[p.j] = p.i;
  std::vector<int> parked;
  std::vector<int> chain;
  for (int p = lo; p <= hi; ++p) {
    if (partner[p] < 0) {
      s.push(perm[p]);
      parked.push_back(perm[p]);
    } else {
      chain.push_back(p);
    }
  }
  // extract innermost pairs: they are adjacent in the chain
  std::vector<std::pair<int, int>> order;
  std::vector<int> st;
  for (int p : chain) {
    if (!st.empty() && partner[st.back()] == p) {
      order.push_back({st.back(), p});
      st.pop_back();
    } else {
      st.push_back(p);
    }
  }
  // the last pair extracted is alone in the chain and never needs parking
  for (size_t x = 0; x + 1 < order.size(); ++x) {
    s.push(perm[order[x].first]);
    s.push(perm[order[x].second]);
  }
  append_pentagon(s.steps, perm[order.back().first], perm[order.back().second]);
  for (size_t x = order.size() - 1; x-- > 0;) {
    s.push(perm[order[x].second]);
    s.push(perm[order[x].first]);
    append_pentagon(s.steps, perm[order[x].first], perm[order[x].second]);
  }
  s.steps.insert(s.steps.end(), parked.rbegin(), parked.rend());
  return s;
}

}  // namespace flipforge
