#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "convex.hpp"

namespace flipforge {

// Steps are labels in labelled mode, diagonals in unlabelled mode.
struct FlipSequence {
  bool labelled = true;
  std::vector<int> steps;
  std::vector<Diag> diag_steps;

  size_t cost() const { return labelled ? steps.size() : diag_steps.size(); }
  bool empty() const { return cost() == 0; }

  void push(int label) { steps.push_back(label); }
  void append(const FlipSequence& o) { steps.insert(steps.end(), o.steps.begin(), o.steps.end()); }
  void append(const std::vector<int>& o) { steps.insert(steps.end(), o.begin(), o.end()); }

  // flipping a label is an involution, so the inverse just reverses the order
  FlipSequence reversed() const {
    FlipSequence r = *this;
    std::reverse(r.steps.begin(), r.steps.end());
    return r;
  }
};

// One simultaneous round per entry; each round is a set of labels.
struct SimFlipSequence {
  std::vector<std::vector<int>> rounds;

  size_t cost() const { return rounds.size(); }
  size_t flips() const {
    size_t s = 0;
    for (auto& r : rounds) s += r.size();
    return s;
  }
  SimFlipSequence reversed() const {
    SimFlipSequence r = *this;
    std::reverse(r.rounds.begin(), r.rounds.end());
    return r;
  }
  void append(const SimFlipSequence& o) { rounds.insert(rounds.end(), o.rounds.begin(), o.rounds.end()); }
};

// Applies seq to t in place. Returns the index of the first failing step, or -1.
inline long apply_sequence(ConvexTriangulation& t, const FlipSequence& seq, std::string* why = nullptr) {
  for (size_t i = 0; i < seq.cost(); ++i) {
    if (seq.labelled) {
      int l = seq.steps[i];
      if (!t.has_label(l)) {
        if (why) *why = "step " + std::to_string(i + 1) + ": unknown label " + std::to_string(l);
        return static_cast<long>(i);
      }
      t.flip_label(l);
    } else {
      Diag d = make_diag(seq.diag_steps[i].first, seq.diag_steps[i].second);
      if (!t.is_diagonal(d)) {
        if (why)
          *why = "step " + std::to_string(i + 1) + ": (" + std::to_string(d.first) + "," +
                 std::to_string(d.second) + ") is not a diagonal";
        return static_cast<long>(i);
      }
      t.flip(d);
    }
  }
  return -1;
}

inline ConvexTriangulation replay(ConvexTriangulation t, const FlipSequence& seq) {
  std::string why;
  if (apply_sequence(t, seq, &why) >= 0) throw Error(ErrorKind::VerificationFailed, why);
  return t;
}

inline bool verify_sequence(const ConvexTriangulation& start, const FlipSequence& seq,
                            const ConvexTriangulation& target, std::string* why = nullptr) {
  if (start.m() != target.m()) {
    if (why) *why = "size mismatch";
    return false;
  }
  ConvexTriangulation t = start;
  if (apply_sequence(t, seq, why) >= 0) return false;
  if (t != target) {
    if (why) *why = "final state differs from target";
    return false;
  }
  return true;
}

// Convert an unlabelled script into the labels it flips, starting from t.
inline FlipSequence to_labelled(ConvexTriangulation t, const FlipSequence& seq) {
  if (seq.labelled) return seq;
  FlipSequence out;
  for (auto d : seq.diag_steps) {
    out.push(t.label_of(d));
    t.flip(d);
  }
  return out;
}

inline FlipSequence to_unlabelled(ConvexTriangulation t, const FlipSequence& seq) {
  if (!seq.labelled) return seq;
  FlipSequence out;
  out.labelled = false;
  for (int l : seq.steps) {
    out.diag_steps.push_back(t.diagonal_of(l));
    t.flip_label(l);
  }
  return out;
}

// Greedy apex-degree raising: while 0 has consecutive neighbours a<b with
// b-a >= 2, flip (a,b). Every flip adds one neighbour to vertex 0.
inline FlipSequence canonicalize_unlabelled(ConvexTriangulation& t) {
  FlipSequence seq;
  std::vector<Diag> work;
  int prev = -1;
  for (int v : t.neighbors(0)) {
    if (prev >= 1 && v - prev >= 2) work.push_back({prev, v});
    prev = v;
  }
  while (!work.empty()) {
    Diag d = work.back();
    work.pop_back();
    int c = t.inner_apex(d);
    seq.push(t.label_of(d));
    t.flip(d);
    if (c - d.first >= 2) work.push_back({d.first, c});
    if (d.second - c >= 2) work.push_back({c, d.second});
  }
  return seq;
}

}  // namespace flipforge
