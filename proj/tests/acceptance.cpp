// One PASS/FAIL line per acceptance criterion, with the measured numbers.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "flipforge/approx.hpp"
#include "flipforge/comb.hpp"
#include "flipforge/config.hpp"
#include "flipforge/oracle.hpp"
#include "flipforge/parallel.hpp"
#include "flipforge/random.hpp"
#include "flipforge/sortmodels.hpp"
#include "flipforge/transform.hpp"

using namespace flipforge;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("criterion %d: %s  %s  [%s]\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void parallel_for(size_t count, F&& f) {
  std::atomic<size_t> next{0};
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < count;) f(i);
    });
  for (auto& t : pool) t.join();
}

struct Tally {
  std::mutex mu;
  long long runs = 0, bad = 0;
  double worst = 0;  // max cost / bound
  std::string first;
  void add(bool ok, double ratio, const std::string& why) {
    std::lock_guard<std::mutex> g(mu);
    ++runs;
    worst = std::max(worst, ratio);
    if (!ok) {
      ++bad;
      if (first.empty()) first = why;
    }
  }
  std::string str(bool ratio = true) const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%lld runs, %lld bad", runs, bad);
    std::string s = buf;
    if (ratio) {
      std::snprintf(buf, sizeof buf, ", max cost/bound %.3f", worst);
      s += buf;
    }
    return first.empty() ? s : s + ", first: " + first;
  }
};

std::string fmt(const char* f, double a, double b = 0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// criteria 1, 2, 9 share runs
Tally seq_valid, approx_valid, sim_valid, comb_valid, seq_bound, comb_bound;

void run_cell(int n, uint64_t seed, bool with_comb) {
  Rng rng(seed * 100003 + static_cast<uint64_t>(n));
  std::string why;
  try {
    auto a = random_convex(n + 3, rng), b = random_convex(n + 3, rng);
    auto s = transform_between(a, b);
    seq_valid.add(verify_sequence(a, s, b, &why), 0, "transform n=" + std::to_string(n) + ": " + why);
    double r = static_cast<double>(s.cost()) / static_cast<double>(transform_bound(n));
    seq_bound.add(r <= 1.0, r, "transform n=" + std::to_string(n));
    auto ap = approx_transform(a, b);
    approx_valid.add(verify_sequence(a, ap.seq, b, &why), 0, "approx n=" + std::to_string(n) + ": " + why);
    auto p = random_permutation(n, rng);
    auto sim = sim_sort_fan(p);
    sim_valid.add(verify_sim_sequence(ConvexTriangulation::fan(p), sim, ConvexTriangulation::identity_fan(n + 3), &why),
                  0, "sim n=" + std::to_string(n) + ": " + why);
  } catch (const std::exception& e) {
    seq_valid.add(false, 0, e.what());
  }
  if (!with_comb) return;
  int v = n + 3;
  try {
    auto c = random_comb(v, rng);
    auto s = comb_canonicalize(c);
    comb_valid.add(verify_comb_sequence(c, s, double_wheel(v), &why), 0, "comb v=" + std::to_string(v) + ": " + why);
    double r = static_cast<double>(s.cost()) / (kCombConstant * v * std::log2(v));
    comb_bound.add(r <= 1.0, r, "comb v=" + std::to_string(v));
  } catch (const std::exception& e) {
    comb_valid.add(false, 0, std::string("comb: ") + e.what());
  }
}

void criteria_1_2_9() {
  std::vector<std::pair<int, uint64_t>> cells;
  for (int n = 2; n <= 64; ++n)
    for (uint64_t s = 1; s <= 200; ++s) cells.emplace_back(n, s);
  parallel_for(cells.size(), [&](size_t i) { run_cell(cells[i].first, cells[i].second, cells[i].first + 3 <= 64); });
  std::vector<std::pair<int, uint64_t>> spot;
  for (int n : {128, 512, 4096})
    for (uint64_t s = 1; s <= 3; ++s) spot.emplace_back(n, s);
  for (int e = 4; e <= 12; ++e)
    for (uint64_t s = 11; s <= 13; ++s) spot.emplace_back(1 << e, s);
  parallel_for(spot.size(), [&](size_t i) { run_cell(spot[i].first, spot[i].second, true); });

  bool ok1 = !seq_valid.bad && !approx_valid.bad && !sim_valid.bad && !comb_valid.bad;
  report(1, ok1, "validity suite",
         "sequential " + seq_valid.str(false) + "; approx " + approx_valid.str(false) + "; simultaneous " +
             sim_valid.str(false) + "; comb " + comb_valid.str(false));
  report(2, !seq_bound.bad, "transform_between <= 2n + 5n(ceil(log2 n)+1)", seq_bound.str());
  report(9, !comb_valid.bad && !comb_bound.bad, "comb_canonicalize reaches the double wheel, flips <= C v log2 v",
         "C = " + fmt("%.0f", kCombConstant) + ", " + comb_bound.str());
}

void criterion_3() {
  Rng rng(3);
  long long bad = 0, worst_chain = 0;
  double worst = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    int n = std::uniform_int_distribution<int>(2, 1024)(rng);
    auto perm = random_permutation(n, rng);
    int lo = std::uniform_int_distribution<int>(0, n - 2)(rng);
    int hi = std::uniform_int_distribution<int>(lo + 1, std::min(n - 1, lo + 200))(rng);
    FanBlock blk{lo, hi, {}};
    std::bernoulli_distribution pick(std::uniform_real_distribution<double>(0.1, 1.0)(rng));
    for (int q = lo; q <= hi; ++q)
      if (pick(rng)) blk.subsequence.push_back(q);
    auto seq = reverse_subsequence(perm, blk);
    long long r = static_cast<long long>(blk.subsequence.size());
    long long span = hi - lo + 1, skipped = span - r;
    long long chain = static_cast<long long>(seq.cost()) - 2 * skipped;
    auto want = perm;
    apply_reversal(want, blk.subsequence);
    bool ok = verify_sequence(ConvexTriangulation::fan(perm), seq, ConvexTriangulation::fan(want)) &&
              chain <= 5 * r && static_cast<long long>(seq.cost()) <= 5 * span;
    if (!ok) ++bad;
    if (r > 1) worst = std::max(worst, static_cast<double>(chain) / static_cast<double>(5 * r));
    worst_chain = std::max(worst_chain, chain);
  }
  report(3, bad == 0, "reverse_subsequence <= 5|S| (plus 2 per skipped edge) on 10000 blocks",
         std::to_string(bad) + " bad, max chain flips/(5|S|) " + fmt("%.3f", worst));
}

void criterion_4() {
  auto x = ConvexTriangulation::fan({2, 1}), y = ConvexTriangulation::fan({1, 2});
  auto s = pentagon_swap({2, 1}, 0);
  int d = oracle::exact_distance(x, y, oracle::Mode::ConvexLabelled);
  bool ok = kPentagonScript.size() == 5 && s.cost() == 5 && verify_sequence(x, s, y) && d <= 5;
  report(4, ok, "pentagon gadget has 5 flips and exact distance <= 5", "exact distance " + std::to_string(d));
}

void criterion_5() {
  long long pairs = 0, bad = 0;
  double worst = 0;
  auto check = [&](const oracle::FlipGraph& g, int i, int j, const std::vector<int>& d) {
    auto a = g.states[i].to_triangulation(), b = g.states[j].to_triangulation();
    auto r = approx_transform(a, b);
    long long n = a.n(), c = static_cast<long long>(r.seq.cost());
    long long cap = (5 * ceil_log2(n) + 7) * std::max<long long>(r.lower_bound, 1);
    ++pairs;
    if (!(verify_sequence(a, r.seq, b) && r.lower_bound <= d[j] && d[j] <= c && c <= cap)) ++bad;
    if (d[j] > 0) worst = std::max(worst, static_cast<double>(c) / d[j]);
  };
  for (int m : {5, 6}) {
    auto g = oracle::build_graph(ConvexTriangulation::identity_fan(m), oracle::Mode::ConvexLabelled,
                                 oracle::default_budget(oracle::Mode::ConvexLabelled));
    int N = static_cast<int>(g.states.size());
    for (int i = 0; i < N; ++i) {
      auto d = oracle::bfs_levels(g, i);
      for (int j = 0; j < N; ++j) check(g, i, j, d);
    }
  }
  auto g = oracle::build_graph(ConvexTriangulation::identity_fan(7), oracle::Mode::ConvexLabelled,
                               oracle::default_budget(oracle::Mode::ConvexLabelled));
  Rng rng(5);
  int N = static_cast<int>(g.states.size());
  for (int rep = 0; rep < 1000; ++rep) {
    int i = std::uniform_int_distribution<int>(0, N - 1)(rng), j = std::uniform_int_distribution<int>(0, N - 1)(rng);
    check(g, i, j, oracle::bfs_levels(g, i));
  }
  report(5, bad == 0, "lower <= exact <= approx <= (5 ceil(log2 n)+7) max(lower,1) at m = 5, 6, 7",
         std::to_string(pairs) + " pairs, " + std::to_string(bad) + " bad, max approx/exact " + fmt("%.2f", worst));
}

void criterion_6() {
  long long bad = 0;
  double worst_canon = 0, worst_sort = 0;
  std::string first;
  Rng rng(6);
  for (int e = 1; e <= 12; ++e) {
    int n = 1 << e;
    for (int rep = 0; rep < 3; ++rep) {
      auto t = random_convex(n + 3, rng);
      auto seq = sim_canonicalize_unlabelled(t);
      double r = static_cast<double>(seq.cost()) / sim_canonicalize_bound(n);
      worst_canon = std::max(worst_canon, r);
      if (r > 1 || !t.is_fan()) ++bad, first = first.empty() ? "canonicalize n=" + std::to_string(n) : first;
      auto p = random_permutation(n, rng);
      auto s = sim_sort_fan(p);
      double q = static_cast<double>(s.cost()) / static_cast<double>(sim_sort_bound(n));
      worst_sort = std::max(worst_sort, q);
      if (q > 1) ++bad, first = first.empty() ? "sort n=" + std::to_string(n) : first;
    }
  }
  for (int n = 2; n <= 4096; n += (n < 64 ? 2 : n)) {
    auto start = redblue(n);
    auto s = sim_sort_fan(start.fan_permutation());
    try {
      auto cert = check_crossing_certificate(start, s);
      if (cert.counts.back() != n || static_cast<long long>(s.cost()) < ceil_log2(n + 1) - 1) ++bad;
    } catch (const std::exception& ex) {
      ++bad;
      if (first.empty()) first = ex.what();
    }
    double q = static_cast<double>(s.cost()) / static_cast<double>(sim_sort_bound(n));
    worst_sort = std::max(worst_sort, q);
    if (q > 1) ++bad;
  }
  report(6, bad == 0, "simultaneous bounds and red/blue crossing certificates",
         "C3,C4,C5 = " + std::to_string(kSimC3) + "," + std::to_string(kSimC4) + "," + std::to_string(kSimC5) +
             "; max canon/bound " + fmt("%.3f", worst_canon) + ", max sort/bound " + fmt("%.3f", worst_sort) +
             (first.empty() ? "" : ", first: " + first));
}

void criterion_7() {
  Rng rng(7);
  long long bad = 0;
  double worst = 0;
  std::vector<int> sizes;
  for (int n = 1; n <= 64; ++n) sizes.push_back(n);
  for (int e = 7; e <= 12; ++e) sizes.push_back(1 << e);
  for (int n : sizes)
    for (int rep = 0; rep < 5; ++rep) {
      auto p = random_permutation(n, rng);
      CostLedger ledger;
      auto sorted = quicksort_noncontiguous(p, ledger);
      if (!std::is_sorted(sorted.begin(), sorted.end()) || ledger.total > quicksort_bound(n)) ++bad;
      if (n > 1) worst = std::max(worst, static_cast<double>(ledger.total) / static_cast<double>(quicksort_bound(n)));
    }
  long long tbad = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    int n = std::uniform_int_distribution<int>(2, 64)(rng);
    auto p = random_permutation(n, rng);
    int i = std::uniform_int_distribution<int>(1, n - 1)(rng), j = std::uniform_int_distribution<int>(i + 1, n)(rng);
    CostLedger l1, l2, l3, l4;
    auto c1 = apply_contiguous_reversal(p, i, j, &l1);
    auto c2 = apply_noncontiguous_reversal(p, contiguous_as_noncontiguous(i, j), &l2);
    NoncontiguousReversal r{i, j, {}};
    for (int q = i; q <= j; ++q)
      if (q == i || q == j || std::bernoulli_distribution(0.5)(rng)) r.positions.push_back(q);
    auto c3 = apply_noncontiguous_reversal(p, r, &l3);
    auto c4 = apply_swap_set(p, noncontiguous_as_swaps(r), &l4);
    if (c1 != c2 || l1.total != l2.total || c3 != c4 || l3.total != l4.total) ++tbad;
  }
  report(7, bad == 0 && tbad == 0, "quicksort ledger <= n(ceil(log2 n)+1); translations preserve results",
         std::to_string(bad) + " bad sorts, max ledger/bound " + fmt("%.3f", worst) + "; " + std::to_string(tbad) +
             " bad of 10000 translations");
}

void criterion_8() {
  bool ok = true;
  std::string detail = "unlabelled diameters m=4..14:";
  for (int m = 4; m <= 8; ++m)
    if (oracle::state_count(oracle::Mode::ConvexLabelled, m) != oracle::catalan(m - 2) * oracle::factorial(m - 3))
      ok = false;
  for (int m = 4; m <= 14; ++m) {
    int d = oracle::diameter(oracle::Mode::ConvexUnlabelled, m);
    detail += " " + std::to_string(d);
    if (m >= 13 && d > 2 * m - 10) ok = false;
  }
  detail += "; labelled m=5..9:";
  for (int m = 5; m <= 9; ++m) detail += " " + std::to_string(oracle::diameter(oracle::Mode::ConvexLabelled, m));
  report(8, ok, "state counts Catalan(m-2)(m-3)! for m <= 8; unlabelled diameter <= 2m-10 for m >= 13", detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criteria_1_2_9();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("acceptance: %d failing criteria, %.1f s\n", failures, secs);
  return failures ? 1 : 0;
}
