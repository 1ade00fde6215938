#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <tuple>
#include <chrono>
#include <cmath>
#include <iostream>
#include <thread>

#include "flipforge/approx.hpp"
#include "flipforge/comb.hpp"
#include "flipforge/config.hpp"
#include "flipforge/json_io.hpp"
#include "flipforge/oracle.hpp"
#include "flipforge/parallel.hpp"
#include "flipforge/random.hpp"
#include "flipforge/sortmodels.hpp"
#include "flipforge/transform.hpp"

using namespace flipforge;
using io::Json;

namespace {

int gen(const std::string& kind, int size, uint64_t seed) {
  Rng rng(seed);
  Json out;
  if (kind == "convex") {
    if (size < 1) throw Error(ErrorKind::BadSize, "convex needs n >= 1");
    out = io::to_json(random_convex(size + 3, rng));
  } else if (kind == "fan-perm") {
    if (size < 1) throw Error(ErrorKind::BadSize, "fan-perm needs n >= 1");
    out = io::to_json(random_fan(size, rng));
  } else if (kind == "redblue") {
    out = io::to_json(redblue(size));
  } else if (kind == "comb") {
    out = io::to_json(random_comb(size, rng));
  } else {
    throw Error(ErrorKind::BadSize, "unknown kind " + kind);
  }
  std::cout << io::dump(out);
  return 0;
}

Json stats_block(const std::string& algo, size_t cost, bool verified) {
  Json s;
  s["algo"] = algo;
  s["cost"] = cost;
  s["verified"] = verified;
  return s;
}

int transform(const std::string& fa, const std::string& fb, const std::string& algo) {
  auto a = io::instance_from_json(io::read_file(fa));
  auto b = io::instance_from_json(io::read_file(fb));
  if (a.index() != b.index()) throw Error(ErrorKind::SizeMismatch, "instances are of different kinds");
  Json out;
  std::string why;
  if (auto* ca = std::get_if<CombTriangulation>(&a)) {
    auto& cb = std::get<CombTriangulation>(b);
    if (algo != "sequential") throw Error(ErrorKind::BadSize, "comb instances support only --algo sequential");
    auto seq = comb_transform(*ca, cb);
    if (!verify_comb_sequence(*ca, seq, cb, &why)) throw Error(ErrorKind::VerificationFailed, why);
    out = io::to_json(seq);
    out["stats"] = stats_block(algo, seq.cost(), true);
  } else {
    auto& x = std::get<ConvexTriangulation>(a);
    auto& y = std::get<ConvexTriangulation>(b);
    if (x.m() != y.m()) throw Error(ErrorKind::SizeMismatch, "polygons differ in size");
    if (algo == "sequential") {
      auto seq = transform_between(x, y);
      if (!verify_sequence(x, seq, y, &why)) throw Error(ErrorKind::VerificationFailed, why);
      out = io::to_json(seq);
      out["stats"] = stats_block(algo, seq.cost(), true);
    } else if (algo == "simultaneous") {
      auto seq = sim_transform_between(x, y);
      if (!verify_sim_sequence(x, seq, y, &why)) throw Error(ErrorKind::VerificationFailed, why);
      out = io::to_json(seq);
      out["stats"] = stats_block(algo, seq.cost(), true);
      out["stats"]["flips"] = seq.flips();
    } else if (algo == "approx") {
      auto r = approx_transform(x, y);
      if (!verify_sequence(x, r.seq, y, &why)) throw Error(ErrorKind::VerificationFailed, why);
      out = io::to_json(r.seq);
      out["stats"] = stats_block(algo, r.seq.cost(), true);
      out["stats"]["lower_bound"] = r.lower_bound;
      out["stats"]["report"] = io::to_json(r.report);
    } else {
      throw Error(ErrorKind::ParseError, "unknown algo " + algo);
    }
  }
  std::cout << io::dump(out);
  return 0;
}

int distance(const std::string& fa, const std::string& fb, bool approx, const std::string& mode) {
  auto a = io::instance_from_json(io::read_file(fa));
  auto b = io::instance_from_json(io::read_file(fb));
  if (a.index() != b.index()) throw Error(ErrorKind::SizeMismatch, "instances are of different kinds");
  Json out;
  if (auto* ca = std::get_if<CombTriangulation>(&a)) {
    auto& cb = std::get<CombTriangulation>(b);
    if (approx) {
      auto seq = comb_transform(*ca, cb);
      out["upper"] = seq.cost();
      out["lower"] = 0;
    } else {
      out["distance"] = oracle::comb_exact_distance(*ca, cb);
      out["mode"] = oracle::mode_name(oracle::Mode::CombLabelled);
    }
  } else {
    auto& x = std::get<ConvexTriangulation>(a);
    auto& y = std::get<ConvexTriangulation>(b);
    if (x.m() != y.m()) throw Error(ErrorKind::SizeMismatch, "polygons differ in size");
    if (approx) {
      auto r = approx_transform(x, y);
      std::string why;
      if (!verify_sequence(x, r.seq, y, &why)) throw Error(ErrorKind::VerificationFailed, why);
      out["upper"] = r.seq.cost();
      out["lower"] = r.lower_bound;
    } else {
      oracle::Mode m = mode == "unlabelled"     ? oracle::Mode::ConvexUnlabelled
                       : mode == "simultaneous" ? oracle::Mode::ConvexSimLabelled
                                                : oracle::Mode::ConvexLabelled;
      out["distance"] = oracle::exact_distance(x, y, m);
      out["mode"] = oracle::mode_name(m);
    }
  }
  std::cout << io::dump(out);
  return 0;
}

int verify(const std::string& fs, const std::string& fq, const std::string& ft) {
  auto s = io::instance_from_json(io::read_file(fs));
  auto t = io::instance_from_json(io::read_file(ft));
  auto q = io::sequence_from_json(io::read_file(fq));
  if (s.index() != t.index()) throw Error(ErrorKind::SizeMismatch, "instances are of different kinds");
  std::string why;
  bool ok = false;
  if (auto* cs = std::get_if<CombTriangulation>(&s)) {
    auto* seq = std::get_if<FlipSequence>(&q);
    if (!seq || !seq->labelled) throw Error(ErrorKind::ParseError, "comb sequences are labelled step lists");
    ok = verify_comb_sequence(*cs, *seq, std::get<CombTriangulation>(t), &why);
  } else {
    auto& x = std::get<ConvexTriangulation>(s);
    auto& y = std::get<ConvexTriangulation>(t);
    if (auto* seq = std::get_if<FlipSequence>(&q))
      ok = verify_sequence(x, *seq, y, &why);
    else
      ok = verify_sim_sequence(x, std::get<SimFlipSequence>(q), y, &why);
  }
  if (ok) {
    std::cout << "ok\n";
    return 0;
  }
  std::cout << "fail: " << why << "\n";
  return 1;
}

struct Row {
  std::string algo;
  int n;
  uint64_t seed;
  long long cost;
  long long micros;
  std::string diag;
};

Row bench_one(const std::string& suite, int n, uint64_t seed) {
  Row r{suite, n, seed, -1, 0, ""};
  Rng rng(seed);
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string why;
    if (suite == "sequential") {
      auto a = random_convex(n + 3, rng), b = random_convex(n + 3, rng);
      auto seq = transform_between(a, b);
      if (!verify_sequence(a, seq, b, &why)) throw Error(ErrorKind::VerificationFailed, why);
      r.cost = static_cast<long long>(seq.cost());
      if (r.cost > transform_bound(n)) r.diag = "bound exceeded";
    } else if (suite == "simultaneous") {
      auto p = random_permutation(n, rng);
      auto seq = sim_sort_fan(p);
      if (!verify_sim_sequence(ConvexTriangulation::fan(p), seq, ConvexTriangulation::identity_fan(n + 3), &why))
        throw Error(ErrorKind::VerificationFailed, why);
      r.cost = static_cast<long long>(seq.cost());
      if (r.cost > sim_sort_bound(n)) r.diag = "bound exceeded";
    } else if (suite == "sortmodels") {
      auto p = random_permutation(n, rng);
      CostLedger ledger;
      auto sorted = quicksort_noncontiguous(p, ledger);
      long long sum = 0;
      for (auto& e : ledger.ops) sum += e.span;
      if (!std::is_sorted(sorted.begin(), sorted.end()) || sum != ledger.total)
        throw Error(ErrorKind::VerificationFailed, "ledger replay mismatch");
      r.cost = ledger.total;
      if (r.cost > quicksort_bound(n)) r.diag = "bound exceeded";
    } else if (suite == "comb") {
      auto a = random_comb(n, rng);
      auto seq = comb_canonicalize(a);
      if (!verify_comb_sequence(a, seq, double_wheel(n), &why)) throw Error(ErrorKind::VerificationFailed, why);
      r.cost = static_cast<long long>(seq.cost());
      if (static_cast<double>(r.cost) > kCombConstant * n * std::log2(n)) r.diag = "bound exceeded";
    } else {
      throw Error(ErrorKind::ParseError, "unknown suite " + suite);
    }
  } catch (const std::exception& e) {
    r.cost = -1;
    r.diag = e.what();
  }
  r.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

int bench(const std::string& suite, const std::vector<int>& sizes, int seeds, bool canonical, int jobs) {
  std::vector<std::pair<int, uint64_t>> cells;
  for (int n : sizes)
    for (int s = 1; s <= seeds; ++s) cells.emplace_back(n, static_cast<uint64_t>(s));
  std::vector<Row> rows(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < cells.size();) rows[i] = bench_one(suite, cells[i].first, cells[i].second);
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.algo, x.n, x.seed) < std::tie(y.algo, y.n, y.seed);
  });
  std::cout << "algo,n,seed,cost,wall_micros\n";
  for (auto& r : rows) {
    std::cout << r.algo << ',' << r.n << ',' << r.seed << ',' << r.cost << ',' << (canonical ? 0 : r.micros);
    if (!r.diag.empty()) std::cout << ',' << csv_field(r.diag);
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flip sequences on edge-labelled triangulations"};
  app.require_subcommand(1);

  std::string kind, fa, fb, fc, algo = "sequential", mode = "labelled", suite;
  int size = 0, seeds = 5, jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  uint64_t seed = 1;
  bool exact = false, approx = false, canonical = false;
  std::vector<int> sizes;

  auto* g = app.add_subcommand("gen", "generate an instance");
  g->add_option("kind", kind, "convex | comb | redblue | fan-perm")->required()->check(
      CLI::IsMember({"convex", "comb", "redblue", "fan-perm"}));
  g->add_option("-n,--size", size, "labels for convex kinds, vertices for comb")->required();
  g->add_option("-s,--seed", seed);

  auto* t = app.add_subcommand("transform", "flip sequence from a to b");
  t->add_option("a", fa)->required();
  t->add_option("b", fb)->required();
  t->add_option("--algo", algo)->check(CLI::IsMember({"sequential", "simultaneous", "approx"}));

  auto* d = app.add_subcommand("distance", "exact or approximate flip distance");
  d->add_option("a", fa)->required();
  d->add_option("b", fb)->required();
  auto* ex = d->add_flag("--exact", exact);
  d->add_flag("--approx", approx)->excludes(ex);
  d->add_option("--mode", mode, "exact mode for convex input")
      ->check(CLI::IsMember({"labelled", "unlabelled", "simultaneous"}));

  auto* b = app.add_subcommand("bench", "benchmark suite as CSV");
  b->add_option("--suite", suite)->required()->check(
      CLI::IsMember({"sequential", "simultaneous", "sortmodels", "comb"}));
  b->add_option("--sizes", sizes)->required()->delimiter(',');
  b->add_option("--seeds", seeds, "seeds 1..N");
  b->add_option("-j,--jobs", jobs);
  b->add_flag("--canonical", canonical, "zero the wall_micros column");

  auto* v = app.add_subcommand("verify", "replay a sequence");
  v->add_option("start", fa)->required();
  v->add_option("seq", fb)->required();
  v->add_option("target", fc)->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*g) return gen(kind, size, seed);
    if (*t) return transform(fa, fb, algo);
    if (*d) return distance(fa, fb, approx, mode);
    if (*b) return bench(suite, sizes, seeds, canonical, jobs);
    if (*v) return verify(fa, fb, fc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
