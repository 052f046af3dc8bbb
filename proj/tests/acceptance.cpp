// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/sampler.hpp"
#include "markov_atlas/sp_connect.hpp"
#include "markov_atlas/triangulation.hpp"
#include "markov_atlas/width.hpp"
#include "oracles.hpp"

using namespace markov_atlas;

namespace {

// Pinned tolerances and budgets.
constexpr double kChiSquareAlpha = 0.01;
constexpr std::uint64_t kWalkSteps = 100'000;
constexpr std::uint64_t kThinning = 25;
constexpr std::uint64_t kWalkSeed = 20240611;
constexpr std::uint64_t kGraphSeed = 4417;
constexpr int kRandomGraphs = 200;
constexpr int kMinNontrivialPairs = 150;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Log {
 public:
  void fail(const std::string& what) {
    if (failures_ < 5) first_ << (failures_ ? "; " : "") << what;
    ++failures_;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  int failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + first_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream first_;
};

std::string show(const Subgraph& g) {
  std::ostringstream out;
  out << "n=" << g.vertex_count() << " {";
  for (const auto& e : g.edges) out << e.a << e.b << ' ';
  out << '}';
  return out.str();
}

Graph as_graph(const Subgraph& g) {
  return Graph::with_vertices(g.vertex_count(), g.edges);
}

// 1. Trees up to 6 vertices, totals up to 4.
Outcome forest_width() {
  Log log;
  int trees = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : oracle::all_graphs(n)) {
      if (!is_forest(g) || !is_connected(g)) continue;
      ++trees;
      const int d = min_connecting_degree(g, 4);
      log.expect(d <= 2, "tree " + show(g) + " needs degree " + std::to_string(d));
      log.expect(classify_width(as_graph(g)).width_class == WidthClass::Exact2,
                 "tree " + show(g) + " not classified exact 2");
    }
  }
  log.expect(trees == 1 + 1 + 1 + 2 + 3 + 6, "tree count " + std::to_string(trees));
  return log.outcome(std::to_string(trees) + " trees, all fibers connected by degree 2");
}

// 2. Cycles C3..C6, totals up to 4, and a degree-3 witness on C4.
Outcome cycle_width() {
  Log log;
  std::ostringstream degrees;
  for (int n = 3; n <= 6; ++n) {
    const Subgraph c = cycle_graph(n).as_subgraph();
    const int d = min_connecting_degree(c, 4);
    degrees << "C" << n << ":" << d << ' ';
    log.expect(d <= 4, "C" + std::to_string(n) + " needs degree " + std::to_string(d));
    log.expect(classify_width(cycle_graph(n)).width_class == WidthClass::Exact4,
               "C" + std::to_string(n) + " not classified exact 4");
  }
  const Subgraph c4 = cycle_graph(4).as_subgraph();
  auto w = witness_disconnected_fiber(c4, 3, 4);
  log.expect(w.has_value(), "no degree-3 witness on C4");
  if (w) {
    const auto brute = oracle::fiber(c4, w->fiber.elements[w->first]);
    log.expect(brute == w->fiber.elements, "witness fiber differs from brute force");
    log.expect(oracle::connecting_degree(brute) == 4, "witness fiber not degree 4");
    degrees << "| C4 witness: fiber of " << brute.size() << " in " << w->components.size()
            << " components";
  }
  return log.outcome(degrees.str());
}

// 3. K4 at total 6.
Outcome k4_evidence() {
  Log log;
  const Subgraph k4 = complete_graph(4).as_subgraph();
  const WidthSearch s = search_width(k4, 6);
  log.expect(s.min_connecting_degree == 6,
             "min_connecting_degree " + std::to_string(s.min_connecting_degree));
  auto w = witness_disconnected_fiber(k4, 5, 6);
  log.expect(w.has_value(), "no degree-5 witness");
  std::ostringstream detail;
  detail << "min_connecting_degree(K4, N<=6) = " << s.min_connecting_degree;
  if (w) {
    const auto brute = oracle::fiber(k4, w->fiber.elements[w->first]);
    log.expect(brute == w->fiber.elements, "witness fiber differs from brute force");
    const int d = oracle::connecting_degree(brute);
    log.expect(d == 6, "witness fiber degree " + std::to_string(d));
    detail << "; degree-5 witness: fiber of " << brute.size() << " at total "
           << w->fiber.marginals.total;
  }
  return log.outcome(detail.str());
}

std::optional<std::pair<TableVector, TableVector>> random_pair(std::mt19937_64& rng,
                                                               const Subgraph& g) {
  for (int attempt = 0; attempt < 40; ++attempt) {
    const int total = 1 + static_cast<int>(rng() % 3);
    TableVector z = oracle::random_table(rng, g.vertices, total);
    const Fiber f = fiber_through(g, z);
    if (f.size() < 2) continue;
    std::size_t j = rng() % f.size();
    if (f.elements[j] == z) j = (j + 1) % f.size();
    return std::make_pair(z, f.elements[j]);
  }
  return std::nullopt;
}

// 4. Connector soundness on random K4-minor-free graphs.
Outcome connector_soundness() {
  Log log;
  std::mt19937_64 rng(kGraphSeed);
  int nontrivial = 0;
  int block_runs = 0;
  std::size_t longest = 0;
  for (int i = 0; i < kRandomGraphs; ++i) {
    const Subgraph g = oracle::random_k4_free(rng, 8);
    log.expect(g.vertex_count() > 7 || !oracle::has_k4_minor(g), "generator made K4 minor");
    auto pair = random_pair(rng, g);
    TableVector z, w;
    if (pair) {
      std::tie(z, w) = *pair;
      ++nontrivial;
    } else {
      z = w = oracle::random_table(rng, g.vertices, 2);
    }
    try {
      const MoveSequence s = connect_graph(g, z, w);
      longest = std::max(longest, s.length());
      const auto v = oracle::sequence_violations(g, s.poles, s.states, z, w);
      log.expect(v.empty(), show(g) + ": " + (v.empty() ? "" : v.front()));
      log.expect(check_sequence(s, z, w).ok, show(g) + ": library checker disagrees");
      for (const auto& b : blocks(g)) {
        if (b.vertex_count() < 3) continue;
        const SPTree t = sp_decompose(b);
        const TableVector zb = project(z, b.vertices);
        const TableVector wb = project(w, b.vertices);
        const MoveSequence sb = connect_sp(t, zb, wb);
        const auto vb = oracle::sequence_violations(b, std::make_pair(t.u, t.v), sb.states, zb, wb);
        log.expect(vb.empty(), "block " + show(b) + ": " + (vb.empty() ? "" : vb.front()));
        ++block_runs;
      }
    } catch (const std::exception& e) {
      log.fail(show(g) + ": " + e.what());
    }
  }
  log.expect(nontrivial >= kMinNontrivialPairs,
             "only " + std::to_string(nontrivial) + " non-trivial pairs");
  return log.outcome(std::to_string(kRandomGraphs) + " graphs, " + std::to_string(nontrivial) +
                     " non-trivial pairs, " + std::to_string(block_runs) +
                     " block sequences with poles, longest " + std::to_string(longest));
}

// 5. Gluing operations against exhaustive instance lists.
Outcome gluing_oracles() {
  Log log;
  long cutsame_runs = 0, swap_runs = 0, cutchange_runs = 0;
  for (int size = 1; size <= 4; ++size) {
    const VertexMask ground = (VertexMask{1} << size) - 1;
    std::vector<TableVector> tables;
    for (int t = 1; t <= 3; ++t) {
      for (auto& z : oracle::all_tables(ground, t)) tables.push_back(std::move(z));
    }
    // Every cover X1 | X2 = X with both parts non-empty.
    for (VertexMask x1 = 1; x1 <= ground; ++x1) {
      for (VertexMask x2 = 1; x2 <= ground; ++x2) {
        if ((x1 | x2) != ground) continue;
        const VertexMask y = x1 & x2;
        std::map<TableVector, std::vector<TableVector>> x1_by_y, x2_by_y;
        for (int t = 1; t <= 3; ++t) {
          for (auto& a : oracle::all_tables(x1, t)) x1_by_y[project(a, y)].push_back(a);
          for (auto& b : oracle::all_tables(x2, t)) x2_by_y[project(b, y)].push_back(b);
        }

        std::map<std::pair<TableVector, TableVector>, std::vector<const TableVector*>> classes;
        for (const auto& z : tables) {
          classes[{project(z, x1), project(z, x2)}].push_back(&z);
          const TableVector zx1 = project(z, x1);
          const TableVector zx2 = project(z, x2);
          for (const auto& zbar : x1_by_y[project(z, y)]) {
            const TableVector r = glue_cutsame(z, zbar, x1, x2);
            ++cutsame_runs;
            const bool ok = r.is_nonnegative() && project(r, x1) == zbar &&
                            project(r, x2) == zx2 && (r - z).l1_norm() == (zx1 - zbar).l1_norm();
            log.expect(ok, "cutsame postcondition");
          }
        }

        for (const auto& [key, members] : classes) {
          for (const TableVector* a : members) {
            for (const TableVector* b : members) {
              const MoveSequence s = glue_swaps(*a, *b, x1, x2);
              ++swap_runs;
              bool ok = s.states.front() == *a && s.states.back() == *b &&
                        2 * static_cast<Count>(s.length()) <= (*a - *b).l1_norm();
              for (const auto& st : s.states) {
                ok = ok && st.is_nonnegative() && project(st, x1) == key.first &&
                     project(st, x2) == key.second;
              }
              for (Count n : s.norms()) ok = ok && n == 4;
              log.expect(ok, "swaps postcondition");
            }
          }
        }

        // Tight pairs on each side: the l1 distance is visible on Y.
        for (const auto& [y1, side1] : x1_by_y) {
          for (const auto& z1 : side1) {
            for (const auto& [y1p, side1p] : x1_by_y) {
              if (y1p.total() != y1.total()) continue;
              const Count d = (y1 - y1p).l1_norm();
              for (const auto& z1p : side1p) {
                if ((z1 - z1p).l1_norm() != d) continue;
                for (const auto& z2 : x2_by_y[y1]) {
                  for (const auto& z2p : x2_by_y[y1p]) {
                    if ((z2 - z2p).l1_norm() != d) continue;
                    auto [z, zp] = glue_cutchange(z1, z1p, z2, z2p);
                    ++cutchange_runs;
                    const bool ok = z.is_nonnegative() && zp.is_nonnegative() &&
                                    project(z, x1) == z1 && project(z, x2) == z2 &&
                                    project(zp, x1) == z1p && project(zp, x2) == z2p &&
                                    (z - zp).l1_norm() == d;
                    log.expect(ok, "cutchange postcondition");
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return log.outcome("cutsame " + std::to_string(cutsame_runs) + ", swaps " +
                     std::to_string(swap_runs) + ", cutchange " + std::to_string(cutchange_runs) +
                     " instances");
}

const char* kOctahedron =
    "n 1 2\nn 2 3\nn 3 4\nn 4 1\n"
    "s 1 2\ns 2 3\ns 3 4\ns 4 1\n";

// 6. Octahedron certificate with blind enumeration over K6.
Outcome octahedron() {
  Log log;
  const Triangulation oct = load_triangulation(kOctahedron);
  const LowerBoundCertificate c = certify_lower_bound(oct, true);
  log.expect(c.clean, "not clean");
  log.expect(c.colorable, "not 2-face-colorable");
  log.expect(c.bound == 4, "bound is not 4");
  log.expect(c.fiber_verified == true, "exact-cover verification failed");
  const auto [red, blue] = red_blue_vectors(oct, two_face_coloring(oct));
  const auto brute = oracle::fiber(complete_graph(6).as_subgraph(), red);
  std::vector<TableVector> expected{red, blue};
  std::sort(expected.begin(), expected.end());
  log.expect(brute == expected, "blind K6 fiber has " + std::to_string(brute.size()) +
                                    " elements");
  log.expect(c.fiber == brute, "certificate fiber differs from blind enumeration");
  return log.outcome("clean, colorable, bound 4, fiber {red, blue} confirmed over " +
                     std::to_string(oracle::all_tables(red.ground(), 4).size()) + " tables");
}

// 7. Double wheels for K_6, K_8, K_10.
Outcome double_wheels() {
  Log log;
  std::ostringstream detail;
  for (int n : {6, 8, 10}) {
    const KnBoundReport r = kn_lower_bound_report(n, nullptr, true);
    const auto& c = r.certificate;
    log.expect(r.bound == n - 2, "K_" + std::to_string(n) + " bound " + std::to_string(r.bound));
    log.expect(c.n == n && c.m == 3 * (n - 2), "K_" + std::to_string(n) + " complex size");
    log.expect(c.clean && c.colorable, "K_" + std::to_string(n) + " complex not certified");
    log.expect(c.fiber_verified == true, "K_" + std::to_string(n) + " fiber not verified");
    if (n <= 8) {
      // Independent check with the library's generic fiber enumeration.
      const Triangulation t = double_wheel(n - 2);
      const auto [red, blue] = red_blue_vectors(t, two_face_coloring(t));
      const Fiber f = fiber_through(complete_graph(n).as_subgraph(), red);
      log.expect(f.size() == 2, "K_" + std::to_string(n) + " direct fiber size " +
                                    std::to_string(f.size()));
    }
    detail << "K_" << n << ": " << r.bound << " ";
  }
  return log.outcome(detail.str() + "(fibers verified for all three)");
}

// 8. Uniformity of the lazy walk on a C4 fiber.
Outcome sampler_uniformity() {
  Log log;
  const Subgraph c4 = cycle_graph(4).as_subgraph();
  TableVector z(0b1111);
  z.add(0b0000, 1);
  z.add(0b0101, 1);
  z.add(0b1010, 1);
  z.add(0b1111, 1);
  const Fiber f = fiber_through(c4, z);
  const auto moves = fiber_moves(c4, z, 4);
  log.expect(fiber_components(f, 4).size() == 1, "moves do not connect the fiber");

  auto run = [&](std::uint64_t seed, std::vector<std::size_t>* trace) {
    RandomWalk walk(c4, moves, z, seed);
    std::vector<std::uint64_t> counts(f.size(), 0);
    for (std::uint64_t i = 1; i <= kWalkSteps; ++i) {
      walk.step();
      const auto idx = f.index_of(walk.state());
      if (!idx) {
        log.fail("walk left the fiber");
        break;
      }
      if (trace) trace->push_back(*idx);
      if (i % kThinning == 0) ++counts[*idx];
    }
    return counts;
  };
  std::vector<std::size_t> first, second, other;
  const auto counts = run(kWalkSeed, &first);
  run(kWalkSeed, &second);
  run(kWalkSeed + 1, &other);
  log.expect(first == second, "trajectory not reproducible under a fixed seed");
  log.expect(first != other, "different seeds gave identical trajectories");

  double samples = 0;
  for (auto c : counts) samples += static_cast<double>(c);
  const double expected = samples / static_cast<double>(f.size());
  double stat = 0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(f.size() - 1));
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  log.expect(p >= kChiSquareAlpha, "chi-square p = " + std::to_string(p));
  std::ostringstream detail;
  detail << "fiber " << f.size() << ", " << moves.size() << " moves, " << samples
         << " thinned samples, chi2 = " << stat << ", p = " << p;
  return log.outcome(detail.str());
}

// 9. Minor monotonicity on graphs with at most 5 vertices.
Outcome minor_monotonicity() {
  Log log;
  int pairs = 0;
  std::map<std::pair<int, std::vector<Edge>>, int> memo;
  auto degree = [&](const Subgraph& g) {
    auto key = std::make_pair(g.vertex_count(), g.edges);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo[key] = min_connecting_degree(g, 3);
  };
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : oracle::all_graphs(n)) {
      const int dg = degree(g);
      for (const auto& e : g.edges) {
        const Subgraph h = oracle::contract(g, e);
        ++pairs;
        log.expect(degree(h) <= dg, "contraction of " + show(g));
      }
      if (n == 1) continue;
      for (Vertex v = 0; v < n; ++v) {
        const Subgraph h = oracle::delete_vertex(g, v);
        ++pairs;
        log.expect(degree(h) <= dg, "deletion in " + show(g));
      }
    }
  }
  return log.outcome(std::to_string(pairs) + " minor pairs, no violations");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "forest width", 60, forest_width},
      {2, "cycle width", 300, cycle_width},
      {3, "K4 evidence at total 6", 1800, k4_evidence},
      {4, "connector soundness", 600, connector_soundness},
      {5, "gluing oracles", 300, gluing_oracles},
      {6, "octahedron certificate", 300, octahedron},
      {7, "double-wheel bounds", 900, double_wheels},
      {8, "sampler uniformity", 120, sampler_uniformity},
      {9, "minor monotonicity", 600, minor_monotonicity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) +
                  " s budget)";
    }
    std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
