#include "markov_atlas/fiber.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <numeric>
#include <set>
#include <thread>

#include "markov_atlas/error.hpp"

namespace markov_atlas {

namespace {

void check_vertex_limit(const Subgraph& g, const Limits& limits) {
  if (g.vertex_count() > limits.max_vertices) {
    throw ResourceLimitExceeded("graph has " + std::to_string(g.vertex_count()) +
                                " vertices; limit is " + std::to_string(limits.max_vertices));
  }
}

void check_total_limit(Count total, const Limits& limits) {
  if (total > limits.max_total) {
    throw ResourceLimitExceeded("table total " + std::to_string(total) + " exceeds limit " +
                                std::to_string(limits.max_total));
  }
}

// Cell slot (4 * edge + cell) touched by each labeling on each edge.
std::vector<std::uint32_t> cell_slots(const std::vector<Labeling>& labelings,
                                      const std::vector<Edge>& edges) {
  std::vector<std::uint32_t> slots(labelings.size() * edges.size());
  for (std::size_t i = 0; i < labelings.size(); ++i) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Labeling a = labelings[i];
      const auto cell = 2 * ((a >> edges[e].a) & 1) + ((a >> edges[e].b) & 1);
      slots[i * edges.size() + e] = static_cast<std::uint32_t>(4 * e + cell);
    }
  }
  return slots;
}

// Degree of the move between two tables of equal total given as sorted
// unit lists: total minus the size of the multiset intersection.
int move_degree(const Labeling* a, const Labeling* b, int total) {
  int i = 0;
  int j = 0;
  int common = 0;
  while (i < total && j < total) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return total - common;
}

// Bottleneck (minimax) spanning tree weight of the complete graph on `count`
// tables with move-degree weights; Prim's algorithm.
int bottleneck_degree(const Labeling* units, std::size_t count, int total) {
  if (count <= 1) return 0;
  std::vector<int> best(count, total + 1);
  std::vector<char> in_tree(count, 0);
  int worst = 0;
  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t added = 1; added < count; ++added) {
    std::size_t next = count;
    for (std::size_t j = 0; j < count; ++j) {
      if (in_tree[j]) continue;
      best[j] = std::min(best[j],
                         move_degree(units + current * total, units + j * total, total));
      if (next == count || best[j] < best[next]) next = j;
    }
    worst = std::max(worst, best[next]);
    in_tree[next] = 1;
    current = next;
  }
  return worst;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<std::size_t>> components_from_units(const std::vector<Labeling>& units,
                                                            std::size_t count, int total,
                                                            int k) {
  UnionFind uf(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (move_degree(&units[i * total], &units[j * total], total) <= k) uf.unite(i, j);
    }
  }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(count, count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t r = uf.find(i);
    if (slot[r] == count) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(i);
  }
  return comps;
}

// Flattened sorted unit lists of equal-total non-negative tables.
std::vector<Labeling> flatten_units(const std::vector<TableVector>& elements, Count total) {
  std::vector<Labeling> out;
  out.reserve(elements.size() * static_cast<std::size_t>(total));
  for (const auto& z : elements) {
    auto u = z.units();
    out.insert(out.end(), u.begin(), u.end());
  }
  return out;
}

// All tables of one total over the graph's labelings, grouped by marginals.
struct TotalCatalog {
  int total = 0;
  std::vector<Labeling> units;                // table-major, `total` per table
  std::vector<std::size_t> order;             // tables sorted by marginal key
  std::vector<std::size_t> group_begin;       // offsets into `order`, plus end sentinel

  std::size_t group_count() const { return group_begin.size() - 1; }
};

std::size_t multiset_count(std::size_t n, int k, std::size_t cap) {
  // C(n + k - 1, k), saturating at cap + 1.
  long double c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n + i - 1) / i;
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(c + 0.5L);
}

TotalCatalog build_catalog(const Subgraph& g, int total, const Limits& limits) {
  TotalCatalog cat;
  cat.total = total;
  const auto labelings = all_labelings(g.vertices);
  const std::size_t table_count = multiset_count(labelings.size(), total, limits.max_tables);
  if (table_count > limits.max_tables) {
    throw ResourceLimitExceeded("more than " + std::to_string(limits.max_tables) +
                                " tables of total " + std::to_string(total));
  }
  const std::size_t edge_count = g.edges.size();
  const auto slots = cell_slots(labelings, g.edges);
  const std::size_t key_width = 4 * edge_count;
  std::vector<std::uint8_t> keys;
  keys.reserve(table_count * key_width);
  cat.units.reserve(table_count * static_cast<std::size_t>(total));

  std::vector<std::size_t> idx(static_cast<std::size_t>(total), 0);
  std::vector<std::uint8_t> key(key_width);
  std::size_t count = 0;
  while (true) {
    ++count;
    std::fill(key.begin(), key.end(), 0);
    for (int p = 0; p < total; ++p) {
      cat.units.push_back(labelings[idx[p]]);
      for (std::size_t e = 0; e < edge_count; ++e) ++key[slots[idx[p] * edge_count + e]];
    }
    keys.insert(keys.end(), key.begin(), key.end());
    // Next non-decreasing index tuple.
    int p = total - 1;
    while (p >= 0 && idx[p] + 1 == labelings.size()) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < total; ++q) idx[q] = idx[p];
  }
  cat.order.resize(count);
  std::iota(cat.order.begin(), cat.order.end(), 0);
  if (key_width > 0) {
    std::stable_sort(cat.order.begin(), cat.order.end(), [&](std::size_t a, std::size_t b) {
      return std::memcmp(&keys[a * key_width], &keys[b * key_width], key_width) < 0;
    });
  }
  cat.group_begin.push_back(0);
  for (std::size_t i = 1; i < count; ++i) {
    if (key_width > 0 && std::memcmp(&keys[cat.order[i - 1] * key_width],
                                     &keys[cat.order[i] * key_width], key_width) != 0) {
      cat.group_begin.push_back(i);
    }
  }
  cat.group_begin.push_back(count);
  return cat;
}

// Gathers one group's unit lists contiguously.
std::vector<Labeling> group_units(const TotalCatalog& cat, std::size_t group) {
  std::vector<Labeling> out;
  const std::size_t t = static_cast<std::size_t>(cat.total);
  for (std::size_t i = cat.group_begin[group]; i < cat.group_begin[group + 1]; ++i) {
    const Labeling* src = &cat.units[cat.order[i] * t];
    out.insert(out.end(), src, src + t);
  }
  return out;
}

std::vector<int> group_degrees(const TotalCatalog& cat, const Limits& limits) {
  const std::size_t groups = cat.group_count();
  std::vector<int> out(groups, 0);
  for (std::size_t gi = 0; gi < groups; ++gi) {
    if (cat.group_begin[gi + 1] - cat.group_begin[gi] > limits.max_fiber_size) {
      throw ResourceLimitExceeded("fiber larger than " + std::to_string(limits.max_fiber_size));
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t gi = next++; gi < groups; gi = next++) {
      const std::size_t size = cat.group_begin[gi + 1] - cat.group_begin[gi];
      if (size <= 1) continue;
      auto units = group_units(cat, gi);
      out[gi] = bottleneck_degree(units.data(), size, cat.total);
    }
  };
  const int threads = std::max(1, limits.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

Fiber fiber_from_group(const Subgraph& g, const TotalCatalog& cat, std::size_t group) {
  Fiber f;
  f.graph = g;
  const std::size_t t = static_cast<std::size_t>(cat.total);
  for (std::size_t i = cat.group_begin[group]; i < cat.group_begin[group + 1]; ++i) {
    const Labeling* src = &cat.units[cat.order[i] * t];
    f.elements.push_back(TableVector::from_units(g.vertices, std::vector<Labeling>(src, src + t)));
  }
  std::sort(f.elements.begin(), f.elements.end());
  f.marginals = graph_marginals(f.elements.front(), g);
  return f;
}

}  // namespace

std::optional<std::size_t> Fiber::index_of(const TableVector& z) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), z);
  if (it == elements.end() || *it != z) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

Fiber enumerate_fiber(const Subgraph& g, const MarginalSet& m, const Limits& limits) {
  check_vertex_limit(g, limits);
  if (m.edges != g.edges) throw GroundSetMismatch("marginals belong to a different edge set");
  if (!m.is_consistent()) throw PreconditionViolated("marginals are not consistent");
  check_total_limit(m.total, limits);

  const auto labelings = all_labelings(g.vertices);
  const std::size_t edge_count = g.edges.size();
  const auto slots = cell_slots(labelings, g.edges);
  std::vector<Count> budget(4 * edge_count);
  for (std::size_t e = 0; e < edge_count; ++e) {
    for (int c = 0; c < 4; ++c) budget[4 * e + c] = m.tables[e][c];
  }

  Fiber f;
  f.graph = g;
  f.marginals = m;
  std::vector<Labeling> chosen;
  chosen.reserve(static_cast<std::size_t>(m.total));

  auto fits = [&](std::size_t li) {
    for (std::size_t e = 0; e < edge_count; ++e) {
      if (budget[slots[li * edge_count + e]] == 0) return false;
    }
    return true;
  };
  auto place = [&](std::size_t li, Count delta) {
    for (std::size_t e = 0; e < edge_count; ++e) budget[slots[li * edge_count + e]] += delta;
  };
  auto dfs = [&](auto&& self, std::size_t start, Count remaining) -> void {
    if (remaining == 0) {
      if (f.elements.size() >= limits.max_fiber_size) {
        throw ResourceLimitExceeded("fiber larger than " + std::to_string(limits.max_fiber_size));
      }
      f.elements.push_back(TableVector::from_units(g.vertices, chosen));
      return;
    }
    for (std::size_t li = start; li < labelings.size(); ++li) {
      if (!fits(li)) continue;
      place(li, -1);
      chosen.push_back(labelings[li]);
      self(self, li, remaining - 1);
      chosen.pop_back();
      place(li, +1);
    }
  };
  dfs(dfs, 0, m.total);
  std::sort(f.elements.begin(), f.elements.end());
  return f;
}

Fiber fiber_through(const Subgraph& g, const TableVector& z, const Limits& limits) {
  if (!z.is_nonnegative()) throw PreconditionViolated("fiber_through needs a non-negative table");
  return enumerate_fiber(g, graph_marginals(z, g), limits);
}

std::vector<std::vector<std::size_t>> fiber_components(const Fiber& f, int k) {
  if (k < 1) throw PreconditionViolated("degree bound must be at least 1");
  if (f.elements.empty()) return {};
  const Count total = f.marginals.total;
  const auto units = flatten_units(f.elements, total);
  return components_from_units(units, f.elements.size(), static_cast<int>(total), k);
}

int fiber_connecting_degree(const Fiber& f) {
  if (f.elements.size() <= 1) return 0;
  const Count total = f.marginals.total;
  const auto units = flatten_units(f.elements, total);
  return bottleneck_degree(units.data(), f.elements.size(), static_cast<int>(total));
}

std::vector<TableVector> extract_moves(const Fiber& f, int k) {
  std::set<TableVector> moves;
  for (std::size_t i = 0; i < f.elements.size(); ++i) {
    for (std::size_t j = i + 1; j < f.elements.size(); ++j) {
      TableVector d = f.elements[i] - f.elements[j];
      if (d.l1_norm() <= 2 * static_cast<Count>(k)) moves.insert(canonical_sign(std::move(d)));
    }
  }
  return {moves.begin(), moves.end()};
}

WidthSearch search_width(const Subgraph& g, int max_total, const Limits& limits) {
  check_vertex_limit(g, limits);
  check_total_limit(max_total, limits);
  WidthSearch out;
  out.max_total = max_total;
  out.degree_by_total.assign(static_cast<std::size_t>(max_total) + 1, 0);
  out.fibers_by_total.assign(static_cast<std::size_t>(max_total) + 1, 0);
  out.fibers_by_total[0] = 1;
  int worst = 0;
  for (int t = 1; t <= max_total; ++t) {
    const auto cat = build_catalog(g, t, limits);
    const auto degrees = group_degrees(cat, limits);
    int d = 0;
    for (int x : degrees) d = std::max(d, x);
    out.degree_by_total[t] = d;
    out.fibers_by_total[t] = cat.group_count();
    worst = std::max(worst, d);
  }
  out.min_connecting_degree = std::max(1, worst);
  return out;
}

int min_connecting_degree(const Subgraph& g, int max_total, const Limits& limits) {
  return search_width(g, max_total, limits).min_connecting_degree;
}

std::optional<DisconnectedWitness> witness_disconnected_fiber(const Subgraph& g, int k,
                                                              int max_total,
                                                              const Limits& limits) {
  if (k < 1) throw PreconditionViolated("degree bound must be at least 1");
  check_vertex_limit(g, limits);
  check_total_limit(max_total, limits);
  for (int t = 1; t <= max_total; ++t) {
    const auto cat = build_catalog(g, t, limits);
    const auto degrees = group_degrees(cat, limits);
    for (std::size_t gi = 0; gi < degrees.size(); ++gi) {
      if (degrees[gi] <= k) continue;
      DisconnectedWitness w;
      w.fiber = fiber_from_group(g, cat, gi);
      w.degree = k;
      w.components = fiber_components(w.fiber, k);
      w.first = w.components[0].front();
      w.second = w.components[1].front();
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace markov_atlas
