#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "markov_atlas/graph.hpp"
#include "markov_atlas/lattice.hpp"
#include "markov_atlas/limits.hpp"

namespace markov_atlas {

/// All non-negative tables sharing one marginal vector.
struct Fiber {
  Subgraph graph;
  MarginalSet marginals;
  std::vector<TableVector> elements;  // ascending order, pairwise distinct

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> index_of(const TableVector& z) const;
};

/// Depth-first placement of units in non-decreasing labeling order with
/// per-edge cell budgets. Throws ResourceLimitExceeded rather than
/// returning a partial fiber.
Fiber enumerate_fiber(const Subgraph& g, const MarginalSet& m, const Limits& limits = {});
Fiber fiber_through(const Subgraph& g, const TableVector& z, const Limits& limits = {});

/// Components of the fiber graph whose edges join elements at l1 distance
/// at most 2k. Components are lists of element indices in ascending order.
std::vector<std::vector<std::size_t>> fiber_components(const Fiber& f, int k);

/// Smallest degree k making the fiber connected (0 for a singleton).
int fiber_connecting_degree(const Fiber& f);

/// Difference vectors z_i - z_j of l1 norm at most 2k, sign-canonical and
/// deduplicated, in ascending order.
std::vector<TableVector> extract_moves(const Fiber& f, int k);

struct WidthSearch {
  int max_total = 0;
  /// Entry t is the largest connecting degree over fibers of total t
  /// (entry 0 unused).
  std::vector<int> degree_by_total;
  std::vector<std::size_t> fibers_by_total;
  /// Smallest k >= 1 connecting every fiber of total <= max_total.
  int min_connecting_degree = 1;
};

WidthSearch search_width(const Subgraph& g, int max_total, const Limits& limits = {});
int min_connecting_degree(const Subgraph& g, int max_total, const Limits& limits = {});

struct DisconnectedWitness {
  Fiber fiber;
  int degree = 0;
  std::size_t first = 0;   // element indices in different components
  std::size_t second = 0;
  std::vector<std::vector<std::size_t>> components;
};

/// First fiber (by total, then marginal order) that degree-k moves leave
/// disconnected.
std::optional<DisconnectedWitness> witness_disconnected_fiber(const Subgraph& g, int k,
                                                              int max_total,
                                                              const Limits& limits = {});

}  // namespace markov_atlas
