#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "markov_atlas/graph.hpp"

namespace markov_atlas {

/// Series-parallel decomposition tree. Leaves are edges; serial nodes chain
/// their children pole to pole from u to v; parallel children share both
/// poles. Trees produced by sp_decompose are flattened (no serial child of
/// a serial node, no parallel child of a parallel node) and canonical.
struct SPTree {
  enum class Kind { Leaf, Serial, Parallel };

  Kind kind = Kind::Leaf;
  Vertex u = 0;
  Vertex v = 0;
  std::vector<SPTree> children;

  static SPTree leaf(Vertex u, Vertex v);
  static SPTree serial(std::vector<SPTree> children);
  static SPTree parallel(std::vector<SPTree> children);

  VertexMask vertices() const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  Subgraph realize() const;
  /// Same tree with the poles swapped.
  SPTree reversed() const;
  /// Internal join vertices of a serial node, in order from u to v.
  std::vector<Vertex> join_vertices() const;
  bool is_leaf() const { return kind == Kind::Leaf; }

  bool operator==(const SPTree&) const = default;
};

/// Sorts parallel children by (smallest vertex, edge count, edges) and merges
/// nested nodes of the same kind.
SPTree canonicalize(SPTree t);

/// Decomposes a connected two-terminal series-parallel graph. Without poles,
/// edges are tried as pole pairs in lexicographic order, then all other pairs.
/// Throws NotSeriesParallel when no decomposition exists.
SPTree sp_decompose(const Subgraph& g,
                    std::optional<std::pair<Vertex, Vertex>> poles = std::nullopt);

const char* to_string(SPTree::Kind kind);

}  // namespace markov_atlas
