#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace markov_atlas {

using Vertex = int;
/// Set of vertices as a bitmask over vertex indices.
using VertexMask = std::uint64_t;

inline constexpr int kMaxVertices = 62;

constexpr VertexMask bit(Vertex v) { return VertexMask{1} << v; }

int popcount(VertexMask m);
std::vector<Vertex> vertices_of(VertexMask m);
Vertex lowest_vertex(VertexMask m);

/// Undirected edge with a < b.
struct Edge {
  Vertex a = 0;
  Vertex b = 0;
  auto operator<=>(const Edge&) const = default;
};

Edge make_edge(Vertex x, Vertex y);

/// An edge set over global vertex indices together with its vertex set.
/// Vertices may be present without incident edges.
struct Subgraph {
  VertexMask vertices = 0;
  std::vector<Edge> edges;  // sorted, deduplicated

  bool has_edge(Vertex x, Vertex y) const;
  int vertex_count() const { return popcount(vertices); }
  std::vector<std::vector<Vertex>> adjacency() const;
  /// Edges with both ends in `mask`, restricted to that vertex set.
  Subgraph induced(VertexMask mask) const;
  bool operator==(const Subgraph&) const = default;
};

Subgraph make_subgraph(VertexMask vertices, std::vector<Edge> edges);

/// Simple labeled graph. The vertex order is fixed at construction and
/// defines the bit position of each vertex in table labelings.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> labels, std::vector<Edge> edges = {});

  /// Graph on vertices labeled "0".."n-1".
  static Graph with_vertices(int n, std::vector<Edge> edges = {});

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<Vertex> index_of(std::string_view label) const;
  bool has_edge(Vertex x, Vertex y) const;
  VertexMask vertex_mask() const;
  Subgraph as_subgraph() const { return {vertex_mask(), edges_}; }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

/// Edge-list text: one "label1 label2" per line (a lone label declares a
/// vertex), '#' starts a comment,
/// vertices numbered by first appearance, duplicate edges collapsed.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);

std::vector<VertexMask> connected_components(const Subgraph& g);
bool is_connected(const Subgraph& g);
bool is_forest(const Subgraph& g);
bool is_cycle(const Subgraph& g);
/// Connected, at least three vertices, no cut vertex.
bool is_two_connected(const Subgraph& g);
std::vector<Vertex> cut_vertices(const Subgraph& g);

/// Maximal 2-connected subgraphs plus bridge edges. Every edge lands in
/// exactly one block; isolated vertices yield no block.
std::vector<Subgraph> blocks(const Subgraph& g);
std::vector<Subgraph> blocks(const Graph& g);

/// Series/parallel reduction test for a 2-connected graph (or single edge).
bool is_series_parallel_block(const Subgraph& g);

bool is_k4_minor_free(const Subgraph& g);
bool is_k4_minor_free(const Graph& g);

/// Four pairwise adjacent, connected, disjoint branch sets.
struct K4Minor {
  std::array<VertexMask, 4> branch_sets{};
};

/// Returns a K4 minor model if one exists.
std::optional<K4Minor> find_k4_minor(const Subgraph& g);

/// {u,v}-bridges: the edge uv if present, then one bridge per component of
/// g - {u,v} holding every edge with an end in that component.
std::vector<Subgraph> bridges(const Subgraph& g, Vertex u, Vertex v);

struct ParallelPoles {
  Vertex u = 0;
  Vertex v = 0;
  std::vector<Subgraph> bridges;
};

/// Lexicographically smallest vertex pair with at least three bridges.
/// Throws NoSuchPoles for cycles and graphs that are not 2-connected
/// series-parallel.
ParallelPoles find_parallel3_poles(const Subgraph& g);

}  // namespace markov_atlas
