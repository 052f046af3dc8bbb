#include "markov_atlas/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "markov_atlas/error.hpp"

namespace markov_atlas {

int popcount(VertexMask m) { return std::popcount(m); }

std::vector<Vertex> vertices_of(VertexMask m) {
  std::vector<Vertex> out;
  out.reserve(std::popcount(m));
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Vertex lowest_vertex(VertexMask m) { return m == 0 ? -1 : std::countr_zero(m); }

Edge make_edge(Vertex x, Vertex y) {
  if (x == y) throw PreconditionViolated("loop edge at vertex " + std::to_string(x));
  return x < y ? Edge{x, y} : Edge{y, x};
}

bool Subgraph::has_edge(Vertex x, Vertex y) const {
  if (x == y) return false;
  return std::binary_search(edges.begin(), edges.end(), make_edge(x, y));
}

std::vector<std::vector<Vertex>> Subgraph::adjacency() const {
  std::vector<std::vector<Vertex>> adj(64);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

Subgraph Subgraph::induced(VertexMask mask) const {
  Subgraph out;
  out.vertices = vertices & mask;
  for (const auto& e : edges) {
    if ((bit(e.a) & out.vertices) && (bit(e.b) & out.vertices)) out.edges.push_back(e);
  }
  return out;
}

Subgraph make_subgraph(VertexMask vertices, std::vector<Edge> edges) {
  for (auto& e : edges) {
    e = make_edge(e.a, e.b);
    if (e.b >= 64) throw PreconditionViolated("vertex index out of range");
    vertices |= bit(e.a) | bit(e.b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {vertices, std::move(edges)};
}

// --- Graph -------------------------------------------------------------------

Graph::Graph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)) {
  const int n = vertex_count();
  if (n > kMaxVertices) {
    throw PreconditionViolated("graph has " + std::to_string(n) + " vertices; at most " +
                               std::to_string(kMaxVertices) + " supported");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) throw PreconditionViolated("duplicate label " + labels_[i]);
    }
  }
  for (auto& e : edges) {
    e = make_edge(e.a, e.b);
    if (e.a < 0 || e.b >= n) throw PreconditionViolated("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

Graph Graph::with_vertices(int n, std::vector<Edge> edges) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Graph(std::move(labels), std::move(edges));
}

std::optional<Vertex> Graph::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<Vertex>(i);
  }
  return std::nullopt;
}

bool Graph::has_edge(Vertex x, Vertex y) const {
  if (x == y) return false;
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(x, y));
}

VertexMask Graph::vertex_mask() const {
  const int n = vertex_count();
  return n == 0 ? 0 : (n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1);
}

Graph parse_graph(std::string_view text) {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& label) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return static_cast<Vertex>(i);
    }
    labels.push_back(label);
    return static_cast<Vertex>(labels.size() - 1);
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;
    if (parts.size() == 1) {
      intern(parts[0]);  // isolated vertex
      continue;
    }
    if (parts.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected one or two vertex labels");
    }
    if (parts[0] == parts[1]) {
      throw ParseError("line " + std::to_string(line_no) + ": loop edge at '" + parts[0] + "'");
    }
    Vertex a = intern(parts[0]);
    Vertex b = intern(parts[1]);
    if (static_cast<int>(labels.size()) > kMaxVertices) {
      throw ParseError("line " + std::to_string(line_no) + ": more than " +
                       std::to_string(kMaxVertices) + " vertices");
    }
    edges.push_back(make_edge(a, b));
  }
  return Graph(std::move(labels), std::move(edges));
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  VertexMask touched = 0;
  for (const auto& e : g.edges()) {
    out << g.label(e.a) << ' ' << g.label(e.b) << '\n';
    touched |= bit(e.a) | bit(e.b);
  }
  for (Vertex v : vertices_of(g.vertex_mask() & ~touched)) out << g.label(v) << '\n';
  return out.str();
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph::with_vertices(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw PreconditionViolated("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(make_edge(i, (i + 1) % n));
  return Graph::with_vertices(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::with_vertices(n, std::move(edges));
}

// --- Connectivity ------------------------------------------------------------

namespace {

using AdjMasks = std::array<VertexMask, 64>;

AdjMasks adjacency_masks(const Subgraph& g) {
  AdjMasks adj{};
  for (const auto& e : g.edges) {
    adj[e.a] |= bit(e.b);
    adj[e.b] |= bit(e.a);
  }
  return adj;
}

VertexMask reach(const AdjMasks& adj, VertexMask allowed, Vertex start) {
  VertexMask seen = bit(start);
  VertexMask frontier = seen;
  while (frontier != 0) {
    VertexMask next = 0;
    for (Vertex v : vertices_of(frontier)) next |= adj[v];
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

}  // namespace

std::vector<VertexMask> connected_components(const Subgraph& g) {
  const auto adj = adjacency_masks(g);
  std::vector<VertexMask> out;
  VertexMask left = g.vertices;
  while (left != 0) {
    VertexMask comp = reach(adj, g.vertices, lowest_vertex(left));
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

bool is_connected(const Subgraph& g) { return connected_components(g).size() <= 1; }

bool is_forest(const Subgraph& g) {
  return g.edges.size() + connected_components(g).size() == static_cast<std::size_t>(g.vertex_count());
}

bool is_cycle(const Subgraph& g) {
  if (g.vertex_count() < 3 || g.edges.size() != static_cast<std::size_t>(g.vertex_count())) {
    return false;
  }
  const auto adj = adjacency_masks(g);
  for (Vertex v : vertices_of(g.vertices)) {
    if (std::popcount(adj[v]) != 2) return false;
  }
  return is_connected(g);
}

std::vector<Subgraph> blocks(const Subgraph& g) {
  const auto adj = g.adjacency();
  std::array<int, 64> disc{};
  std::array<int, 64> low{};
  int time = 0;
  std::vector<Edge> stack;
  std::vector<Subgraph> out;

  std::function<void(Vertex, Vertex)> dfs = [&](Vertex u, Vertex parent) {
    disc[u] = low[u] = ++time;
    for (Vertex w : adj[u]) {
      if (disc[w] == 0) {
        stack.push_back(make_edge(u, w));
        dfs(w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          std::vector<Edge> block_edges;
          const Edge stop = make_edge(u, w);
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            block_edges.push_back(e);
            if (e == stop) break;
          }
          out.push_back(make_subgraph(0, std::move(block_edges)));
        }
      } else if (w != parent && disc[w] < disc[u]) {
        stack.push_back(make_edge(u, w));
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (Vertex v : vertices_of(g.vertices)) {
    if (disc[v] == 0 && !adj[v].empty()) dfs(v, -1);
  }
  std::sort(out.begin(), out.end(), [](const Subgraph& a, const Subgraph& b) {
    return a.edges.front() < b.edges.front();
  });
  return out;
}

std::vector<Subgraph> blocks(const Graph& g) { return blocks(g.as_subgraph()); }

std::vector<Vertex> cut_vertices(const Subgraph& g) {
  std::array<int, 64> membership{};
  for (const auto& b : blocks(g)) {
    for (Vertex v : vertices_of(b.vertices)) ++membership[v];
  }
  std::vector<Vertex> out;
  for (Vertex v : vertices_of(g.vertices)) {
    if (membership[v] >= 2) out.push_back(v);
  }
  return out;
}

bool is_two_connected(const Subgraph& g) {
  return g.vertex_count() >= 3 && is_connected(g) && cut_vertices(g).empty();
}

// --- Series-parallel and minors ---------------------------------------------

bool is_series_parallel_block(const Subgraph& g) {
  if (g.edges.size() == 1 && g.vertex_count() == 2) return true;
  if (!is_two_connected(g)) return false;
  // Simple-graph view: parallel edges merge as soon as they appear.
  auto adj = adjacency_masks(g);
  VertexMask alive = g.vertices;
  bool progress = true;
  while (progress && std::popcount(alive) > 2) {
    progress = false;
    for (Vertex x : vertices_of(alive)) {
      if (std::popcount(adj[x]) != 2) continue;
      Vertex a = lowest_vertex(adj[x]);
      Vertex b = lowest_vertex(adj[x] & ~bit(a));
      adj[a] = (adj[a] & ~bit(x)) | bit(b);
      adj[b] = (adj[b] & ~bit(x)) | bit(a);
      adj[x] = 0;
      alive &= ~bit(x);
      progress = true;
      if (std::popcount(alive) <= 2) break;
    }
  }
  return std::popcount(alive) == 2;
}

bool is_k4_minor_free(const Subgraph& g) {
  for (const auto& b : blocks(g)) {
    if (b.edges.size() == 1) continue;
    if (!is_series_parallel_block(b)) return false;
  }
  return true;
}

bool is_k4_minor_free(const Graph& g) { return is_k4_minor_free(g.as_subgraph()); }

namespace {

Subgraph without_edge(const Subgraph& g, std::size_t index) {
  Subgraph out = g;
  out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

// Merges y into x.
Subgraph contract(const Subgraph& g, Vertex x, Vertex y) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges) {
    Vertex a = e.a == y ? x : e.a;
    Vertex b = e.b == y ? x : e.b;
    if (a != b) edges.push_back(make_edge(a, b));
  }
  return make_subgraph(g.vertices & ~bit(y), std::move(edges));
}

}  // namespace

std::optional<K4Minor> find_k4_minor(const Subgraph& g) {
  if (is_k4_minor_free(g)) return std::nullopt;
  Subgraph cur = g;
  std::array<VertexMask, 64> branch{};
  for (Vertex v : vertices_of(g.vertices)) branch[v] = bit(v);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.edges.size();) {
      Subgraph candidate = without_edge(cur, i);
      if (!is_k4_minor_free(candidate)) {
        cur = std::move(candidate);
        changed = true;
      } else {
        ++i;
      }
    }
    for (std::size_t i = 0; i < cur.edges.size(); ++i) {
      const Edge e = cur.edges[i];
      Subgraph candidate = contract(cur, e.a, e.b);
      if (!is_k4_minor_free(candidate)) {
        cur = std::move(candidate);
        branch[e.a] |= branch[e.b];
        branch[e.b] = 0;
        changed = true;
        break;
      }
    }
  }
  VertexMask used = 0;
  for (const auto& e : cur.edges) used |= bit(e.a) | bit(e.b);
  auto corners = vertices_of(used);
  if (corners.size() != 4 || cur.edges.size() != 6) {
    throw InternalError("minor reduction did not end at K4");
  }
  K4Minor out;
  for (std::size_t i = 0; i < 4; ++i) out.branch_sets[i] = branch[corners[i]];
  return out;
}

std::vector<Subgraph> bridges(const Subgraph& g, Vertex u, Vertex v) {
  if (u == v) throw PreconditionViolated("bridge poles must differ");
  if (!(g.vertices & bit(u)) || !(g.vertices & bit(v))) {
    throw PreconditionViolated("bridge poles must be vertices of the graph");
  }
  std::vector<Subgraph> out;
  if (g.has_edge(u, v)) out.push_back(make_subgraph(0, {make_edge(u, v)}));
  const VertexMask rest = g.vertices & ~bit(u) & ~bit(v);
  for (VertexMask comp : connected_components(g.induced(rest))) {
    std::vector<Edge> edges;
    for (const auto& e : g.edges) {
      if ((bit(e.a) | bit(e.b)) & comp) edges.push_back(e);
    }
    if (!edges.empty()) out.push_back(make_subgraph(comp, std::move(edges)));
  }
  return out;
}

ParallelPoles find_parallel3_poles(const Subgraph& g) {
  if (is_cycle(g)) throw NoSuchPoles("graph is a cycle");
  if (!is_two_connected(g) || !is_series_parallel_block(g)) {
    throw NoSuchPoles("graph is not a 2-connected series-parallel graph");
  }
  const auto vs = vertices_of(g.vertices);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      auto bs = bridges(g, vs[i], vs[j]);
      if (bs.size() >= 3) return {vs[i], vs[j], std::move(bs)};
    }
  }
  throw NoSuchPoles("no vertex pair has three bridges");
}

}  // namespace markov_atlas
