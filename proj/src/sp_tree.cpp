#include "markov_atlas/sp_tree.hpp"

#include <algorithm>
#include <tuple>

#include "markov_atlas/error.hpp"

namespace markov_atlas {

SPTree SPTree::leaf(Vertex u, Vertex v) {
  if (u == v) throw PreconditionViolated("leaf poles must differ");
  return SPTree{Kind::Leaf, u, v, {}};
}

SPTree SPTree::serial(std::vector<SPTree> children) {
  if (children.size() < 2) throw PreconditionViolated("serial node needs two children");
  for (std::size_t i = 1; i < children.size(); ++i) {
    if (children[i - 1].v != children[i].u) {
      throw PreconditionViolated("serial children must chain pole to pole");
    }
  }
  Vertex u = children.front().u;
  Vertex v = children.back().v;
  return SPTree{Kind::Serial, u, v, std::move(children)};
}

SPTree SPTree::parallel(std::vector<SPTree> children) {
  if (children.size() < 2) throw PreconditionViolated("parallel node needs two children");
  for (const auto& c : children) {
    if (c.u != children.front().u || c.v != children.front().v) {
      throw PreconditionViolated("parallel children must share both poles");
    }
  }
  Vertex u = children.front().u;
  Vertex v = children.front().v;
  return SPTree{Kind::Parallel, u, v, std::move(children)};
}

VertexMask SPTree::vertices() const {
  VertexMask m = bit(u) | bit(v);
  for (const auto& c : children) m |= c.vertices();
  return m;
}

std::vector<Edge> SPTree::edges() const {
  std::vector<Edge> out;
  if (kind == Kind::Leaf) {
    out.push_back(make_edge(u, v));
  } else {
    for (const auto& c : children) {
      auto sub = c.edges();
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t SPTree::edge_count() const { return edges().size(); }

Subgraph SPTree::realize() const { return make_subgraph(vertices(), edges()); }

SPTree SPTree::reversed() const {
  SPTree out{kind, v, u, {}};
  out.children.reserve(children.size());
  for (const auto& c : children) out.children.push_back(c.reversed());
  if (kind == Kind::Serial) std::reverse(out.children.begin(), out.children.end());
  return out;
}

std::vector<Vertex> SPTree::join_vertices() const {
  std::vector<Vertex> out;
  if (kind == Kind::Serial) {
    for (std::size_t i = 0; i + 1 < children.size(); ++i) out.push_back(children[i].v);
  }
  return out;
}

const char* to_string(SPTree::Kind kind) {
  switch (kind) {
    case SPTree::Kind::Leaf:
      return "leaf";
    case SPTree::Kind::Serial:
      return "serial";
    case SPTree::Kind::Parallel:
      return "parallel";
  }
  return "?";
}

SPTree canonicalize(SPTree t) {
  if (t.kind == SPTree::Kind::Leaf) return t;
  std::vector<SPTree> flat;
  for (auto& c : t.children) {
    SPTree cc = canonicalize(std::move(c));
    if (cc.kind == t.kind) {
      for (auto& g : cc.children) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(cc));
    }
  }
  if (t.kind == SPTree::Kind::Parallel) {
    auto key = [](const SPTree& s) {
      return std::make_tuple(lowest_vertex(s.vertices()), s.edge_count(), s.edges());
    };
    std::stable_sort(flat.begin(), flat.end(),
                     [&](const SPTree& a, const SPTree& b) { return key(a) < key(b); });
  }
  t.children = std::move(flat);
  return t;
}

namespace {

struct MultiEdge {
  Vertex a;
  Vertex b;
  SPTree tree;  // oriented a -> b
  bool alive = true;
};

SPTree oriented(const MultiEdge& e, Vertex from) {
  return e.a == from ? e.tree : e.tree.reversed();
}

Vertex other_end(const MultiEdge& e, Vertex x) { return e.a == x ? e.b : e.a; }

std::optional<SPTree> reduce_with_poles(const Subgraph& g, Vertex s, Vertex t) {
  std::vector<MultiEdge> me;
  me.reserve(g.edges.size());
  for (const auto& e : g.edges) me.push_back({e.a, e.b, SPTree::leaf(e.a, e.b)});

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < me.size(); ++i) {
      if (!me[i].alive) continue;
      for (std::size_t j = i + 1; j < me.size(); ++j) {
        if (!me[j].alive) continue;
        const bool same = (me[i].a == me[j].a && me[i].b == me[j].b) ||
                          (me[i].a == me[j].b && me[i].b == me[j].a);
        if (!same) continue;
        me[i].tree = SPTree::parallel({me[i].tree, oriented(me[j], me[i].a)});
        me[j].alive = false;
        progress = true;
      }
    }
    for (Vertex x : vertices_of(g.vertices)) {
      if (x == s || x == t) continue;
      std::vector<std::size_t> incident;
      for (std::size_t i = 0; i < me.size(); ++i) {
        if (me[i].alive && (me[i].a == x || me[i].b == x)) incident.push_back(i);
      }
      if (incident.size() != 2) continue;
      const Vertex p = other_end(me[incident[0]], x);
      const Vertex q = other_end(me[incident[1]], x);
      if (p == q) continue;  // merged by the parallel pass next round
      SPTree first = oriented(me[incident[0]], p);
      SPTree second = oriented(me[incident[1]], x);
      me[incident[0]] = {p, q, SPTree::serial({std::move(first), std::move(second)})};
      me[incident[1]].alive = false;
      progress = true;
    }
  }
  const MultiEdge* last = nullptr;
  for (const auto& e : me) {
    if (!e.alive) continue;
    if (last != nullptr) return std::nullopt;
    last = &e;
  }
  if (last == nullptr) return std::nullopt;
  if (!((last->a == s && last->b == t) || (last->a == t && last->b == s))) return std::nullopt;
  return canonicalize(oriented(*last, s));
}

}  // namespace

SPTree sp_decompose(const Subgraph& g, std::optional<std::pair<Vertex, Vertex>> poles) {
  if (g.edges.empty()) throw NotSeriesParallel("graph has no edges");
  VertexMask touched = 0;
  for (const auto& e : g.edges) touched |= bit(e.a) | bit(e.b);
  if (touched != g.vertices || !is_connected(g)) {
    throw NotSeriesParallel("graph must be connected without isolated vertices");
  }
  if (poles) {
    auto [s, t] = *poles;
    if (s == t || !(g.vertices & bit(s)) || !(g.vertices & bit(t))) {
      throw PreconditionViolated("poles must be two distinct vertices of the graph");
    }
    if (auto tree = reduce_with_poles(g, s, t)) return *tree;
    throw NotSeriesParallel("no series-parallel decomposition with poles " + std::to_string(s) +
                            ", " + std::to_string(t));
  }
  for (const auto& e : g.edges) {
    if (auto tree = reduce_with_poles(g, e.a, e.b)) return *tree;
  }
  const auto vs = vertices_of(g.vertices);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (g.has_edge(vs[i], vs[j])) continue;
      if (auto tree = reduce_with_poles(g, vs[i], vs[j])) return *tree;
    }
  }
  throw NotSeriesParallel("graph is not series-parallel");
}

}  // namespace markov_atlas
