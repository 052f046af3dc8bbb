#include "markov_atlas/sp_connect.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"

namespace markov_atlas {

std::vector<TableVector> MoveSequence::steps() const {
  std::vector<TableVector> out;
  for (std::size_t k = 1; k < states.size(); ++k) out.push_back(states[k] - states[k - 1]);
  return out;
}

std::vector<Count> MoveSequence::norms() const {
  std::vector<Count> out;
  for (std::size_t k = 1; k < states.size(); ++k) {
    out.push_back((states[k] - states[k - 1]).l1_norm());
  }
  return out;
}

SequenceCheck check_sequence(const MoveSequence& seq, const TableVector& from,
                             const TableVector& to, Count max_step_norm) {
  SequenceCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.violations.push_back(std::move(msg));
  };
  if (seq.states.empty()) {
    fail("sequence has no states");
    return out;
  }
  if (seq.states.front() != from) fail("first state differs from the start table");
  if (seq.states.back() != to) fail("last state differs from the target table");
  const MarginalSet reference = graph_marginals(from, seq.graph);
  for (std::size_t k = 0; k < seq.states.size(); ++k) {
    const auto& z = seq.states[k];
    if (!z.is_nonnegative()) fail("state " + std::to_string(k) + " has a negative entry");
    if (graph_marginals(z, seq.graph) != reference) {
      fail("state " + std::to_string(k) + " changes the marginals");
    }
  }
  VertexMask pole_mask = 0;
  if (seq.poles) pole_mask = bit(seq.poles->first) | bit(seq.poles->second);
  for (std::size_t k = 1; k < seq.states.size(); ++k) {
    StepAnnotation a;
    a.norm = (seq.states[k] - seq.states[k - 1]).l1_norm();
    a.nonnegative = seq.states[k].is_nonnegative();
    a.marginals_preserved = graph_marginals(seq.states[k], seq.graph) == reference;
    if (seq.poles) {
      a.pole_marginal_changed =
          project(seq.states[k], pole_mask) != project(seq.states[k - 1], pole_mask);
    }
    if (a.norm > max_step_norm) {
      fail("step " + std::to_string(k) + " has norm " + std::to_string(a.norm));
    }
    if (a.norm == 0) fail("step " + std::to_string(k) + " is empty");
    if (a.pole_marginal_changed && a.norm != 4) {
      fail("step " + std::to_string(k) + " changes the pole marginal with norm " +
           std::to_string(a.norm));
    }
    out.steps.push_back(a);
  }
  return out;
}

namespace {

using States = std::vector<TableVector>;

void require_nonnegative(const TableVector& z, const char* what) {
  if (!z.is_nonnegative()) {
    throw PreconditionViolated(std::string(what) + " must be non-negative");
  }
}

// Units of z grouped by their restriction to y.
std::map<Labeling, std::vector<Labeling>> units_by_class(const TableVector& z, VertexMask y) {
  std::map<Labeling, std::vector<Labeling>> out;
  for (auto [a, c] : z.entries()) {
    auto& bucket = out[a & y];
    bucket.insert(bucket.end(), static_cast<std::size_t>(c), a);
  }
  return out;
}

TableVector entrywise_min(const TableVector& a, const TableVector& b) {
  TableVector out(a.ground());
  for (auto [lab, c] : a.entries()) out.add(lab, std::min(c, b.at(lab)));
  return out;
}

// Fiber-product lift: pairs the units of a (over x1) and b (over x2) within
// each class of the shared vertices, in ascending order.
TableVector lift(const TableVector& a, const TableVector& b) {
  const VertexMask y = a.ground() & b.ground();
  auto ua = units_by_class(a, y);
  auto ub = units_by_class(b, y);
  TableVector out(a.ground() | b.ground());
  for (auto& [cls, list] : ua) {
    auto& other = ub[cls];
    if (other.size() != list.size()) throw InternalError("lift: class sizes differ");
    for (std::size_t i = 0; i < list.size(); ++i) out.add(list[i] | other[i], 1);
  }
  return out;
}

void append(States& out, const States& tail) {
  for (const auto& z : tail) {
    if (out.empty() || out.back() != z) out.push_back(z);
  }
}

void push_state(States& out, TableVector z) {
  if (out.empty() || out.back() != z) out.push_back(std::move(z));
}

Count pole_cell00(const TableVector& z, VertexMask uv) { return project(z, uv).at(0); }

}  // namespace

TableVector glue_cutsame(const TableVector& z, const TableVector& zbar, VertexMask x1,
                         VertexMask x2) {
  const VertexMask ground = z.ground();
  if ((x1 | x2) != ground) throw GroundSetMismatch("cutsame: X1 and X2 must cover the ground set");
  if (zbar.ground() != x1) throw GroundSetMismatch("cutsame: replacement must live over X1");
  require_nonnegative(z, "cutsame: z");
  require_nonnegative(zbar, "cutsame: replacement");
  const VertexMask y = x1 & x2;
  if (project(z, y) != project(zbar, y)) {
    throw PreconditionViolated("cutsame: projections onto the shared set differ");
  }
  const VertexMask outside = ground & ~x1;
  auto z_units = units_by_class(z, y);
  auto bar_units = units_by_class(zbar, y);
  TableVector out(ground);
  for (auto& [cls, units] : z_units) {
    std::map<Labeling, Count> wanted;
    for (Labeling p : bar_units[cls]) ++wanted[p];
    std::vector<Labeling> changed;
    for (Labeling a : units) {
      auto it = wanted.find(a & x1);
      if (it != wanted.end() && it->second > 0) {
        --it->second;
        out.add(a, 1);
      } else {
        changed.push_back(a);
      }
    }
    std::size_t i = 0;
    for (auto [p, c] : wanted) {
      for (Count r = 0; r < c; ++r) out.add(p | (changed.at(i++) & outside), 1);
    }
    if (i != changed.size()) throw InternalError("cutsame: unmatched units remain");
  }
  return out;
}

MoveSequence glue_swaps(const TableVector& z, const TableVector& target, VertexMask x1,
                        VertexMask x2) {
  const VertexMask ground = z.ground();
  if (target.ground() != ground) throw GroundSetMismatch("swaps: ground sets differ");
  if ((x1 | x2) != ground) throw GroundSetMismatch("swaps: X1 and X2 must cover the ground set");
  require_nonnegative(z, "swaps: start");
  require_nonnegative(target, "swaps: target");
  if (project(z, x1) != project(target, x1) || project(z, x2) != project(target, x2)) {
    throw PreconditionViolated("swaps: projections onto X1 and X2 must agree");
  }
  const VertexMask y = x1 & x2;
  const VertexMask side1 = x1 & ~y;
  const VertexMask side2 = x2 & ~y;

  MoveSequence seq;
  seq.graph = Subgraph{ground, {}};
  seq.states.push_back(z);
  TableVector cur = z;
  const Count budget = (z - target).l1_norm();
  for (Count guard = 0;; ++guard) {
    const TableVector diff = cur - target;
    if (diff.empty()) break;
    if (guard > budget) throw InternalError("swaps: no progress");
    // A surplus unit (y, a1, a2); row a1 has a deficit at some b2 and column
    // b2 has a surplus at some b1 != a1.
    Labeling surplus = 0;
    for (auto [lab, c] : diff.entries()) {
      if (c > 0) {
        surplus = lab;
        break;
      }
    }
    const Labeling cls = surplus & y;
    const Labeling a1 = surplus & side1;
    const Labeling a2 = surplus & side2;
    std::optional<Labeling> b2;
    for (auto [lab, c] : diff.entries()) {
      if (c < 0 && (lab & (y | side1)) == (cls | a1)) {
        b2 = lab & side2;
        break;
      }
    }
    if (!b2) throw InternalError("swaps: row deficit not found");
    std::optional<Labeling> b1;
    for (auto [lab, c] : diff.entries()) {
      if (c > 0 && (lab & (y | side2)) == (cls | *b2)) {
        const Labeling cand = lab & side1;
        if (!b1 || diff.at(cls | cand | a2) < 0) b1 = cand;
        if (diff.at(cls | cand | a2) < 0) break;
      }
    }
    if (!b1 || *b1 == a1) throw InternalError("swaps: column surplus not found");
    cur.add(cls | a1 | a2, -1);
    cur.add(cls | *b1 | *b2, -1);
    cur.add(cls | a1 | *b2, 1);
    cur.add(cls | *b1 | a2, 1);
    seq.states.push_back(cur);
  }
  return seq;
}

std::pair<TableVector, TableVector> glue_cutchange(const TableVector& z1, const TableVector& z1p,
                                                   const TableVector& z2,
                                                   const TableVector& z2p) {
  const VertexMask x1 = z1.ground();
  const VertexMask x2 = z2.ground();
  if (z1p.ground() != x1 || z2p.ground() != x2) {
    throw GroundSetMismatch("cutchange: paired vectors must share a ground set");
  }
  require_nonnegative(z1, "cutchange: z1");
  require_nonnegative(z1p, "cutchange: z1'");
  require_nonnegative(z2, "cutchange: z2");
  require_nonnegative(z2p, "cutchange: z2'");
  const VertexMask y = x1 & x2;
  if (project(z1, y) != project(z2, y) || project(z1p, y) != project(z2p, y)) {
    throw PreconditionViolated("cutchange: projections onto the shared set differ");
  }
  const Count d = (project(z1, y) - project(z1p, y)).l1_norm();
  if ((z1 - z1p).l1_norm() != d || (z2 - z2p).l1_norm() != d) {
    throw PreconditionViolated("cutchange: distances must equal the shared-set distance");
  }
  // Tight distances force the changed parts to project without cancellation,
  // so common, removed and added parts glue separately.
  const TableVector c1 = entrywise_min(z1, z1p);
  const TableVector c2 = entrywise_min(z2, z2p);
  const TableVector p1 = z1 - c1;
  const TableVector m1 = z1p - c1;
  const TableVector p2 = z2 - c2;
  const TableVector m2 = z2p - c2;
  if (project(c1, y) != project(c2, y) || project(p1, y) != project(p2, y) ||
      project(m1, y) != project(m2, y)) {
    throw InternalError("cutchange: part projections disagree");
  }
  const TableVector common = lift(c1, c2);
  return {common + lift(p1, p2), common + lift(m1, m2)};
}

MoveSequence connect_cycle(const Subgraph& cycle, const TableVector& z, const TableVector& target,
                           const ConnectOptions& options) {
  if (!is_cycle(cycle)) throw PreconditionViolated("connect_cycle needs a cycle");
  require_nonnegative(z, "start table");
  require_nonnegative(target, "target table");
  const MarginalSet m = graph_marginals(z, cycle);
  if (graph_marginals(target, cycle) != m) {
    throw PreconditionViolated("tables have different marginals");
  }
  MoveSequence seq{cycle, std::nullopt, {z}};
  if (z == target) return seq;
  const Fiber f = enumerate_fiber(cycle, m, options.limits);
  const auto start = f.index_of(z);
  const auto goal = f.index_of(target);
  if (!start || !goal) throw InternalError("endpoint missing from the enumerated fiber");
  std::vector<std::size_t> prev(f.size(), f.size());
  std::deque<std::size_t> queue{*start};
  prev[*start] = *start;
  while (!queue.empty() && prev[*goal] == f.size()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (prev[j] != f.size()) continue;
      if ((f.elements[i] - f.elements[j]).l1_norm() <= 8) {
        prev[j] = i;
        queue.push_back(j);
      }
    }
  }
  if (prev[*goal] == f.size()) {
    throw InternalError("cycle fiber is not connected by moves of norm at most 8");
  }
  std::vector<std::size_t> path;
  for (std::size_t i = *goal; i != *start; i = prev[i]) path.push_back(i);
  seq.states.clear();
  seq.states.push_back(z);
  for (auto it = path.rbegin(); it != path.rend(); ++it) seq.states.push_back(f.elements[*it]);
  return seq;
}

namespace {

class Connector {
 public:
  explicit Connector(const ConnectOptions& options) : options_(options) {}

  States sp(const SPTree& node, const TableVector& z, const TableVector& target) {
    if (z == target) return {z};
    States out;
    switch (node.kind) {
      case SPTree::Kind::Leaf:
        throw InternalError("distinct tables over a single edge cannot share marginals");
      case SPTree::Kind::Serial:
        out = serial(node, z, target);
        break;
      case SPTree::Kind::Parallel:
        out = parallel(node, z, target);
        break;
    }
    if (options_.verify) {
      verify(MoveSequence{node.realize(), std::make_pair(node.u, node.v), out}, z, target);
    }
    return out;
  }

  States graph(const Subgraph& g, const TableVector& z, const TableVector& target) {
    if (z == target) return {z};
    States out;
    const auto comps = connected_components(g);
    if (comps.size() > 1) {
      const VertexMask x1 = comps.front();
      out = split(g.induced(x1), g.induced(g.vertices & ~x1), z, target);
    } else if (g.edges.empty()) {
      out = lone_vertex(z, target);
    } else if (auto cuts = cut_vertices(g); !cuts.empty()) {
      const Vertex w = cuts.front();
      const VertexMask rest = g.vertices & ~bit(w);
      const VertexMask side = connected_components(g.induced(rest)).front();
      out = split(g.induced(side | bit(w)), g.induced((rest & ~side) | bit(w)), z, target);
    } else if (g.edges.size() == 1) {
      throw InternalError("distinct tables over a single edge cannot share marginals");
    } else {
      return sp(sp_decompose(g), z, target);
    }
    if (options_.verify) verify(MoveSequence{g, std::nullopt, out}, z, target);
    return out;
  }

 private:
  void verify(const MoveSequence& seq, const TableVector& z, const TableVector& target) const {
    auto check = check_sequence(seq, z, target);
    if (!check.ok) throw InternalError("connector invariant failed: " + check.violations.front());
  }

  // Walks X1 along s1 holding the complement fixed; `keep` widens the
  // complement side of each glue.
  template <typename KeepFn>
  void follow(States& out, TableVector& cur, const States& path, VertexMask x_side,
              VertexMask x_other, KeepFn keep) {
    for (std::size_t k = 1; k < path.size(); ++k) {
      cur = glue_cutsame(cur, path[k], x_side, x_other | keep(path[k - 1], path[k]));
      push_state(out, cur);
    }
  }

  void finish_with_swaps(States& out, const TableVector& cur, const TableVector& target,
                         VertexMask x1, VertexMask x2) {
    append(out, glue_swaps(cur, target, x1, x2).states);
  }

  States serial(const SPTree& node, const TableVector& z, const TableVector& target) {
    const SPTree& first = node.children.front();
    SPTree rest = node.children.size() == 2
                      ? node.children[1]
                      : SPTree::serial({node.children.begin() + 1, node.children.end()});
    const Vertex u = node.u;
    const Vertex w = first.v;
    const Vertex v = node.v;
    const VertexMask x1 = first.vertices();
    const VertexMask x2 = rest.vertices();
    const VertexMask uw = bit(u) | bit(w);
    const VertexMask wv = bit(w) | bit(v);

    States out{z};
    TableVector cur = z;
    const States s1 = sp(first, project(z, x1), project(target, x1));
    // While the uw marginal is unchanged, u joins the fixed side so the pole
    // marginal stays put; otherwise the inner step has norm 4.
    follow(out, cur, s1, x1, x2, [&](const TableVector& a, const TableVector& b) {
      return project(a, uw) == project(b, uw) ? bit(u) : VertexMask{0};
    });
    const States s2 = sp(rest, project(cur, x2), project(target, x2));
    follow(out, cur, s2, x2, x1, [&](const TableVector& a, const TableVector& b) {
      return project(a, wv) == project(b, wv) ? bit(v) : VertexMask{0};
    });
    finish_with_swaps(out, cur, target, x1, x2);
    return out;
  }

  States parallel(const SPTree& node, const TableVector& z, const TableVector& target) {
    const Vertex u = node.u;
    const Vertex v = node.v;
    std::vector<SPTree> others;
    bool has_edge = false;
    for (const auto& c : node.children) {
      if (c.is_leaf()) {
        has_edge = true;
      } else {
        others.push_back(c);
      }
    }
    const VertexMask uv = bit(u) | bit(v);
    if (has_edge && others.size() == 1) return two_bridges(node, z, target);
    if (has_edge || project(z, uv) == project(target, uv)) {
      // With the pole marginal fixed (edge present or added), glue two
      // halves that both carry the edge uv.
      return with_pole_edge(u, v, others, z, target);
    }
    return across_pole_change(u, v, others, z, target);
  }

  States with_pole_edge(Vertex u, Vertex v, const std::vector<SPTree>& others,
                        const TableVector& z, const TableVector& target) {
    SPTree a = canonicalize(SPTree::parallel({SPTree::leaf(u, v), others.front()}));
    std::vector<SPTree> tail{SPTree::leaf(u, v)};
    tail.insert(tail.end(), others.begin() + 1, others.end());
    SPTree b = canonicalize(SPTree::parallel(std::move(tail)));
    const VertexMask x1 = a.vertices();
    const VertexMask x2 = b.vertices();

    States out{z};
    TableVector cur = z;
    const auto none = [](const TableVector&, const TableVector&) { return VertexMask{0}; };
    const States s1 = sp(a, project(z, x1), project(target, x1));
    follow(out, cur, s1, x1, x2, none);
    const States s2 = sp(b, project(cur, x2), project(target, x2));
    follow(out, cur, s2, x2, x1, none);
    finish_with_swaps(out, cur, target, x1, x2);
    return out;
  }

  // No edge uv and the pole marginal differs: step the pole marginal through
  // its unique monotone path, lifting the norm-4 pole changes of both halves.
  States across_pole_change(Vertex u, Vertex v, const std::vector<SPTree>& children,
                            const TableVector& z, const TableVector& target) {
    const SPTree& first = children.front();
    SPTree rest = children.size() == 2
                      ? children[1]
                      : SPTree::parallel({children.begin() + 1, children.end()});
    const VertexMask x1 = first.vertices();
    const VertexMask x2 = rest.vertices();
    const VertexMask uv = bit(u) | bit(v);

    const States s1 = sp(first, project(z, x1), project(target, x1));
    const States s2 = sp(rest, project(z, x2), project(target, x2));
    const Count base = pole_cell00(z, uv);
    const Count goal = pole_cell00(target, uv);
    const Count sign = goal >= base ? 1 : -1;
    const std::size_t steps = static_cast<std::size_t>((goal - base) * sign);
    if (steps == 0) throw InternalError("pole marginals differ off the interpolation line");

    auto crossings = [&](const States& s) {
      std::vector<std::size_t> at(steps + 1, 0);
      std::size_t next = 1;
      for (std::size_t k = 1; k < s.size() && next <= steps; ++k) {
        const Count before = (pole_cell00(s[k - 1], uv) - base) * sign;
        const Count after = (pole_cell00(s[k], uv) - base) * sign;
        if (before == static_cast<Count>(next) - 1 && after == static_cast<Count>(next)) {
          at[next++] = k;
        }
      }
      if (next <= steps) throw InternalError("pole marginal path not found in sub-sequence");
      return at;
    };
    const auto k1 = crossings(s1);
    const auto k2 = crossings(s2);

    std::vector<TableVector> arrive(steps + 1);  // pole marginal at position r
    std::vector<TableVector> leave(steps + 1);   // last table before moving to r + 1
    arrive[0] = z;
    leave[steps] = target;
    for (std::size_t r = 1; r <= steps; ++r) {
      auto [before, after] =
          glue_cutchange(s1[k1[r] - 1], s1[k1[r]], s2[k2[r] - 1], s2[k2[r]]);
      leave[r - 1] = std::move(before);
      arrive[r] = std::move(after);
    }
    States out{z};
    for (std::size_t r = 0; r <= steps; ++r) {
      if (r > 0) push_state(out, arrive[r]);
      append(out, with_pole_edge(u, v, children, arrive[r], leave[r]));
    }
    return out;
  }

  // Edge uv plus a single other bridge: a cycle, or re-decompose at poles with
  // three bridges. The edge uv keeps the original pole marginal constant.
  States two_bridges(const SPTree& node, const TableVector& z, const TableVector& target) {
    const Subgraph g = node.realize();
    if (is_cycle(g)) return connect_cycle(g, z, target, options_).states;
    const ParallelPoles poles = find_parallel3_poles(g);
    const SPTree t = sp_decompose(g, std::make_pair(poles.u, poles.v));
    if (t.kind != SPTree::Kind::Parallel || t.children.size() < 3) {
      throw InternalError("re-decomposition did not yield three bridges");
    }
    return sp(t, z, target);
  }

  States split(const Subgraph& g1, const Subgraph& g2, const TableVector& z,
               const TableVector& target) {
    const VertexMask x1 = g1.vertices;
    const VertexMask x2 = g2.vertices;
    const auto none = [](const TableVector&, const TableVector&) { return VertexMask{0}; };
    States out{z};
    TableVector cur = z;
    const States s1 = graph(g1, project(z, x1), project(target, x1));
    follow(out, cur, s1, x1, x2, none);
    const States s2 = graph(g2, project(cur, x2), project(target, x2));
    follow(out, cur, s2, x2, x1, none);
    finish_with_swaps(out, cur, target, x1, x2);
    return out;
  }

  // Vertex with no incident edge: move one unit between its two labels at a
  // time.
  States lone_vertex(const TableVector& z, const TableVector& target) {
    const Labeling one = z.ground();
    TableVector cur = z;
    States out{z};
    Count delta = target.at(one) - cur.at(one);
    while (delta != 0) {
      const Count dir = delta > 0 ? 1 : -1;
      cur.add(one, dir);
      cur.add(0, -dir);
      out.push_back(cur);
      delta -= dir;
    }
    return out;
  }

  ConnectOptions options_;
};

void require_same_fiber(const Subgraph& g, const TableVector& z, const TableVector& target) {
  require_nonnegative(z, "start table");
  require_nonnegative(target, "target table");
  if (graph_marginals(z, g) != graph_marginals(target, g)) {
    throw PreconditionViolated("tables have different marginals");
  }
}

}  // namespace

MoveSequence connect_sp(const SPTree& tree, const TableVector& z, const TableVector& target,
                        const ConnectOptions& options) {
  const Subgraph g = tree.realize();
  require_same_fiber(g, z, target);
  Connector c(options);
  MoveSequence seq{g, std::make_pair(tree.u, tree.v), c.sp(tree, z, target)};
  if (options.verify) {
    auto check = check_sequence(seq, z, target);
    if (!check.ok) throw InternalError("connector invariant failed: " + check.violations.front());
  }
  return seq;
}

MoveSequence connect_graph(const Subgraph& g, const TableVector& z, const TableVector& target,
                           const ConnectOptions& options) {
  if (!is_k4_minor_free(g)) throw NotK4MinorFree("graph contains K4 as a minor");
  require_same_fiber(g, z, target);
  if (is_two_connected(g)) {
    MoveSequence seq = connect_sp(sp_decompose(g), z, target, options);
    return seq;
  }
  Connector c(options);
  MoveSequence seq{g, std::nullopt, c.graph(g, z, target)};
  if (options.verify) {
    auto check = check_sequence(seq, z, target);
    if (!check.ok) throw InternalError("connector invariant failed: " + check.violations.front());
  }
  return seq;
}

MoveSequence connect_graph(const Graph& g, const TableVector& z, const TableVector& target,
                           const ConnectOptions& options) {
  return connect_graph(g.as_subgraph(), z, target, options);
}

}  // namespace markov_atlas
