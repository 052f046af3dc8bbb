#include "markov_atlas/triangulation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"

namespace markov_atlas {

namespace {

Labeling face_labeling(const Face& f) { return bit(f[0]) | bit(f[1]) | bit(f[2]); }

std::array<Edge, 3> face_edges(const Face& f) {
  return {make_edge(f[0], f[1]), make_edge(f[0], f[2]), make_edge(f[1], f[2])};
}

VertexMask all_vertices(int n) { return n == 0 ? 0 : (VertexMask{1} << n) - 1; }

std::vector<VertexMask> neighbor_masks(const Triangulation& t) {
  std::vector<VertexMask> nb(static_cast<std::size_t>(t.vertex_count()), 0);
  for (const auto& e : t.edges()) {
    nb[e.a] |= bit(e.b);
    nb[e.b] |= bit(e.a);
  }
  return nb;
}

bool skeleton_has_k4(const Triangulation& t) {
  const auto nb = neighbor_masks(t);
  for (const auto& e : t.edges()) {
    // Common neighbours above b that are adjacent to each other.
    const VertexMask common = nb[e.a] & nb[e.b] & ~((bit(e.b) << 1) - 1);
    for (Vertex c : vertices_of(common)) {
      if ((nb[c] & common) != 0) return true;
    }
  }
  return false;
}

}  // namespace

Triangulation::Triangulation(std::vector<std::string> labels, std::vector<Face> faces)
    : labels_(std::move(labels)), faces_(std::move(faces)) {
  const int n = vertex_count();
  if (n > kMaxVertices) throw InvalidTriangulation("too many vertices");
  std::set<Face> seen;
  std::map<Edge, int> incidence;
  for (auto& f : faces_) {
    std::sort(f.begin(), f.end());
    for (Vertex x : f) {
      if (x < 0 || x >= n) throw InvalidTriangulation("face refers to an unknown vertex");
    }
    if (f[0] == f[1] || f[1] == f[2]) {
      throw InvalidTriangulation("face needs three distinct vertices");
    }
    if (!seen.insert(f).second) throw InvalidTriangulation("face listed twice");
    for (const Edge& e : face_edges(f)) ++incidence[e];
  }
  for (auto [e, count] : incidence) {
    if (count != 2) {
      throw InvalidTriangulation("edge " + labels_[e.a] + " " + labels_[e.b] + " lies in " +
                                 std::to_string(count) + " faces, expected 2");
    }
    edges_.push_back(e);
  }
  VertexMask used = 0;
  for (const auto& f : faces_) used |= face_labeling(f);
  if (used != all_vertices(n)) throw InvalidTriangulation("vertex not on any face");
}

Subgraph Triangulation::skeleton() const { return {all_vertices(vertex_count()), edges_}; }

Triangulation load_triangulation(std::string_view text) {
  std::vector<std::string> labels;
  std::map<std::string, Vertex, std::less<>> index;
  std::vector<Face> faces;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (words.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected three vertices per face");
    }
    Face f{};
    for (int i = 0; i < 3; ++i) {
      auto [it, inserted] = index.try_emplace(words[i], static_cast<Vertex>(labels.size()));
      if (inserted) labels.push_back(words[i]);
      f[i] = it->second;
    }
    faces.push_back(f);
  }
  if (faces.empty()) throw ParseError("triangulation has no faces");
  return Triangulation(std::move(labels), std::move(faces));
}

std::string format_triangulation(const Triangulation& t) {
  std::ostringstream out;
  for (const auto& f : t.faces()) {
    out << t.labels()[f[0]] << ' ' << t.labels()[f[1]] << ' ' << t.labels()[f[2]] << '\n';
  }
  return out.str();
}

bool is_clean(const Triangulation& t) {
  std::set<Face> faces(t.faces().begin(), t.faces().end());
  const auto nb = neighbor_masks(t);
  for (const auto& e : t.edges()) {
    const VertexMask common = nb[e.a] & nb[e.b] & ~((bit(e.b) << 1) - 1);
    for (Vertex c : vertices_of(common)) {
      if (!faces.count(Face{e.a, e.b, c})) return false;
    }
  }
  return true;
}

std::vector<FaceColor> two_face_coloring(const Triangulation& t) {
  const auto& faces = t.faces();
  std::map<Edge, std::vector<int>> by_edge;
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    for (const Edge& e : face_edges(faces[i])) by_edge[e].push_back(i);
  }
  std::vector<int> color(faces.size(), -1);
  for (std::size_t start = 0; start < faces.size(); ++start) {
    if (color[start] >= 0) continue;
    color[start] = 0;
    std::deque<int> queue{static_cast<int>(start)};
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (const Edge& e : face_edges(faces[f])) {
        for (int g : by_edge[e]) {
          if (g == f) continue;
          if (color[g] < 0) {
            color[g] = 1 - color[f];
            queue.push_back(g);
          } else if (color[g] == color[f]) {
            throw NotColorable("dual graph has an odd cycle");
          }
        }
      }
    }
  }
  std::vector<FaceColor> out;
  out.reserve(color.size());
  for (int c : color) out.push_back(c == 0 ? FaceColor::Red : FaceColor::Blue);
  return out;
}

std::pair<TableVector, TableVector> red_blue_vectors(const Triangulation& t,
                                                     const std::vector<FaceColor>& coloring) {
  if (coloring.size() != t.faces().size()) {
    throw PreconditionViolated("coloring size differs from the face count");
  }
  const VertexMask ground = all_vertices(t.vertex_count());
  TableVector red(ground);
  TableVector blue(ground);
  for (std::size_t i = 0; i < coloring.size(); ++i) {
    (coloring[i] == FaceColor::Red ? red : blue).add(face_labeling(t.faces()[i]), 1);
  }
  return {red, blue};
}

Triangulation double_wheel(int cycle_length) {
  if (cycle_length < 3) throw PreconditionViolated("double wheel needs a cycle of length >= 3");
  if (cycle_length + 2 > kMaxVertices) throw PreconditionViolated("double wheel too large");
  std::vector<std::string> labels;
  for (int i = 1; i <= cycle_length; ++i) labels.push_back("v" + std::to_string(i));
  labels.push_back("a");
  labels.push_back("b");
  const Vertex a = cycle_length;
  const Vertex b = cycle_length + 1;
  std::vector<Face> faces;
  for (Vertex i = 0; i < cycle_length; ++i) {
    const Vertex j = (i + 1) % cycle_length;
    faces.push_back({i, j, a});
    faces.push_back({i, j, b});
  }
  return Triangulation(std::move(labels), std::move(faces));
}

namespace {

struct CoverSearch {
  const Triangulation& t;
  std::vector<std::vector<int>> faces_of_edge;
  std::vector<std::array<int, 3>> edges_of_face;
  std::vector<char> covered;
  std::vector<int> chosen;
  std::size_t nodes = 0;
  std::size_t budget;
  std::size_t max_covers;
  FaceCover out;

  bool usable(int f) const {
    for (int e : edges_of_face[f]) {
      if (covered[e]) return false;
    }
    return true;
  }

  void run() {
    if (++nodes > budget || out.covers.size() >= max_covers) {
      out.complete = false;
      return;
    }
    int best = -1;
    std::size_t best_count = SIZE_MAX;
    for (std::size_t e = 0; e < covered.size(); ++e) {
      if (covered[e]) continue;
      std::size_t count = 0;
      for (int f : faces_of_edge[e]) count += usable(f) ? 1 : 0;
      if (count < best_count) {
        best = static_cast<int>(e);
        best_count = count;
      }
    }
    if (best < 0) {
      auto cover = chosen;
      std::sort(cover.begin(), cover.end());
      out.covers.push_back(std::move(cover));
      return;
    }
    for (int f : faces_of_edge[best]) {
      if (!usable(f)) continue;
      for (int e : edges_of_face[f]) covered[e] = 1;
      chosen.push_back(f);
      run();
      chosen.pop_back();
      for (int e : edges_of_face[f]) covered[e] = 0;
      if (!out.complete) return;
    }
  }
};

FaceCover exact_covers(const Triangulation& t, std::size_t node_budget, std::size_t max_covers) {
  CoverSearch s{t, {}, {}, {}, {}, 0, node_budget, max_covers, {}};
  const auto& edges = t.edges();
  s.faces_of_edge.resize(edges.size());
  s.covered.assign(edges.size(), 0);
  for (int i = 0; i < t.face_count(); ++i) {
    std::array<int, 3> ids{};
    const auto fe = face_edges(t.faces()[i]);
    for (int k = 0; k < 3; ++k) {
      ids[k] = static_cast<int>(std::lower_bound(edges.begin(), edges.end(), fe[k]) -
                                edges.begin());
      s.faces_of_edge[ids[k]].push_back(i);
    }
    s.edges_of_face.push_back(ids);
  }
  s.run();
  std::sort(s.out.covers.begin(), s.out.covers.end());
  return s.out;
}

}  // namespace

FaceCover face_exact_covers(const Triangulation& t, std::size_t node_budget) {
  return exact_covers(t, node_budget, SIZE_MAX);
}

LowerBoundCertificate certify_lower_bound(const Triangulation& t, bool verify_fiber,
                                          const Limits& limits) {
  LowerBoundCertificate c;
  c.n = t.vertex_count();
  c.m = t.edge_count();
  c.faces = t.face_count();
  c.euler = t.euler_characteristic();
  c.clean = is_clean(t);
  c.skeleton_k4_free = !skeleton_has_k4(t);
  std::vector<FaceColor> coloring;
  try {
    coloring = two_face_coloring(t);
    c.colorable = true;
  } catch (const NotColorable&) {
    c.colorable = false;
  }
  if (!c.clean || !c.colorable) {
    c.note = !c.clean ? "skeleton has a triangle that is not a face"
                      : "faces admit no proper 2-coloring";
    return c;
  }
  c.bound = c.m / 3;
  if (!verify_fiber) return c;

  const auto [red, blue] = red_blue_vectors(t, coloring);
  std::vector<TableVector> fiber;
  if (c.skeleton_k4_free) {
    // Marginal counting forces every fiber element to be a sum of face units
    // covering each edge once.
    const FaceCover covers = exact_covers(t, 10'000'000, limits.max_fiber_size + 1);
    if (!covers.complete) {
      c.note = "exact cover search exceeded its budget";
      return c;
    }
    for (const auto& cover : covers.covers) {
      TableVector z(red.ground());
      for (int f : cover) z.add(face_labeling(t.faces()[f]), 1);
      fiber.push_back(std::move(z));
    }
    std::sort(fiber.begin(), fiber.end());
    c.note = "fiber enumerated as face exact covers";
  } else {
    const Graph kn = complete_graph(c.n);
    fiber = fiber_through(kn.as_subgraph(), red, limits).elements;
    c.note = "fiber enumerated directly over the complete graph";
  }
  std::vector<TableVector> expected{red, blue};
  std::sort(expected.begin(), expected.end());
  c.fiber_size = fiber.size();
  c.fiber_verified = fiber == expected;
  c.fiber = std::move(fiber);
  if (!*c.fiber_verified) c.note += "; fiber is not {red, blue}";
  return c;
}

}  // namespace markov_atlas
