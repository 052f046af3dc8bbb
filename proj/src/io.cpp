#include "markov_atlas/io.hpp"

#include <fstream>
#include <sstream>

#include "markov_atlas/error.hpp"

namespace markov_atlas {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string to_bitstring(Labeling a, VertexMask ground) {
  std::string out;
  for (Vertex v : vertices_of(ground)) out.push_back((a & bit(v)) ? '1' : '0');
  return out;
}

Labeling from_bitstring(std::string_view bits, VertexMask ground) {
  const auto vs = vertices_of(ground);
  if (bits.size() != vs.size()) {
    throw ParseError("bitstring '" + std::string(bits) + "' should have " +
                     std::to_string(vs.size()) + " digits");
  }
  Labeling a = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (bits[i] == '1') {
      a |= bit(vs[i]);
    } else if (bits[i] != '0') {
      throw ParseError("bitstring '" + std::string(bits) + "' has a digit other than 0/1");
    }
  }
  return a;
}

namespace {

Vertex resolve(const Graph& g, const std::string& label) {
  auto v = g.index_of(label);
  if (!v) throw GroundSetMismatch("unknown vertex '" + label + "'");
  return *v;
}

VertexMask ground_from_labels(const json& labels, const Graph& g) {
  if (!labels.is_array()) throw ParseError("\"vertices\" must be an array of labels");
  VertexMask ground = 0;
  for (const auto& l : labels) {
    const Vertex v = resolve(g, l.is_string() ? l.get<std::string>() : l.dump());
    if (ground & bit(v)) throw ParseError("vertex '" + g.label(v) + "' listed twice");
    ground |= bit(v);
  }
  return ground;
}

json ground_labels(VertexMask ground, const Graph& g) {
  json out = json::array();
  for (Vertex v : vertices_of(ground)) out.push_back(g.label(v));
  return out;
}

json entries_to_json(const TableVector& z) {
  json out = json::object();
  for (auto [a, c] : z.entries()) out[to_bitstring(a, z.ground())] = c;
  return out;
}

TableVector entries_from_json(const json& j, VertexMask ground) {
  if (!j.is_object()) throw ParseError("table entries must be an object of bitstring: count");
  TableVector z(ground);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number_integer()) {
      throw ParseError("count for '" + it.key() + "' is not an integer");
    }
    z.add(from_bitstring(it.key(), ground), it.value().get<Count>());
  }
  return z;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

TableVector parse_vector(std::string_view text, const Graph& g) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<Vertex> order;
  VertexMask ground = 0;
  bool header = false;
  std::vector<std::pair<Labeling, Count>> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!header) {
      if (words.front() != "vertices:") throw ParseError(where + "expected 'vertices:' header");
      for (std::size_t i = 1; i < words.size(); ++i) {
        const Vertex v = resolve(g, words[i]);
        if (ground & bit(v)) throw ParseError(where + "vertex '" + words[i] + "' listed twice");
        ground |= bit(v);
        order.push_back(v);
      }
      header = true;
      continue;
    }
    if (words.size() != 2) throw ParseError(where + "expected '<bitstring> <count>'");
    const std::string& bits = words[0];
    if (bits.size() != order.size()) {
      throw ParseError(where + "bitstring should have " + std::to_string(order.size()) +
                       " digits");
    }
    Labeling a = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        a |= bit(order[i]);
      } else if (bits[i] != '0') {
        throw ParseError(where + "bitstring has a digit other than 0/1");
      }
    }
    Count c = 0;
    try {
      std::size_t used = 0;
      c = std::stoll(words[1], &used);
      if (used != words[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ParseError(where + "count '" + words[1] + "' is not an integer");
    }
    entries.emplace_back(a, c);
  }
  if (!header) throw ParseError("missing 'vertices:' header");
  TableVector z(ground);
  for (auto [a, c] : entries) z.add(a, c);
  return z;
}

std::string format_vector(const TableVector& z, const Graph& g) {
  std::ostringstream out;
  out << "vertices:";
  for (Vertex v : vertices_of(z.ground())) out << ' ' << g.label(v);
  out << '\n';
  for (auto [a, c] : z.entries()) out << to_bitstring(a, z.ground()) << ' ' << c << '\n';
  return out.str();
}

json vector_to_json(const TableVector& z, const Graph& g) {
  return {{"vertices", ground_labels(z.ground(), g)}, {"entries", entries_to_json(z)}};
}

TableVector vector_from_json(const json& j, const Graph& g) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("entries")) {
    throw ParseError("vector JSON needs \"vertices\" and \"entries\"");
  }
  return entries_from_json(j.at("entries"), ground_from_labels(j.at("vertices"), g));
}

std::vector<TableVector> parse_moves(std::string_view text, const Graph& g) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("vertices") || !j.contains("moves") ||
      !j.at("moves").is_array()) {
    throw ParseError("moves file needs \"vertices\" and a \"moves\" array");
  }
  const VertexMask ground = ground_from_labels(j.at("vertices"), g);
  std::vector<TableVector> out;
  for (const auto& m : j.at("moves")) out.push_back(entries_from_json(m, ground));
  return out;
}

json moves_to_json(const std::vector<TableVector>& moves, const Graph& g) {
  json list = json::array();
  VertexMask ground = g.vertex_mask();
  for (const auto& m : moves) {
    ground = m.ground();
    list.push_back(entries_to_json(m));
  }
  return {{"vertices", ground_labels(ground, g)}, {"moves", list}};
}

json sptree_to_json(const SPTree& t, const Graph& g) {
  json out = {{"kind", to_string(t.kind)}, {"poles", {g.label(t.u), g.label(t.v)}}};
  if (t.is_leaf()) {
    out["edge"] = {g.label(t.u), g.label(t.v)};
  } else {
    json children = json::array();
    for (const auto& c : t.children) children.push_back(sptree_to_json(c, g));
    out["children"] = children;
  }
  return out;
}

SPTree sptree_from_json(const json& j, const Graph& g) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("tree node needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const json& poles = j.at("poles");
  if (!poles.is_array() || poles.size() != 2) throw ParseError("\"poles\" must list two labels");
  const Vertex u = resolve(g, poles[0].get<std::string>());
  const Vertex v = resolve(g, poles[1].get<std::string>());
  if (kind == "leaf") return SPTree::leaf(u, v);
  std::vector<SPTree> children;
  for (const auto& c : j.at("children")) children.push_back(sptree_from_json(c, g));
  SPTree t;
  if (kind == "serial") {
    t = SPTree::serial(std::move(children));
  } else if (kind == "parallel") {
    t = SPTree::parallel(std::move(children));
  } else {
    throw ParseError("unknown tree node kind '" + kind + "'");
  }
  if (t.u != u || t.v != v) throw ParseError("node poles disagree with its children");
  return t;
}

json marginals_to_json(const MarginalSet& m, const Graph& g) {
  json edges = json::array();
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const auto& t = m.tables[i];
    edges.push_back({{"edge", {g.label(m.edges[i].a), g.label(m.edges[i].b)}},
                     {"table", {{t[0], t[1]}, {t[2], t[3]}}}});
  }
  return {{"total", m.total}, {"edges", edges}};
}

json sequence_to_json(const MoveSequence& seq, const SequenceCheck& check, const Graph& g) {
  json states = json::array();
  for (const auto& z : seq.states) states.push_back(entries_to_json(z));
  json steps = json::array();
  Count max_norm = 0;
  for (const auto& s : check.steps) {
    steps.push_back({{"norm", s.norm}, {"pole_marginal_changed", s.pole_marginal_changed}});
    max_norm = std::max(max_norm, s.norm);
  }
  json poles = nullptr;
  if (seq.poles) poles = {g.label(seq.poles->first), g.label(seq.poles->second)};
  return {{"vertices", ground_labels(seq.graph.vertices, g)},
          {"poles", poles},
          {"length", seq.length()},
          {"max_step_norm", max_norm},
          {"states", states},
          {"steps", steps},
          {"valid", check.ok},
          {"violations", check.violations}};
}

json certificate_to_json(const LowerBoundCertificate& c) {
  json out = {{"n", c.n},
              {"m", c.m},
              {"faces", c.faces},
              {"euler", c.euler},
              {"clean", c.clean},
              {"colorable", c.colorable},
              {"skeleton_k4_free", c.skeleton_k4_free},
              {"bound", c.bound ? json(*c.bound) : json(nullptr)},
              {"fiber_verified", c.fiber_verified ? json(*c.fiber_verified) : json(nullptr)},
              {"note", c.note}};
  if (c.fiber_verified) out["fiber_size"] = c.fiber_size;
  return out;
}

json search_to_json(const WidthSearch& s) {
  json degrees = json::object();
  for (int t = 1; t <= s.max_total; ++t) {
    degrees[std::to_string(t)] = {{"degree", s.degree_by_total.at(t)},
                                  {"fibers", s.fibers_by_total.at(t)}};
  }
  return {{"max_total", s.max_total},
          {"by_total", degrees},
          {"min_connecting_degree", s.min_connecting_degree}};
}

json width_to_json(const WidthReport& r, const Graph& g) {
  json provenance = {{"rule", r.reason}};
  if (r.k4_minor) {
    json sets = json::array();
    for (VertexMask m : r.k4_minor->branch_sets) sets.push_back(ground_labels(m, g));
    provenance["k4_minor"] = sets;
  }
  json out = {{"class", to_string(r.width_class)},
              {"basis_degree", r.basis_degree},
              {"provenance", provenance}};
  if (r.complete_graph_known_bound) out["complete_graph_known_bound"] = *r.complete_graph_known_bound;
  if (r.evidence) out["evidence"] = search_to_json(*r.evidence);
  return out;
}

}  // namespace markov_atlas
