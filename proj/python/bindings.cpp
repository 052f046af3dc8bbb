#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/io.hpp"
#include "markov_atlas/sampler.hpp"
#include "markov_atlas/sp_connect.hpp"
#include "markov_atlas/sp_tree.hpp"
#include "markov_atlas/triangulation.hpp"
#include "markov_atlas/width.hpp"

namespace py = pybind11;
namespace ma = markov_atlas;

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
namespace {

ma::TableVector table(const ma::Graph& g, const std::string& vector_json) {
  return ma::vector_from_json(ma::json::parse(vector_json), g);
}

std::string width(const ma::Graph& g, std::optional<int> evidence_max_total) {
  return ma::width_to_json(ma::classify_width(g, evidence_max_total), g).dump();
}

std::string decompose(const ma::Graph& g, std::optional<std::pair<std::string, std::string>> poles) {
  std::optional<std::pair<ma::Vertex, ma::Vertex>> p;
  if (poles) {
    auto u = g.index_of(poles->first);
    auto v = g.index_of(poles->second);
    if (!u || !v) throw ma::PreconditionViolated("unknown pole label");
    p = std::make_pair(*u, *v);
  }
  return ma::sptree_to_json(ma::sp_decompose(g.as_subgraph(), p), g).dump();
}

std::string connect(const ma::Graph& g, const std::string& from, const std::string& to) {
  const auto z = table(g, from);
  const auto w = table(g, to);
  const auto seq = ma::connect_graph(g, z, w);
  return ma::sequence_to_json(seq, ma::check_sequence(seq, z, w), g).dump();
}

std::string search(const ma::Graph& g, int max_total) {
  return ma::search_to_json(ma::search_width(g.as_subgraph(), max_total)).dump();
}

std::string certify(const std::string& faces, bool verify) {
  return ma::certificate_to_json(ma::certify_lower_bound(ma::load_triangulation(faces), verify))
      .dump();
}

std::string kn_bound(int n, bool verify) {
  const auto r = ma::kn_lower_bound_report(n, nullptr, verify);
  ma::json j = {{"n", r.n},
                {"bound", r.bound},
                {"source", r.source},
                {"certificate", ma::certificate_to_json(r.certificate)}};
  return j.dump();
}

std::string sample(const ma::Graph& g, const std::string& start, std::uint64_t steps,
                   std::uint64_t burn_in, std::uint64_t seed, std::optional<int> degree) {
  const auto z = table(g, start);
  const auto sg = g.as_subgraph();
  const auto moves = degree ? ma::fiber_moves(sg, z, *degree) : ma::connector_moves(sg, z);
  const auto r = ma::random_walk(sg, moves, z, ma::WalkConfig{steps, burn_in, seed});
  ma::json j = {{"state", ma::vector_to_json(r.state, g)},
                {"proposals", r.proposals},
                {"accepted", r.accepted},
                {"moves", moves.size()}};
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_markov_atlas, m) {
  auto base = py::register_exception<ma::Error>(m, "MarkovAtlasError", PyExc_RuntimeError);
  (void)base;

  py::class_<ma::Graph>(m, "Graph")
      .def_static("parse", [](const std::string& text) { return ma::parse_graph(text); })
      .def_static("complete", &ma::complete_graph)
      .def_static("cycle", &ma::cycle_graph)
      .def_static("path", &ma::path_graph)
      .def_property_readonly("labels", &ma::Graph::labels)
      .def_property_readonly("edges",
                             [](const ma::Graph& g) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& e : g.edges()) out.emplace_back(g.label(e.a), g.label(e.b));
                               return out;
                             })
      .def("is_k4_minor_free", [](const ma::Graph& g) { return ma::is_k4_minor_free(g); })
      .def("__str__", &ma::format_graph);

  m.def("width", &width, py::arg("graph"), py::arg("evidence_max_total") = py::none());
  m.def("decompose", &decompose, py::arg("graph"), py::arg("poles") = py::none());
  m.def("connect", &connect, py::arg("graph"), py::arg("start"), py::arg("target"));
  m.def("search_width", &search, py::arg("graph"), py::arg("max_total"));
  m.def("certify", &certify, py::arg("faces"), py::arg("verify_fiber") = false);
  m.def("kn_bound", &kn_bound, py::arg("n"), py::arg("verify_fiber") = false);
  m.def("sample", &sample, py::arg("graph"), py::arg("start"), py::arg("steps"),
        py::arg("burn_in") = 0, py::arg("seed") = 0, py::arg("degree") = py::none());
}
