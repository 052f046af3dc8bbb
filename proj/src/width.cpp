#include "markov_atlas/width.hpp"

#include "markov_atlas/error.hpp"

namespace markov_atlas {

const char* to_string(WidthClass c) {
  switch (c) {
    case WidthClass::Exact2:
      return "exact 2";
    case WidthClass::Exact4:
      return "exact 4";
    case WidthClass::AtLeast6:
      return ">= 6";
  }
  return "?";
}

namespace {

bool is_complete(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  return g.edge_count() == n * (n - 1) / 2;
}

}  // namespace

WidthReport classify_width(const Graph& g, std::optional<int> evidence_max_total,
                           const Limits& limits) {
  const Subgraph s = g.as_subgraph();
  WidthReport r;
  if (is_forest(s)) {
    r.width_class = WidthClass::Exact2;
    r.basis_degree = 2;
    r.reason = "graph is a forest";
  } else if (is_k4_minor_free(s)) {
    r.width_class = WidthClass::Exact4;
    r.basis_degree = 4;
    r.reason = "graph has a cycle and no K4 minor";
  } else {
    r.width_class = WidthClass::AtLeast6;
    r.basis_degree = 6;
    r.reason = "graph has a K4 minor";
    r.k4_minor = find_k4_minor(s);
    if (!r.k4_minor) throw InternalError("K4 minor detected but no model found");
  }
  if (g.vertex_count() >= 4 && is_complete(g)) {
    r.complete_graph_known_bound = 2 * g.vertex_count() - 2;
  }
  if (evidence_max_total) r.evidence = search_width(s, *evidence_max_total, limits);
  return r;
}

KnBoundReport kn_lower_bound_report(int n, const Triangulation* supplied, bool verify_fiber,
                                    const Limits& limits) {
  std::optional<KnBoundReport> best;
  auto consider = [&](const Triangulation& t, const char* source) {
    LowerBoundCertificate c = certify_lower_bound(t, verify_fiber, limits);
    if (!c.bound || c.fiber_verified == false) return false;
    if (!best || *c.bound > best->bound) best = KnBoundReport{n, *c.bound, source, std::move(c)};
    return true;
  };
  if (n >= 6 && n % 2 == 0) consider(double_wheel(n - 2), "double-wheel");
  if (supplied != nullptr) {
    if (supplied->vertex_count() > n) {
      throw PreconditionViolated("triangulation has more than " + std::to_string(n) +
                                 " vertices");
    }
    if (!consider(*supplied, "triangulation")) {
      LowerBoundCertificate c = certify_lower_bound(*supplied, verify_fiber, limits);
      if (!c.colorable) throw NotColorable("supplied triangulation: " + c.note);
      throw InvalidTriangulation("supplied triangulation certifies no bound: " + c.note);
    }
  }
  if (!best) {
    throw PreconditionViolated("no certificate for K_" + std::to_string(n) +
                               ": the double wheel needs even n >= 6; supply a triangulation");
  }
  return *best;
}

}  // namespace markov_atlas
