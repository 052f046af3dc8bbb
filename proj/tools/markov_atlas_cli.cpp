// markov-atlas: command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/io.hpp"
#include "markov_atlas/sampler.hpp"
#include "markov_atlas/sp_connect.hpp"
#include "markov_atlas/sp_tree.hpp"
#include "markov_atlas/triangulation.hpp"
#include "markov_atlas/width.hpp"

namespace ma = markov_atlas;
using ma::json;

namespace {

struct Common {
  bool json_out = false;
  std::string limits;
  std::optional<int> threads;

  ma::Limits resolved_limits() const {
    ma::Limits l = limits.empty() ? ma::Limits::from_env() : ma::Limits::parse(limits);
    if (threads) l.threads = *threads;
    return l;
  }
};

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.json_out) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

ma::Graph load_graph(const std::string& path) { return ma::parse_graph(ma::read_file(path)); }

std::string tree_text(const ma::SPTree& t, const ma::Graph& g, int depth = 0) {
  std::string out(2 * depth, ' ');
  out += std::string(ma::to_string(t.kind)) + " " + g.label(t.u) + " " + g.label(t.v) + "\n";
  for (const auto& c : t.children) out += tree_text(c, g, depth + 1);
  return out;
}

std::string labels_of(ma::VertexMask m, const ma::Graph& g) {
  std::string out = "{";
  for (ma::Vertex v : ma::vertices_of(m)) {
    if (out.size() > 1) out += ",";
    out += g.label(v);
  }
  return out + "}";
}

int run_width(const Common& c, const std::string& path, std::optional<int> evidence) {
  const ma::Graph g = load_graph(path);
  const auto r = ma::classify_width(g, evidence, c.resolved_limits());
  std::ostringstream text;
  text << "class: " << ma::to_string(r.width_class) << '\n'
       << "basis_degree: " << r.basis_degree << '\n'
       << "reason: " << r.reason << '\n';
  if (r.k4_minor) {
    text << "k4_minor:";
    for (auto m : r.k4_minor->branch_sets) text << ' ' << labels_of(m, g);
    text << '\n';
  }
  if (r.complete_graph_known_bound) {
    text << "complete_graph_known_bound: " << *r.complete_graph_known_bound << '\n';
  }
  if (r.evidence) {
    text << "evidence_min_connecting_degree: " << r.evidence->min_connecting_degree
         << " (totals <= " << r.evidence->max_total << ")\n";
  }
  emit(c, ma::width_to_json(r, g), text.str());
  return 0;
}

std::optional<std::pair<ma::Vertex, ma::Vertex>> parse_poles(const std::string& spec,
                                                            const ma::Graph& g) {
  if (spec.empty()) return std::nullopt;
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw ma::ParseError("poles must be given as 'u,v'");
  auto u = g.index_of(spec.substr(0, comma));
  auto v = g.index_of(spec.substr(comma + 1));
  if (!u || !v) throw ma::GroundSetMismatch("unknown pole vertex in '" + spec + "'");
  return std::make_pair(*u, *v);
}

int run_decompose(const Common& c, const std::string& path, const std::string& poles) {
  const ma::Graph g = load_graph(path);
  const auto t = ma::sp_decompose(g.as_subgraph(), parse_poles(poles, g));
  emit(c, ma::sptree_to_json(t, g), tree_text(t, g));
  return 0;
}

int run_connect(const Common& c, const std::string& path, const std::string& from,
                const std::string& to, bool verify, const std::string& tree_path) {
  const ma::Graph g = load_graph(path);
  const auto z = ma::parse_vector(ma::read_file(from), g);
  const auto target = ma::parse_vector(ma::read_file(to), g);
  ma::ConnectOptions options;
  options.verify = verify;
  options.limits = c.resolved_limits();
  ma::MoveSequence seq;
  if (!tree_path.empty()) {
    const auto tree = ma::sptree_from_json(json::parse(ma::read_file(tree_path)), g);
    seq = ma::connect_sp(tree, z, target, options);
  } else {
    seq = ma::connect_graph(g, z, target, options);
  }
  const auto check = ma::check_sequence(seq, z, target);
  std::ostringstream text;
  text << "length: " << seq.length() << '\n';
  ma::Count max_norm = 0;
  for (auto n : seq.norms()) max_norm = std::max(max_norm, n);
  text << "max_step_norm: " << max_norm << '\n';
  text << "valid: " << (check.ok ? "yes" : "no") << '\n';
  for (std::size_t k = 0; k < seq.states.size(); ++k) {
    text << "# state " << k << '\n' << ma::format_vector(seq.states[k], g);
  }
  emit(c, ma::sequence_to_json(seq, check, g), text.str());
  return check.ok ? 0 : 1;
}

std::string certificate_text(const ma::LowerBoundCertificate& cert) {
  std::ostringstream text;
  text << "vertices: " << cert.n << "\nedges: " << cert.m << "\nfaces: " << cert.faces
       << "\neuler_characteristic: " << cert.euler << "\nclean: " << (cert.clean ? "yes" : "no")
       << "\ntwo_face_colorable: " << (cert.colorable ? "yes" : "no")
       << "\nskeleton_k4_free: " << (cert.skeleton_k4_free ? "yes" : "no") << '\n';
  text << "bound: " << (cert.bound ? std::to_string(*cert.bound) : std::string("none")) << '\n';
  if (cert.fiber_verified) {
    text << "fiber_verified: " << (*cert.fiber_verified ? "yes" : "no")
         << " (size " << cert.fiber_size << ")\n";
  }
  if (!cert.note.empty()) text << "note: " << cert.note << '\n';
  return text.str();
}

int run_certify(const Common& c, const std::string& tri_path, std::optional<int> wheel,
                std::optional<int> kn, bool verify) {
  const auto limits = c.resolved_limits();
  std::optional<ma::Triangulation> t;
  if (!tri_path.empty()) t = ma::load_triangulation(ma::read_file(tri_path));
  if (kn) {
    const auto r = ma::kn_lower_bound_report(*kn, t ? &*t : nullptr, verify, limits);
    json j = {{"n", r.n},
              {"bound", r.bound},
              {"source", r.source},
              {"certificate", ma::certificate_to_json(r.certificate)}};
    std::ostringstream text;
    text << "K_" << r.n << " lower bound: " << r.bound << " (" << r.source << ")\n"
         << certificate_text(r.certificate);
    emit(c, j, text.str());
    return 0;
  }
  if (wheel) t = ma::double_wheel(*wheel);
  if (!t) throw CLI::ValidationError("certify", "give a triangulation file, --double-wheel or --kn");
  const auto cert = ma::certify_lower_bound(*t, verify, limits);
  emit(c, ma::certificate_to_json(cert), certificate_text(cert));
  return cert.bound && cert.fiber_verified != false ? 0 : 1;
}

int run_search(const Common& c, const std::string& path, int max_total,
               std::optional<int> witness) {
  const ma::Graph g = load_graph(path);
  const auto limits = c.resolved_limits();
  const auto s = ma::search_width(g.as_subgraph(), max_total, limits);
  json j = ma::search_to_json(s);
  std::ostringstream text;
  for (int t = 1; t <= s.max_total; ++t) {
    text << "total " << t << ": fibers " << s.fibers_by_total[t] << ", degree "
         << s.degree_by_total[t] << '\n';
  }
  text << "min_connecting_degree: " << s.min_connecting_degree << '\n';
  if (witness) {
    auto w = ma::witness_disconnected_fiber(g.as_subgraph(), *witness, max_total, limits);
    if (w) {
      j["witness"] = {{"degree", w->degree},
                      {"fiber_size", w->fiber.size()},
                      {"components", w->components.size()},
                      {"first", ma::vector_to_json(w->fiber.elements[w->first], g)},
                      {"second", ma::vector_to_json(w->fiber.elements[w->second], g)}};
      text << "degree-" << *witness << " moves leave a fiber of size " << w->fiber.size()
           << " in " << w->components.size() << " components\n"
           << "# first\n"
           << ma::format_vector(w->fiber.elements[w->first], g) << "# second\n"
           << ma::format_vector(w->fiber.elements[w->second], g);
    } else {
      j["witness"] = nullptr;
      text << "no disconnected fiber for degree " << *witness << '\n';
    }
  }
  emit(c, j, text.str());
  return 0;
}

int run_sample(const Common& c, const std::string& path, const std::string& start_path,
               const ma::WalkConfig& config, const std::string& moves_path,
               std::optional<int> degree) {
  const ma::Graph g = load_graph(path);
  const auto limits = c.resolved_limits();
  const auto start = ma::parse_vector(ma::read_file(start_path), g);
  const ma::Subgraph s = g.as_subgraph();
  std::vector<ma::TableVector> moves;
  std::string source;
  if (!moves_path.empty()) {
    moves = ma::parse_moves(ma::read_file(moves_path), g);
    source = "file";
  } else if (degree) {
    moves = ma::fiber_moves(s, start, *degree, limits);
    source = "fiber degree " + std::to_string(*degree);
  } else {
    moves = ma::connector_moves(s, start, limits);
    source = "connector";
  }
  const auto r = ma::random_walk(s, moves, start, config);
  json meta = {{"rng", ma::kRngAlgorithm},
               {"seed", config.seed},
               {"steps", config.steps},
               {"burn_in", config.burn_in},
               {"moves", moves.size()},
               {"move_source", source},
               {"proposals", r.proposals},
               {"accepted", r.accepted},
               {"acceptance_rate", r.acceptance_rate()}};
  json j = meta;
  j["state"] = ma::vector_to_json(r.state, g);
  emit(c, j, "# " + meta.dump() + "\n" + ma::format_vector(r.state, g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov bases of binary graph models: width, connectors, certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json_out, "Write JSON to stdout");
  app.add_option("--limits", common.limits,
                 "Resource caps, e.g. vertices=16,total=8,fiber=1000000 "
                 "(default: MARKOV_ATLAS_LIMITS)");
  app.add_option("--threads", common.threads, "Worker threads for independent fiber work")
      ->check(CLI::Range(1, 256));

  std::string graph_path, from_path, to_path, tri_path, poles, moves_path, tree_path;
  std::optional<int> wheel, kn, max_degree, degree;
  int max_total = 3;
  bool verify = false;
  bool evidence = false;
  ma::WalkConfig walk;

  auto* width = app.add_subcommand("width", "Classify the Markov width of a graph");
  width->add_option("graph", graph_path, "Edge-list file")->required();
  width->add_flag("--evidence", evidence, "Also run the exhaustive fiber search");
  width->add_option("--max-total", max_total, "Largest sample size for --evidence")
      ->check(CLI::Range(1, 64));

  auto* decompose = app.add_subcommand("decompose", "Series-parallel decomposition tree");
  decompose->add_option("graph", graph_path, "Edge-list file")->required();
  decompose->add_option("--poles", poles, "Pole pair 'u,v'");

  auto* connect = app.add_subcommand("connect", "Move sequence between two tables of a fiber");
  connect->add_option("graph", graph_path, "Edge-list file")->required();
  connect->add_option("from", from_path, "Start table")->required();
  connect->add_option("to", to_path, "Target table")->required();
  connect->add_option("--tree", tree_path, "Decomposition tree JSON (from decompose --json)");
  connect->add_flag("--verify", verify, "Check every intermediate sequence");

  auto* certify = app.add_subcommand("certify", "Lower-bound certificate from a triangulation");
  certify->add_option("triangulation", tri_path, "Face-list file");
  certify->add_option("--double-wheel", wheel, "Use the double wheel with this cycle length");
  certify->add_option("--kn", kn, "Report the best bound for K_n");
  certify->add_flag("--verify-fiber", verify, "Enumerate the fiber through the red vector");

  auto* search = app.add_subcommand("search-width", "Exhaustive fiber search");
  search->add_option("graph", graph_path, "Edge-list file")->required();
  search->add_option("--max-total", max_total, "Largest sample size")->check(CLI::Range(1, 64));
  search->add_option("--max-degree", max_degree,
                     "Report a fiber that moves of this degree leave disconnected");

  auto* sample = app.add_subcommand("sample", "Random walk on a fiber");
  sample->add_option("graph", graph_path, "Edge-list file")->required();
  sample->add_option("start", from_path, "Start table")->required();
  sample->add_option("--steps", walk.steps, "Recorded proposals");
  sample->add_option("--burn-in", walk.burn_in, "Proposals before recording");
  sample->add_option("--seed", walk.seed, "Seed");
  auto* moves_opt = sample->add_option("--moves", moves_path, "Moves JSON file");
  sample->add_option("--degree", degree, "Use all degree-k moves of the start fiber")
      ->excludes(moves_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*width) {
      return run_width(common, graph_path, evidence ? std::optional<int>(max_total) : std::nullopt);
    }
    if (*decompose) return run_decompose(common, graph_path, poles);
    if (*connect) return run_connect(common, graph_path, from_path, to_path, verify, tree_path);
    if (*certify) return run_certify(common, tri_path, wheel, kn, verify);
    if (*search) return run_search(common, graph_path, max_total, max_degree);
    if (*sample) return run_sample(common, graph_path, from_path, walk, moves_path, degree);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ma::Error& e) {
    std::cerr << "error [" << e.kind() << "]: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error [ParseError]: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
