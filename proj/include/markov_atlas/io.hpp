#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/graph.hpp"
#include "markov_atlas/lattice.hpp"
#include "markov_atlas/sp_connect.hpp"
#include "markov_atlas/sp_tree.hpp"
#include "markov_atlas/triangulation.hpp"
#include "markov_atlas/width.hpp"

namespace markov_atlas {

using nlohmann::json;

std::string read_file(const std::string& path);

/// Bitstring of a labeling over a ground set; position i is the i-th vertex
/// of the ground set in ascending index order.
std::string to_bitstring(Labeling a, VertexMask ground);
Labeling from_bitstring(std::string_view bits, VertexMask ground);

/// Vector file: "vertices: v1 ... vk", then "<bitstring> <count>" lines.
/// The header labels are resolved against g; the ground set is the set of
/// header vertices.
TableVector parse_vector(std::string_view text, const Graph& g);
std::string format_vector(const TableVector& z, const Graph& g);

json vector_to_json(const TableVector& z, const Graph& g);
TableVector vector_from_json(const json& j, const Graph& g);

/// Moves file: {"vertices": [...], "moves": [{"<bits>": count, ...}, ...]}.
std::vector<TableVector> parse_moves(std::string_view text, const Graph& g);
json moves_to_json(const std::vector<TableVector>& moves, const Graph& g);

json sptree_to_json(const SPTree& t, const Graph& g);
SPTree sptree_from_json(const json& j, const Graph& g);

json marginals_to_json(const MarginalSet& m, const Graph& g);
json sequence_to_json(const MoveSequence& seq, const SequenceCheck& check, const Graph& g);
json certificate_to_json(const LowerBoundCertificate& c);
json width_to_json(const WidthReport& r, const Graph& g);
json search_to_json(const WidthSearch& s);

}  // namespace markov_atlas
