#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "markov_atlas/graph.hpp"
#include "markov_atlas/lattice.hpp"
#include "markov_atlas/limits.hpp"

namespace markov_atlas {

using Face = std::array<Vertex, 3>;  // sorted

/// Triangulated closed surface given combinatorially: every edge of the
/// skeleton lies in exactly two faces.
class Triangulation {
 public:
  Triangulation() = default;
  /// Validates: faces have three distinct vertices, no face repeats, and every
  /// edge lies in exactly two faces.
  Triangulation(std::vector<std::string> labels, std::vector<Face> faces);

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Subgraph skeleton() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
};

/// One face "a b c" per line; '#' comments; vertices by first appearance.
Triangulation load_triangulation(std::string_view text);
std::string format_triangulation(const Triangulation& t);

/// Every 3-clique of the skeleton is a face.
bool is_clean(const Triangulation& t);

enum class FaceColor { Red, Blue };

/// Proper 2-coloring of the dual graph; the first face of each dual
/// component is red. Throws NotColorable when the dual has an odd cycle.
std::vector<FaceColor> two_face_coloring(const Triangulation& t);

/// Sums of face indicator units over red and blue faces, over all n vertices.
std::pair<TableVector, TableVector> red_blue_vectors(const Triangulation& t,
                                                     const std::vector<FaceColor>& coloring);

/// Cycle v1..vN plus apexes a and b; N+2 vertices, 3N edges, 2N faces.
Triangulation double_wheel(int cycle_length);

/// Exact covers of the edge set by faces. With a clean 2-face-colorable
/// triangulation whose skeleton has no K4, these are exactly the fiber
/// elements through the red vector over the complete graph.
struct FaceCover {
  std::vector<std::vector<int>> covers;  // face indices, ascending
  bool complete = true;                  // false if the node budget ran out
};
FaceCover face_exact_covers(const Triangulation& t, std::size_t node_budget = 10'000'000);

struct LowerBoundCertificate {
  int n = 0;
  int m = 0;
  int faces = 0;
  int euler = 0;
  bool clean = false;
  bool colorable = false;
  bool skeleton_k4_free = false;
  std::optional<int> bound;  // m / 3 when clean and colorable
  std::optional<bool> fiber_verified;
  std::size_t fiber_size = 0;
  std::string note;
  std::vector<TableVector> fiber;  // populated when verification ran
};

/// Certifies a lower bound m/3 on the width of K_n. With verify_fiber the
/// fiber through the red vector is enumerated as face exact covers and
/// compared against {red, blue}.
LowerBoundCertificate certify_lower_bound(const Triangulation& t, bool verify_fiber,
                                          const Limits& limits = {});

}  // namespace markov_atlas
