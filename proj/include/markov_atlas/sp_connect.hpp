#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "markov_atlas/graph.hpp"
#include "markov_atlas/lattice.hpp"
#include "markov_atlas/limits.hpp"
#include "markov_atlas/sp_tree.hpp"

namespace markov_atlas {

/// Walk z_0, ..., z_L through one fiber. Steps are z_k - z_{k-1}.
struct MoveSequence {
  Subgraph graph;
  std::optional<std::pair<Vertex, Vertex>> poles;
  std::vector<TableVector> states;

  std::size_t length() const { return states.empty() ? 0 : states.size() - 1; }
  std::vector<TableVector> steps() const;
  std::vector<Count> norms() const;
};

struct StepAnnotation {
  Count norm = 0;
  bool nonnegative = true;
  bool marginals_preserved = true;
  bool pole_marginal_changed = false;
};

struct SequenceCheck {
  bool ok = true;
  std::vector<StepAnnotation> steps;
  std::vector<std::string> violations;
};

/// Checks endpoints, non-negativity, constant marginals, the step-norm
/// bound, and (when poles are set) that every step changing the pole pair
/// marginal has norm exactly 4.
SequenceCheck check_sequence(const MoveSequence& seq, const TableVector& from,
                             const TableVector& to, Count max_step_norm = 8);

/// Replaces the X1-part of z by zbar. Requires X1 | X2 == ground(z) and equal
/// projections onto Y = X1 & X2. The result keeps the X2 projection and
/// differs from z by exactly |project(z, X1) - zbar|_1.
TableVector glue_cutsame(const TableVector& z, const TableVector& zbar, VertexMask x1,
                         VertexMask x2);

/// Connects two tables with equal projections onto X1 and X2 by 2-unit swaps
/// of norm 4 that keep both projections fixed.
MoveSequence glue_swaps(const TableVector& z, const TableVector& target, VertexMask x1,
                        VertexMask x2);

/// Lifts (z1, z1p) over X1 and (z2, z2p) over X2 to (z, zp) over X1 | X2 with
/// |z - zp|_1 = |z1 - z1p|_1. All preconditions are checked.
std::pair<TableVector, TableVector> glue_cutchange(const TableVector& z1,
                                                   const TableVector& z1p,
                                                   const TableVector& z2,
                                                   const TableVector& z2p);

struct ConnectOptions {
  /// Check every intermediate sequence and fail fast on a violation.
  bool verify = false;
  Limits limits{};
};

/// Shortest fiber path with steps of norm at most 8 on a cycle.
MoveSequence connect_cycle(const Subgraph& cycle, const TableVector& z, const TableVector& target,
                           const ConnectOptions& options = {});

/// Connector for a two-terminal series-parallel graph. The result has step
/// norms at most 8 and changes the pole marginal only in norm-4 steps.
MoveSequence connect_sp(const SPTree& tree, const TableVector& z, const TableVector& target,
                        const ConnectOptions& options = {});

/// Connector for any K4-minor-free graph, combining blocks at cut vertices.
/// Throws NotK4MinorFree otherwise.
MoveSequence connect_graph(const Subgraph& g, const TableVector& z, const TableVector& target,
                           const ConnectOptions& options = {});
MoveSequence connect_graph(const Graph& g, const TableVector& z, const TableVector& target,
                           const ConnectOptions& options = {});

}  // namespace markov_atlas
