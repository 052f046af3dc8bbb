#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "markov_atlas/graph.hpp"
#include "markov_atlas/lattice.hpp"
#include "markov_atlas/limits.hpp"

namespace markov_atlas {

inline constexpr const char* kRngAlgorithm = "mt19937_64/rejection-bounded";

struct WalkConfig {
  std::uint64_t steps = 1;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
};

struct WalkResult {
  TableVector state;
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// Lazy random walk: each step picks a move and a sign uniformly and applies
/// it when the result stays non-negative.
class RandomWalk {
 public:
  /// Rejects moves outside the kernel of the marginal map (NotInKernel) and
  /// negative starting tables.
  RandomWalk(const Subgraph& g, std::vector<TableVector> moves, TableVector start,
             std::uint64_t seed);

  /// Returns true when the proposal was accepted.
  bool step();
  const TableVector& state() const { return state_; }
  std::uint64_t proposals() const { return proposals_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  std::uint64_t uniform_below(std::uint64_t bound);

  std::vector<TableVector> moves_;
  TableVector state_;
  std::mt19937_64 rng_;
  std::uint64_t proposals_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Runs burn_in + steps proposals and returns the final state.
WalkResult random_walk(const Subgraph& g, const std::vector<TableVector>& moves,
                       const TableVector& start, const WalkConfig& config);

/// Degree-k moves within the fiber through z.
std::vector<TableVector> fiber_moves(const Subgraph& g, const TableVector& z, int k,
                                     const Limits& limits = {});

/// Step vectors of connector sequences from z to every element of its fiber.
std::vector<TableVector> connector_moves(const Subgraph& g, const TableVector& z,
                                         const Limits& limits = {});

}  // namespace markov_atlas
