#include "markov_atlas/sampler.hpp"

#include <algorithm>
#include <set>

#include "markov_atlas/error.hpp"
#include "markov_atlas/fiber.hpp"
#include "markov_atlas/sp_connect.hpp"

namespace markov_atlas {

RandomWalk::RandomWalk(const Subgraph& g, std::vector<TableVector> moves, TableVector start,
                       std::uint64_t seed)
    : moves_(std::move(moves)), state_(std::move(start)), rng_(seed) {
  if (state_.ground() != g.vertices) {
    throw GroundSetMismatch("start table ground set differs from the graph");
  }
  if (!state_.is_nonnegative()) throw PreconditionViolated("start table must be non-negative");
  for (std::size_t i = 0; i < moves_.size(); ++i) {
    if (moves_[i].ground() != g.vertices) {
      throw GroundSetMismatch("move " + std::to_string(i) + " has a different ground set");
    }
    if (moves_[i].empty() || !is_move(moves_[i], g)) {
      throw NotInKernel("move " + std::to_string(i) + " changes the marginals");
    }
  }
}

std::uint64_t RandomWalk::uniform_below(std::uint64_t bound) {
  // Reject the low 2^64 mod bound draws so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = rng_();
  while (x < threshold) x = rng_();
  return x % bound;
}

bool RandomWalk::step() {
  ++proposals_;
  if (moves_.empty()) return false;
  const std::uint64_t pick = uniform_below(2 * moves_.size());
  const TableVector& move = moves_[pick / 2];
  const Count sign = pick % 2 == 0 ? 1 : -1;
  for (auto [lab, c] : move.entries()) {
    if (state_.at(lab) + sign * c < 0) return false;
  }
  for (auto [lab, c] : move.entries()) state_.add(lab, sign * c);
  ++accepted_;
  return true;
}

WalkResult random_walk(const Subgraph& g, const std::vector<TableVector>& moves,
                       const TableVector& start, const WalkConfig& config) {
  RandomWalk walk(g, moves, start, config.seed);
  const std::uint64_t total = config.burn_in + config.steps;
  for (std::uint64_t i = 0; i < total; ++i) walk.step();
  return {walk.state(), walk.proposals(), walk.accepted()};
}

std::vector<TableVector> fiber_moves(const Subgraph& g, const TableVector& z, int k,
                                     const Limits& limits) {
  return extract_moves(fiber_through(g, z, limits), k);
}

std::vector<TableVector> connector_moves(const Subgraph& g, const TableVector& z,
                                         const Limits& limits) {
  const Fiber f = fiber_through(g, z, limits);
  ConnectOptions options;
  options.limits = limits;
  std::set<TableVector> moves;
  for (const auto& w : f.elements) {
    if (w == z) continue;
    for (auto& step : connect_graph(g, z, w, options).steps()) {
      moves.insert(canonical_sign(std::move(step)));
    }
  }
  return {moves.begin(), moves.end()};
}

}  // namespace markov_atlas
