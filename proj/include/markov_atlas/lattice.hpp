#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "markov_atlas/graph.hpp"

namespace markov_atlas {

/// Binary labeling of a ground set, stored at global vertex bit positions.
/// Bits outside the ground set are zero.
using Labeling = std::uint64_t;
using Count = std::int64_t;

/// Sparse integer vector in the lattice over binary labelings of a ground
/// set. Entries are kept in ascending labeling order; zero entries are never
/// stored.
class TableVector {
 public:
  using Entries = std::map<Labeling, Count>;

  TableVector() = default;
  explicit TableVector(VertexMask ground) : ground_(ground) {}
  TableVector(VertexMask ground, Entries entries);

  static TableVector unit(VertexMask ground, Labeling a, Count count = 1);
  /// Builds a table from a list of units (repeats allowed).
  static TableVector from_units(VertexMask ground, const std::vector<Labeling>& units);

  VertexMask ground() const { return ground_; }
  const Entries& entries() const { return entries_; }
  Count at(Labeling a) const;
  void add(Labeling a, Count delta);
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  Count l1_norm() const;
  /// Sum of entries (equals the l1 norm for non-negative vectors).
  Count total() const;
  bool is_nonnegative() const;
  /// Units in ascending order, each repeated by its count. Requires
  /// non-negativity.
  std::vector<Labeling> units() const;

  TableVector& operator+=(const TableVector& other);
  TableVector& operator-=(const TableVector& other);
  TableVector operator-() const;
  friend TableVector operator+(TableVector a, const TableVector& b) { return a += b; }
  friend TableVector operator-(TableVector a, const TableVector& b) { return a -= b; }
  bool operator==(const TableVector&) const = default;
  auto operator<=>(const TableVector& other) const {
    if (auto c = ground_ <=> other.ground_; c != 0) return c;
    return entries_ <=> other.entries_;
  }

 private:
  VertexMask ground_ = 0;
  Entries entries_;
};

TableVector add(const TableVector& a, const TableVector& b);
TableVector sub(const TableVector& a, const TableVector& b);
Count l1_norm(const TableVector& z);

/// Projection onto the labelings of Y. Projecting onto the empty set yields
/// a vector over the empty ground set whose single entry is the entry sum.
TableVector project(const TableVector& z, VertexMask y);

/// 2x2 table of an edge (a, b), cell index 2 * a(a) + a(b).
using EdgeTable = std::array<Count, 4>;

/// Image of a table under the map to its 2-way edge marginals.
struct MarginalSet {
  std::vector<Edge> edges;
  std::vector<EdgeTable> tables;
  Count total = 0;

  /// For non-negative inputs every edge table is non-negative and sums to
  /// the common total.
  bool is_consistent() const;
  bool is_zero() const;
  bool operator==(const MarginalSet&) const = default;
};

MarginalSet graph_marginals(const TableVector& z, const Subgraph& g);
MarginalSet graph_marginals(const TableVector& z, const Graph& g);

/// Kernel membership of the marginal map.
bool is_move(const TableVector& u, const Subgraph& g);

/// Multiplies a difference vector by -1 if needed so that its first nonzero
/// entry is positive.
TableVector canonical_sign(TableVector u);

/// All labelings of a ground set in ascending order.
std::vector<Labeling> all_labelings(VertexMask ground);

}  // namespace markov_atlas
