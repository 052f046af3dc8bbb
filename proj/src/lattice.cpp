#include "markov_atlas/lattice.hpp"

#include <cstdlib>

#include "markov_atlas/error.hpp"

namespace markov_atlas {

namespace {

void require_same_ground(const TableVector& a, const TableVector& b) {
  if (a.ground() != b.ground()) {
    throw GroundSetMismatch("vectors live over different ground sets");
  }
}

}  // namespace

TableVector::TableVector(VertexMask ground, Entries entries) : ground_(ground) {
  for (auto [a, c] : entries) add(a, c);
}

TableVector TableVector::unit(VertexMask ground, Labeling a, Count count) {
  TableVector z(ground);
  z.add(a, count);
  return z;
}

TableVector TableVector::from_units(VertexMask ground, const std::vector<Labeling>& units) {
  TableVector z(ground);
  for (Labeling a : units) z.add(a, 1);
  return z;
}

Count TableVector::at(Labeling a) const {
  auto it = entries_.find(a);
  return it == entries_.end() ? 0 : it->second;
}

void TableVector::add(Labeling a, Count delta) {
  if ((a & ~ground_) != 0) {
    throw GroundSetMismatch("labeling sets vertices outside the ground set");
  }
  if (delta == 0) return;
  auto [it, inserted] = entries_.try_emplace(a, delta);
  if (!inserted) {
    it->second += delta;
    if (it->second == 0) entries_.erase(it);
  }
}

Count TableVector::l1_norm() const {
  Count s = 0;
  for (auto [a, c] : entries_) s += std::llabs(c);
  return s;
}

Count TableVector::total() const {
  Count s = 0;
  for (auto [a, c] : entries_) s += c;
  return s;
}

bool TableVector::is_nonnegative() const {
  for (auto [a, c] : entries_) {
    if (c < 0) return false;
  }
  return true;
}

std::vector<Labeling> TableVector::units() const {
  if (!is_nonnegative()) throw PreconditionViolated("units() needs a non-negative vector");
  std::vector<Labeling> out;
  for (auto [a, c] : entries_) out.insert(out.end(), static_cast<std::size_t>(c), a);
  return out;
}

TableVector& TableVector::operator+=(const TableVector& other) {
  require_same_ground(*this, other);
  for (auto [a, c] : other.entries_) add(a, c);
  return *this;
}

TableVector& TableVector::operator-=(const TableVector& other) {
  require_same_ground(*this, other);
  for (auto [a, c] : other.entries_) add(a, -c);
  return *this;
}

TableVector TableVector::operator-() const {
  TableVector out(ground_);
  for (auto [a, c] : entries_) out.entries_.emplace(a, -c);
  return out;
}

TableVector add(const TableVector& a, const TableVector& b) { return a + b; }
TableVector sub(const TableVector& a, const TableVector& b) { return a - b; }
Count l1_norm(const TableVector& z) { return z.l1_norm(); }

TableVector project(const TableVector& z, VertexMask y) {
  if ((y & ~z.ground()) != 0) {
    throw GroundSetMismatch("projection target is not a subset of the ground set");
  }
  TableVector out(y);
  for (auto [a, c] : z.entries()) out.add(a & y, c);
  return out;
}

bool MarginalSet::is_consistent() const {
  for (const auto& t : tables) {
    Count s = 0;
    for (Count c : t) {
      if (c < 0) return false;
      s += c;
    }
    if (s != total) return false;
  }
  return total >= 0;
}

bool MarginalSet::is_zero() const {
  for (const auto& t : tables) {
    for (Count c : t) {
      if (c != 0) return false;
    }
  }
  return total == 0;
}

MarginalSet graph_marginals(const TableVector& z, const Subgraph& g) {
  if (z.ground() != g.vertices) {
    throw GroundSetMismatch("table ground set differs from the graph's vertex set");
  }
  MarginalSet m;
  m.edges = g.edges;
  m.tables.assign(g.edges.size(), EdgeTable{});
  for (auto [a, c] : z.entries()) {
    m.total += c;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const Edge& e = g.edges[i];
      const int cell = 2 * static_cast<int>((a >> e.a) & 1) + static_cast<int>((a >> e.b) & 1);
      m.tables[i][cell] += c;
    }
  }
  return m;
}

MarginalSet graph_marginals(const TableVector& z, const Graph& g) {
  return graph_marginals(z, g.as_subgraph());
}

bool is_move(const TableVector& u, const Subgraph& g) { return graph_marginals(u, g).is_zero(); }

TableVector canonical_sign(TableVector u) {
  if (!u.empty() && u.entries().begin()->second < 0) return -u;
  return u;
}

std::vector<Labeling> all_labelings(VertexMask ground) {
  std::vector<Labeling> out;
  out.reserve(std::size_t{1} << popcount(ground));
  Labeling sub = 0;
  do {
    out.push_back(sub);
    sub = (sub - ground) & ground;
  } while (sub != 0);
  return out;
}

}  // namespace markov_atlas
