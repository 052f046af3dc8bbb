#pragma once

#include <optional>
#include <string>

#include "markov_atlas/fiber.hpp"
#include "markov_atlas/graph.hpp"
#include "markov_atlas/limits.hpp"
#include "markov_atlas/triangulation.hpp"

namespace markov_atlas {

enum class WidthClass { Exact2, Exact4, AtLeast6 };

const char* to_string(WidthClass c);

struct WidthReport {
  WidthClass width_class = WidthClass::Exact2;
  /// 2 or 4 when exact, 6 as a lower bound otherwise.
  int basis_degree = 2;
  std::string reason;
  std::optional<K4Minor> k4_minor;
  /// For complete graphs K_n with n >= 4: the known bound 2n - 2.
  std::optional<int> complete_graph_known_bound;
  std::optional<WidthSearch> evidence;
};

/// Forest -> exact 2; K4-minor-free non-forest -> exact 4; otherwise >= 6
/// with the K4 minor found. Optional bounded fiber search as evidence.
WidthReport classify_width(const Graph& g, std::optional<int> evidence_max_total = std::nullopt,
                           const Limits& limits = {});

struct KnBoundReport {
  int n = 0;
  int bound = 0;
  std::string source;  // "double-wheel" or "triangulation"
  LowerBoundCertificate certificate;
};

/// Best certified lower bound on the width of K_n: the double wheel on n
/// vertices (n even, n >= 6) and optionally a supplied triangulation on at
/// most n vertices. Throws when no certificate applies.
KnBoundReport kn_lower_bound_report(int n, const Triangulation* supplied = nullptr,
                                    bool verify_fiber = false, const Limits& limits = {});

}  // namespace markov_atlas
