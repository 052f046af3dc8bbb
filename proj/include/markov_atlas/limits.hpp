#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace markov_atlas {

/// Resource caps for the exhaustive routines. Exceeding any cap raises
/// ResourceLimitExceeded; results are never silently truncated.
struct Limits {
  int max_vertices = 16;
  int max_total = 8;
  std::size_t max_fiber_size = 1'000'000;
  // Number of tables enumerated when grouping all tables of one total.
  std::size_t max_tables = 20'000'000;
  // Worker threads for independent per-fiber work in width searches.
  int threads = 1;

  /// Parses "vertices=16,total=8,fiber=1000000,tables=20000000,threads=4".
  /// Unknown keys and malformed values raise ParseError.
  static Limits parse(std::string_view spec);

  /// Defaults overridden by the MARKOV_ATLAS_LIMITS environment variable.
  static Limits from_env();

  std::string to_string() const;
};

}  // namespace markov_atlas
