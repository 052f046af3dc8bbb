#include "markov_atlas/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "markov_atlas/error.hpp"

namespace markov_atlas {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out <= 0) {
    throw ParseError("limits: bad value for '" + std::string(key) + "': '" + std::string(value) +
                     "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Limits Limits::parse(std::string_view spec) {
  Limits limits;
  while (!spec.empty()) {
    auto comma = spec.find(',');
    auto item = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("limits: expected key=value, got '" + std::string(item) + "'");
    }
    auto key = trim(item.substr(0, eq));
    auto value = trim(item.substr(eq + 1));
    if (key == "vertices") {
      limits.max_vertices = parse_number<int>(key, value);
    } else if (key == "total") {
      limits.max_total = parse_number<int>(key, value);
    } else if (key == "fiber") {
      limits.max_fiber_size = parse_number<std::size_t>(key, value);
    } else if (key == "tables") {
      limits.max_tables = parse_number<std::size_t>(key, value);
    } else if (key == "threads") {
      limits.threads = parse_number<int>(key, value);
    } else {
      throw ParseError("limits: unknown key '" + std::string(key) + "'");
    }
  }
  return limits;
}

Limits Limits::from_env() {
  const char* env = std::getenv("MARKOV_ATLAS_LIMITS");
  if (env == nullptr) return {};
  return parse(env);
}

std::string Limits::to_string() const {
  std::ostringstream out;
  out << "vertices=" << max_vertices << ",total=" << max_total << ",fiber=" << max_fiber_size
      << ",tables=" << max_tables << ",threads=" << threads;
  return out.str();
}

}  // namespace markov_atlas
