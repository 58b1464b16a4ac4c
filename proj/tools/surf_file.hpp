#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surfdist/parse.hpp"
#include "surfdist/projective.hpp"

namespace surfdist::cli {

/// Contents of a `.surf` file: sections [surface], [params], [precanonical]
/// and [run] holding `key = value` lines; `#` starts a comment.
struct SurfaceSpec {
  enum class Mode { concrete, symbolic };
  Mode mode = Mode::concrete;
  std::string name;
  /// b, c, mu, nu texts; missing entries are 0 in concrete mode.
  std::map<std::string, std::string> coefficients;
  /// Function declarations such as `f` (of x and y), `g(x)` or `h(y)`.
  std::vector<std::string> functions;
  std::vector<std::string> parameters;
  /// alpha, delta, theta texts.
  std::optional<std::map<std::string, std::string>> precanonical;
  std::optional<std::vector<std::string>> commands;
  std::optional<std::string> s0;
};

/// Throws ParseError with a line number on malformed input.
SurfaceSpec parse_surface_spec(std::string_view text);
SurfaceSpec load_surface_spec(const std::string& path);

struct Surface {
  SurfaceSpec spec;
  Scope scope;
  CanonicalSystem system;
  std::optional<PreCanonicalSystem> precanonical;
};

/// Parses every expression; a [precanonical] block is canonicalized.
/// Throws ParseError on bad expressions or clashing names, DomainError if
/// canonicalization fails.
Surface build_surface(const SurfaceSpec& spec);

/// A catalog entry as a Surface (name resolved with find_catalog_entry).
std::optional<Surface> catalog_surface(std::string_view name);

}  // namespace surfdist::cli
